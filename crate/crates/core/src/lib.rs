//! Core library for training a small bidirectional-LSTM + CTC line-OCR model
//! on synthetic rendered text and probing the character-context statistics it
//! picks up along the way.
//!
//! The crate is organised around the pipeline stages:
//!
//! - [`textcorpus`]: sentence ingestion, character n-gram inventories and the
//!   Seen / Unseen / Purely-Unseen test-set taxonomy, plus shuffled and
//!   frequency-regulated corpus variants.
//! - [`glyphrender`]: deterministic bitmap fonts, text-line rasterisation,
//!   height-30 normalisation and 2-pixel frame slicing.
//! - [`tensornet`]: the dense numeric core — fully-connected and bidirectional
//!   LSTM layers with hand-derived backward passes, an adaptive-moment
//!   optimizer, checkpointing, and the training loop.
//! - [`ctc`]: the CTC loss (log-domain forward–backward), its gradient,
//!   greedy decoding, and an exhaustive-alignment oracle used for testing.
//! - [`metrics`]: pooled character/word error rates with per-character error
//!   attribution.
//! - [`probelab`]: the probing experiments (shuffled characters, n-gram
//!   suites, per-character matrices, frequency regulation) and their reports.
//! - [`dataset`]: rendered-dataset manifests and PGM image storage.

pub mod alphabet;
pub mod ctc;
pub mod dataset;
mod error;
pub mod glyphrender;
pub mod metrics;
pub mod probelab;
pub mod tensornet;
pub mod textcorpus;

pub use alphabet::Alphabet;
pub use error::{Error, Result};

/// 64-bit FNV-1a, used to fold strings into RNG seeds deterministically.
pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Mix a base seed with a stream index into a fresh RNG seed.
pub(crate) fn mix_seed(seed: u64, stream: u64) -> u64 {
    // splitmix64 finalizer over the xor of the parts
    let mut z = seed ^ stream.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
