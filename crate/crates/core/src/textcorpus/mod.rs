//! Text corpus ingestion and n-gram test-set construction.
//!
//! Raw book-like text goes in; unique, alphabet-clean sentence sets come out,
//! together with the character n-gram inventory over those sentences and the
//! Seen / Unseen / Purely-Unseen sampling machinery built on top of it.

mod mutate;
mod ngram;

pub use mutate::{regulate_character_frequency, shuffle_sentence};
pub use ngram::{
    build_ngram_inventory, classify_ngram, sample_ngram_set, scan_frequency, NGramClass,
    NGramInventory, NGramTestSet,
};

use crate::{Error, Result};
use std::collections::HashSet;
use std::path::Path;

/// Which split a sentence set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetRole {
    Train,
    Validation,
    Test,
}

impl SetRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            SetRole::Train => "train",
            SetRole::Validation => "validation",
            SetRole::Test => "test",
        }
    }
}

/// What to do with characters outside `a..z` + space.
///
/// Whitespace always maps to a single space; this policy governs everything
/// else (digits, punctuation that is not a sentence terminator, accented
/// letters, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OovPolicy {
    /// Remove the character entirely ("don't" becomes "dont").
    #[default]
    Drop,
    /// Replace the character with a space ("don't" becomes "don t").
    ToSpace,
}

/// An ordered set of unique, alphabet-clean sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSet {
    pub sentences: Vec<String>,
    pub role: SetRole,
    pub source_name: String,
}

impl SentenceSet {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// One sentence per line, UTF-8.
    pub fn write_to(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for s in &self.sentences {
            out.push_str(s);
            out.push('\n');
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    /// Reload a set previously written with [`SentenceSet::write_to`].
    pub fn read_from(path: &Path, role: SetRole) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let sentences: Vec<String> = text.lines().map(str::to_owned).collect();
        if sentences.is_empty() {
            return Err(Error::InvalidInput(format!(
                "no sentences in {}",
                path.display()
            )));
        }
        Ok(SentenceSet {
            sentences,
            role,
            source_name: path.display().to_string(),
        })
    }
}

/// Sentence terminators used to split raw text.
const TERMINATORS: [char; 4] = ['.', '!', '?', ';'];

/// Split raw text into unique, lowercased, alphabet-filtered sentences.
///
/// The text is lowercased, split on `. ! ? ;`, and each fragment is reduced
/// to `a..z` plus single spaces: whitespace collapses to one space and other
/// out-of-alphabet characters follow `policy`. Duplicates are removed keeping
/// the first occurrence, so the result is deterministic for a given input.
pub fn load_sentences(
    raw_text: &str,
    policy: OovPolicy,
    role: SetRole,
    source_name: &str,
) -> Result<SentenceSet> {
    if raw_text.is_empty() {
        return Err(Error::InvalidInput("empty text".into()));
    }
    let lower = raw_text.to_lowercase();
    let mut sentences = Vec::new();
    let mut seen = HashSet::new();
    for fragment in lower.split(TERMINATORS) {
        let cleaned = clean_fragment(fragment, policy);
        if cleaned.is_empty() {
            continue;
        }
        if seen.insert(cleaned.clone()) {
            sentences.push(cleaned);
        }
    }
    if sentences.is_empty() {
        return Err(Error::InvalidInput("no usable sentences".into()));
    }
    Ok(SentenceSet {
        sentences,
        role,
        source_name: source_name.to_owned(),
    })
}

fn clean_fragment(fragment: &str, policy: OovPolicy) -> String {
    let mut out = String::with_capacity(fragment.len());
    let mut pending_space = false;
    for c in fragment.chars() {
        let mapped = if c.is_ascii_lowercase() {
            Some(c)
        } else if c.is_whitespace() {
            Some(' ')
        } else {
            match policy {
                OovPolicy::Drop => None,
                OovPolicy::ToSpace => Some(' '),
            }
        };
        match mapped {
            Some(' ') => pending_space = true,
            Some(ch) => {
                if pending_space && !out.is_empty() {
                    out.push(' ');
                }
                pending_space = false;
                out.push(ch);
            }
            None => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_lowercase() {
        let set = load_sentences("The cat. The cat. A dog!", OovPolicy::Drop, SetRole::Train, "t")
            .unwrap();
        assert_eq!(set.sentences, vec!["the cat", "a dog"]);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(load_sentences("", OovPolicy::Drop, SetRole::Train, "t").is_err());
    }

    #[test]
    fn all_filtered_is_an_error() {
        assert!(load_sentences("123 456. 789!", OovPolicy::Drop, SetRole::Train, "t").is_err());
    }

    #[test]
    fn duplicate_in_paragraph() {
        let text = "It rained all day. The road was wet; it rained all day.";
        let set = load_sentences(text, OovPolicy::Drop, SetRole::Train, "t").unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.sentences[0], "it rained all day");
        assert_eq!(set.sentences[1], "the road was wet");
    }

    #[test]
    fn whitespace_collapses_and_oov_policy_applies() {
        let text = "don't   stop\nnow.";
        let dropped = load_sentences(text, OovPolicy::Drop, SetRole::Train, "t").unwrap();
        assert_eq!(dropped.sentences, vec!["dont stop now"]);
        let spaced = load_sentences(text, OovPolicy::ToSpace, SetRole::Train, "t").unwrap();
        assert_eq!(spaced.sentences, vec!["don t stop now"]);
    }

    #[test]
    fn leading_trailing_spaces_trimmed() {
        let set = load_sentences("  a cat .  a dog !", OovPolicy::Drop, SetRole::Train, "t")
            .unwrap();
        assert_eq!(set.sentences, vec!["a cat", "a dog"]);
    }

    #[test]
    fn roundtrip_file(){
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("set.txt");
        let set = load_sentences("a cat. a dog.", OovPolicy::Drop, SetRole::Test, "t").unwrap();
        set.write_to(&path).unwrap();
        let back = SentenceSet::read_from(&path, SetRole::Test).unwrap();
        assert_eq!(back.sentences, set.sentences);
    }
}
