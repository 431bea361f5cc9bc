//! Controlled corpus mutations: character shuffling and per-character
//! frequency regulation.

use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform random permutation of all characters in the sentence, spaces
/// included. Deterministic per (sentence, seed): the RNG is keyed on both,
/// so corresponding sentences shuffle the same way across runs.
pub fn shuffle_sentence(sentence: &str, seed: u64) -> String {
    let mut chars: Vec<char> = sentence.chars().collect();
    let mut rng =
        ChaCha8Rng::seed_from_u64(crate::mix_seed(seed, crate::fnv1a64(sentence.as_bytes())));
    for i in (1..chars.len()).rev() {
        let j = rng.random_range(0..=i);
        chars.swap(i, j);
    }
    chars.into_iter().collect()
}

/// Select a subset of equal-length grams whose pooled frequency of `ch` lies
/// within `tolerance` of `target_fraction`, discarding whole grams.
///
/// Strategy: seeded shuffle for tie order, then repeatedly drop the gram
/// richest (or poorest) in `ch` until the pooled fraction enters the band,
/// preferring any single drop that lands inside it. Dropping the extreme
/// gram moves the fraction fastest, so this retains close to the maximum
/// number of grams.
pub fn regulate_character_frequency(
    grams: &[String],
    ch: char,
    target_fraction: f64,
    tolerance: f64,
    seed: u64,
) -> Result<Vec<String>> {
    if grams.is_empty() {
        return Err(Error::InvalidInput("no grams to regulate".into()));
    }
    if !(0.0..1.0).contains(&target_fraction) {
        return Err(Error::InvalidInput(format!(
            "target fraction must be in [0,1), got {target_fraction}"
        )));
    }
    let len = grams[0].chars().count();
    if grams.iter().any(|g| g.chars().count() != len) {
        return Err(Error::InvalidInput("grams must all have the same length".into()));
    }

    // (occurrences of ch, gram), in seeded-shuffle order so ties break
    // reproducibly but without positional bias.
    let mut pool: Vec<(usize, &String)> = grams
        .iter()
        .map(|g| (g.chars().filter(|&c| c == ch).count(), g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(crate::mix_seed(seed, 0x7265_6775));
    for i in (1..pool.len()).rev() {
        let j = rng.random_range(0..=i);
        pool.swap(i, j);
    }

    let mut total: usize = pool.iter().map(|(k, _)| k).sum();
    let lo = target_fraction - tolerance;
    let hi = target_fraction + tolerance;
    let fraction = |total: usize, m: usize| total as f64 / (len * m) as f64;

    while !pool.is_empty() {
        let m = pool.len();
        let f = fraction(total, m);
        if f >= lo && f <= hi {
            let mut kept: Vec<String> = pool.iter().map(|(_, g)| (*g).clone()).collect();
            kept.sort_unstable();
            return Ok(kept);
        }
        if m == 1 {
            break;
        }
        // a drop that lands inside the band beats the extreme drop
        let lands_inside = |k: usize| {
            let f2 = fraction(total - k, m - 1);
            f2 >= lo && f2 <= hi
        };
        let idx = if let Some(i) = (0..m).find(|&i| lands_inside(pool[i].0)) {
            i
        } else if f > hi {
            (0..m).max_by_key(|&i| pool[i].0).unwrap()
        } else {
            (0..m).min_by_key(|&i| pool[i].0).unwrap()
        };
        total -= pool[idx].0;
        pool.swap_remove(idx);
    }
    Err(Error::InvalidInput(format!(
        "cannot reach {ch:?} fraction {target_fraction} +/- {tolerance} by discarding grams"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grams(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn char_fraction(grams: &[String], ch: char) -> f64 {
        let total: usize = grams.iter().map(|g| g.chars().count()).sum();
        let hits: usize = grams
            .iter()
            .map(|g| g.chars().filter(|&c| c == ch).count())
            .sum();
        hits as f64 / total as f64
    }

    #[test]
    fn singleton_shuffle_is_identity() {
        assert_eq!(shuffle_sentence("a", 7), "a");
    }

    #[test]
    fn shuffle_preserves_multiset() {
        let s = "the quick brown fox";
        let out = shuffle_sentence(s, 42);
        let mut a: Vec<char> = s.chars().collect();
        let mut b: Vec<char> = out.chars().collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn shuffle_deterministic_per_seed() {
        let s = "a cat sat on a mat";
        assert_eq!(shuffle_sentence(s, 1), shuffle_sentence(s, 1));
        // with 18 characters a collision between two seeds is implausible
        assert_ne!(shuffle_sentence(s, 1), shuffle_sentence(s, 2));
    }

    #[test]
    fn already_satisfied_set_is_unchanged() {
        // 3 of 50 characters are 'e': fraction 0.06 exactly
        let g = grams(&["easel", "eight", "droll", "chant", "valor", "night",
                        "plumb", "birch", "stump", "crown"]);
        assert!((char_fraction(&g, 'e') - 0.06).abs() < 1e-9);
        let out = regulate_character_frequency(&g, 'e', 0.06, 0.005, 9).unwrap();
        let mut sorted = g.clone();
        sorted.sort_unstable();
        assert_eq!(out, sorted);
    }

    #[test]
    fn forced_removal() {
        let out = regulate_character_frequency(&grams(&["ee", "ab"]), 'e', 0.0, 0.005, 1).unwrap();
        assert_eq!(out, vec!["ab".to_string()]);
    }

    #[test]
    fn unsatisfiable_target_errors() {
        let err = regulate_character_frequency(&grams(&["ee", "ea"]), 'e', 0.0, 0.005, 1)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn regulated_fraction_within_tolerance() {
        // alternating "better" (2 e's) and "brutal" (0): 1/6 'e' overall,
        // pulled down to 10% +/- 2%
        let g: Vec<String> = (0..50)
            .map(|i| if i % 2 == 0 { "better".to_string() } else { "brutal".to_string() })
            .collect();
        let out = regulate_character_frequency(&g, 'e', 0.10, 0.02, 3).unwrap();
        let f = char_fraction(&out, 'e');
        assert!((f - 0.10).abs() <= 0.02 + 1e-12, "fraction {f}");
        assert!(out.len() >= 25, "kept {} grams", out.len());
    }

    #[test]
    fn mixed_lengths_rejected() {
        assert!(regulate_character_frequency(&grams(&["ab", "abc"]), 'a', 0.1, 0.05, 1).is_err());
    }
}
