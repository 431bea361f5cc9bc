//! Edit-distance evaluation: pooled CER/WER and per-character error
//! attribution with confusion counts.

use crate::{Error, Result};
use std::collections::BTreeMap;
use std::path::Path;

/// Minimal number of single-element insertions, deletions and substitutions
/// (all cost 1) transforming `a` into `b`.
pub fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut curr = vec![0usize; b.len() + 1];
    for i in 1..=a.len() {
        curr[0] = i;
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            curr[j] = (prev[j] + 1).min(curr[j - 1] + 1).min(prev[j - 1] + cost);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

pub fn edit_distance_str(a: &str, b: &str) -> usize {
    let av: Vec<char> = a.chars().collect();
    let bv: Vec<char> = b.chars().collect();
    edit_distance(&av, &bv)
}

/// Per-reference-character error tally.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CharErrors {
    pub errors: u64,
    pub occurrences: u64,
}

impl CharErrors {
    pub fn rate(&self) -> Option<f64> {
        (self.occurrences > 0).then(|| self.errors as f64 / self.occurrences as f64)
    }
}

/// Pooled evaluation over a set of (reference, hypothesis) pairs.
///
/// CER and WER are micro-averaged: total edit distance over total reference
/// length, not a mean of per-line rates. Substitutions and deletions are
/// attributed to the reference character; insertions are tallied separately
/// so the attribution still sums to the total edit distance.
#[derive(Debug, Clone, Default)]
pub struct EvalResult {
    pub char_edits: u64,
    pub word_edits: u64,
    pub total_ref_chars: u64,
    pub total_ref_words: u64,
    pub per_char: BTreeMap<char, CharErrors>,
    /// (reference char, hypothesis char) substitution counts.
    pub confusions: BTreeMap<(char, char), u64>,
    /// Inserted hypothesis characters, not tied to any reference character.
    pub insertions: BTreeMap<char, u64>,
}

impl EvalResult {
    pub fn cer(&self) -> f64 {
        self.char_edits as f64 / self.total_ref_chars as f64
    }

    pub fn wer(&self) -> f64 {
        self.word_edits as f64 / self.total_ref_words as f64
    }

    pub fn total_insertions(&self) -> u64 {
        self.insertions.values().sum()
    }

    pub fn merge(&mut self, other: &EvalResult) {
        self.char_edits += other.char_edits;
        self.word_edits += other.word_edits;
        self.total_ref_chars += other.total_ref_chars;
        self.total_ref_words += other.total_ref_words;
        for (c, e) in &other.per_char {
            let entry = self.per_char.entry(*c).or_default();
            entry.errors += e.errors;
            entry.occurrences += e.occurrences;
        }
        for (k, v) in &other.confusions {
            *self.confusions.entry(*k).or_insert(0) += v;
        }
        for (k, v) in &other.insertions {
            *self.insertions.entry(*k).or_insert(0) += v;
        }
    }

    /// CSV serialization: a summary row, then one row per reference
    /// character, then substitution confusions.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        out.push_str("kind,key,errors,occurrences,rate\n");
        out.push_str(&format!(
            "summary,cer,{},{},{:.6}\n",
            self.char_edits,
            self.total_ref_chars,
            self.cer()
        ));
        out.push_str(&format!(
            "summary,wer,{},{},{:.6}\n",
            self.word_edits,
            self.total_ref_words,
            self.wer()
        ));
        for (c, e) in &self.per_char {
            let rate = e.rate().unwrap_or(0.0);
            out.push_str(&format!(
                "char,{},{},{},{:.6}\n",
                csv_char(*c),
                e.errors,
                e.occurrences,
                rate
            ));
        }
        for ((r, h), n) in &self.confusions {
            out.push_str(&format!("confusion,{}>{},{},,\n", csv_char(*r), csv_char(*h), n));
        }
        for (c, n) in &self.insertions {
            out.push_str(&format!("insertion,{},{},,\n", csv_char(*c), n));
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }
}

fn csv_char(c: char) -> String {
    if c == ' ' {
        "<sp>".to_string()
    } else {
        c.to_string()
    }
}

/// Pooled character error rate over (reference, hypothesis) pairs.
pub fn cer(pairs: &[(String, String)]) -> Result<f64> {
    let total: usize = pairs.iter().map(|(r, _)| r.chars().count()).sum();
    if total == 0 {
        return Err(Error::InvalidInput("empty references".into()));
    }
    let edits: usize = pairs
        .iter()
        .map(|(r, h)| edit_distance_str(r, h))
        .sum();
    Ok(edits as f64 / total as f64)
}

fn words(s: &str) -> Vec<&str> {
    s.split(' ').filter(|w| !w.is_empty()).collect()
}

/// Pooled word error rate; tokens are split on spaces.
pub fn wer(pairs: &[(String, String)]) -> Result<f64> {
    let total: usize = pairs.iter().map(|(r, _)| words(r).len()).sum();
    if total == 0 {
        return Err(Error::InvalidInput("empty references".into()));
    }
    let edits: usize = pairs
        .iter()
        .map(|(r, h)| edit_distance(&words(r), &words(h)))
        .sum();
    Ok(edits as f64 / total as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Match,
    Substitute,
    Delete,
    Insert,
}

/// Evaluate pairs with full attribution: pooled CER/WER plus per-character
/// errors and substitution confusions from the alignment backtrace.
pub fn evaluate(pairs: &[(String, String)]) -> EvalResult {
    let mut result = EvalResult::default();
    for (r, h) in pairs {
        accumulate_pair(&mut result, r, h);
    }
    result
}

fn accumulate_pair(result: &mut EvalResult, r: &str, h: &str) {
    let rv: Vec<char> = r.chars().collect();
    let hv: Vec<char> = h.chars().collect();
    result.total_ref_chars += rv.len() as u64;
    result.total_ref_words += words(r).len() as u64;
    result.word_edits += edit_distance(&words(r), &words(h)) as u64;
    for c in &rv {
        result.per_char.entry(*c).or_default().occurrences += 1;
    }

    // full DP matrix for the backtrace
    let (n, m) = (rv.len(), hv.len());
    let mut dp = vec![vec![0usize; m + 1]; n + 1];
    for (i, row) in dp.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=m {
        dp[0][j] = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            let cost = usize::from(rv[i - 1] != hv[j - 1]);
            dp[i][j] = (dp[i - 1][j] + 1)
                .min(dp[i][j - 1] + 1)
                .min(dp[i - 1][j - 1] + cost);
        }
    }
    result.char_edits += dp[n][m] as u64;

    // backtrace, preferring match > substitution > deletion > insertion
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let step = if i > 0 && j > 0 && rv[i - 1] == hv[j - 1] && dp[i][j] == dp[i - 1][j - 1] {
            Step::Match
        } else if i > 0 && j > 0 && dp[i][j] == dp[i - 1][j - 1] + 1 {
            Step::Substitute
        } else if i > 0 && dp[i][j] == dp[i - 1][j] + 1 {
            Step::Delete
        } else {
            Step::Insert
        };
        match step {
            Step::Match => {
                i -= 1;
                j -= 1;
            }
            Step::Substitute => {
                result.per_char.entry(rv[i - 1]).or_default().errors += 1;
                *result.confusions.entry((rv[i - 1], hv[j - 1])).or_insert(0) += 1;
                i -= 1;
                j -= 1;
            }
            Step::Delete => {
                result.per_char.entry(rv[i - 1]).or_default().errors += 1;
                i -= 1;
            }
            Step::Insert => {
                *result.insertions.entry(hv[j - 1]).or_insert(0) += 1;
                j -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_deletion() {
        assert_eq!(edit_distance_str("abc", "abc"), 0);
        assert_eq!(edit_distance_str("abc", ""), 3);
        assert_eq!(edit_distance_str("", "ab"), 2);
    }

    #[test]
    fn kitten_sitting() {
        assert_eq!(edit_distance_str("kitten", "sitting"), 3);
    }

    #[test]
    fn cer_pools_rather_than_averages() {
        let pairs = vec![
            ("ab".to_string(), "ac".to_string()),
            ("cd".to_string(), "cd".to_string()),
        ];
        assert!((cer(&pairs).unwrap() - 0.25).abs() < 1e-12);
        assert!((cer(&pairs[..1].to_vec()).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cer_empty_refs_error() {
        assert!(cer(&[("".to_string(), "x".to_string())]).is_err());
    }

    #[test]
    fn wer_token_distance() {
        let one = |r: &str, h: &str| wer(&[(r.to_string(), h.to_string())]).unwrap();
        assert_eq!(one("a b", "a b"), 0.0);
        assert!((one("a b", "a c") - 0.5).abs() < 1e-12);
        assert!((one("a b c", "b") - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn attribution_simple() {
        let res = evaluate(&[("aa".to_string(), "ab".to_string())]);
        let a = res.per_char[&'a'];
        assert_eq!((a.errors, a.occurrences), (1, 2));
        assert_eq!(a.rate(), Some(0.5));
        assert_eq!(res.confusions[&('a', 'b')], 1);
    }

    #[test]
    fn attribution_all_zero_when_equal() {
        let res = evaluate(&[("ab".to_string(), "ab".to_string())]);
        assert_eq!(res.char_edits, 0);
        assert!(res.per_char.values().all(|e| e.errors == 0));
        assert!(res.confusions.is_empty());
    }

    #[test]
    fn attribution_conserves_edit_distance() {
        let pairs = vec![
            ("abcdef".to_string(), "abdefx".to_string()),
            ("hello".to_string(), "hxlloo".to_string()),
            ("xyz".to_string(), "".to_string()),
            ("".to_string(), "ab".to_string()),
        ];
        for (r, h) in &pairs {
            let res = evaluate(&[(r.clone(), h.clone())]);
            let attributed: u64 = res.per_char.values().map(|e| e.errors).sum::<u64>()
                + res.total_insertions();
            assert_eq!(attributed, res.char_edits, "pair ({r:?}, {h:?})");
        }
    }

    #[test]
    fn merge_matches_joint_evaluation() {
        let p1 = ("abc".to_string(), "abd".to_string());
        let p2 = ("de f".to_string(), "dx f".to_string());
        let mut merged = evaluate(&[p1.clone()]);
        merged.merge(&evaluate(&[p2.clone()]));
        let joint = evaluate(&[p1, p2]);
        assert_eq!(merged.char_edits, joint.char_edits);
        assert_eq!(merged.word_edits, joint.word_edits);
        assert_eq!(merged.per_char, joint.per_char);
        assert_eq!(merged.confusions, joint.confusions);
    }

    #[test]
    fn cer_can_exceed_one() {
        let res = cer(&[("a".to_string(), "abcd".to_string())]).unwrap();
        assert!(res > 1.0);
    }
}
