//! Character n-gram inventory and the Seen / Unseen / Purely-Unseen taxonomy.

use super::SentenceSet;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet};
use std::path::Path;

/// Frequency threshold above which an n-gram counts as Seen.
pub const SEEN_THRESHOLD: u64 = 10;

/// Minimum usable test-set size; sampling below this is an error.
pub const MIN_SAMPLES: usize = 50;

/// Classification of an n-gram against a training inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NGramClass {
    /// Frequency strictly above 10.
    Seen,
    /// Frequency exactly 0 (but some sub-gram occurs in training).
    Unseen,
    /// Frequency 0, and every contiguous sub-gram of length >= 2 also has
    /// frequency 0.
    PurelyUnseen,
    /// Frequency in 1..=10; excluded from all test sets.
    Ignored,
}

impl NGramClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            NGramClass::Seen => "seen",
            NGramClass::Unseen => "unseen",
            NGramClass::PurelyUnseen => "purely_unseen",
            NGramClass::Ignored => "ignored",
        }
    }

    /// Whether an n-gram classified as `self` belongs in a test set of the
    /// requested class. Purely-Unseen grams are a subset of Unseen, so they
    /// qualify for Unseen sets as well.
    pub fn satisfies(&self, requested: NGramClass) -> bool {
        *self == requested
            || (requested == NGramClass::Unseen && *self == NGramClass::PurelyUnseen)
    }
}

impl std::str::FromStr for NGramClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seen" => Ok(NGramClass::Seen),
            "unseen" => Ok(NGramClass::Unseen),
            "purely_unseen" | "purely-unseen" => Ok(NGramClass::PurelyUnseen),
            "ignored" => Ok(NGramClass::Ignored),
            other => Err(Error::InvalidInput(format!("unknown n-gram class {other:?}"))),
        }
    }
}

/// Occurrence counts of every character n-gram (1..=max_n, spaces excluded)
/// in a sentence set. Immutable once built.
#[derive(Debug, Clone)]
pub struct NGramInventory {
    max_n: usize,
    counts: HashMap<String, u64>,
}

impl NGramInventory {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn count(&self, gram: &str) -> u64 {
        self.counts.get(gram).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// All stored grams of the given length, sorted, for deterministic
    /// iteration.
    pub fn grams_of_len(&self, n: usize) -> Vec<&str> {
        let mut v: Vec<&str> = self
            .counts
            .keys()
            .filter(|k| k.chars().count() == n)
            .map(String::as_str)
            .collect();
        v.sort_unstable();
        v
    }

    /// TSV serialization: a `#max_n=N` header line then `gram<TAB>count`
    /// rows in sorted gram order, so the bytes are reproducible.
    pub fn write_to(&self, path: &Path) -> Result<()> {
        let mut keys: Vec<&String> = self.counts.keys().collect();
        keys.sort_unstable();
        let mut out = String::new();
        out.push_str(&format!("#max_n={}\n", self.max_n));
        for k in keys {
            out.push_str(&format!("{}\t{}\n", k, self.counts[k]));
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        let max_n = header
            .strip_prefix("#max_n=")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| Error::Format {
                what: "inventory header",
                path: path.to_owned(),
                msg: format!("expected '#max_n=N', got {header:?}"),
            })?;
        let mut counts = HashMap::new();
        for (i, line) in lines.enumerate() {
            let (gram, count) = line.split_once('\t').ok_or_else(|| Error::Format {
                what: "inventory row",
                path: path.to_owned(),
                msg: format!("line {}: missing tab", i + 2),
            })?;
            let count: u64 = count.parse().map_err(|_| Error::Format {
                what: "inventory row",
                path: path.to_owned(),
                msg: format!("line {}: bad count {count:?}", i + 2),
            })?;
            counts.insert(gram.to_owned(), count);
        }
        Ok(NGramInventory { max_n, counts })
    }
}

/// Count every contiguous character n-gram of length 1..=max_n.
///
/// Sentences are split on spaces into space-free runs and grams are counted
/// within runs only, once per occurrence, aggregated over all sentences.
pub fn build_ngram_inventory(set: &SentenceSet, max_n: usize) -> Result<NGramInventory> {
    if max_n < 2 {
        return Err(Error::InvalidInput(format!("max_n must be >= 2, got {max_n}")));
    }
    let mut counts: HashMap<String, u64> = HashMap::new();
    for sentence in &set.sentences {
        for run in sentence.split(' ').filter(|r| !r.is_empty()) {
            let chars: Vec<char> = run.chars().collect();
            for n in 1..=max_n.min(chars.len()) {
                for window in chars.windows(n) {
                    let gram: String = window.iter().collect();
                    *counts.entry(gram).or_insert(0) += 1;
                }
            }
        }
    }
    Ok(NGramInventory { max_n, counts })
}

/// Classify a gram by its training frequency.
///
/// Seen: count > 10. Ignored: count in 1..=10. Count 0 splits into
/// PurelyUnseen (every contiguous sub-gram of length 2..n also has count 0)
/// and plain Unseen otherwise.
pub fn classify_ngram(inv: &NGramInventory, gram: &str) -> Result<NGramClass> {
    let chars: Vec<char> = gram.chars().collect();
    if chars.len() < 2 || chars.len() > inv.max_n() {
        return Err(Error::InvalidInput(format!(
            "gram length must be 2..={}, got {:?}",
            inv.max_n(),
            gram
        )));
    }
    if let Some(bad) = chars.iter().find(|c| !c.is_ascii_lowercase()) {
        return Err(Error::UnsupportedChar(*bad));
    }
    let count = inv.count(gram);
    if count > SEEN_THRESHOLD {
        return Ok(NGramClass::Seen);
    }
    if count > 0 {
        return Ok(NGramClass::Ignored);
    }
    let purely = (2..chars.len()).all(|sub_n| {
        chars
            .windows(sub_n)
            .all(|w| inv.count(&w.iter().collect::<String>()) == 0)
    });
    Ok(if purely {
        NGramClass::PurelyUnseen
    } else {
        NGramClass::Unseen
    })
}

/// Independent frequency oracle: count occurrences of `gram` by scanning the
/// space-free runs of the raw sentences directly, without any inventory.
pub fn scan_frequency(sentences: &[String], gram: &str) -> u64 {
    let needle: Vec<char> = gram.chars().collect();
    if needle.is_empty() {
        return 0;
    }
    let mut total = 0;
    for sentence in sentences {
        for run in sentence.split(' ').filter(|r| !r.is_empty()) {
            let chars: Vec<char> = run.chars().collect();
            if chars.len() < needle.len() {
                continue;
            }
            total += chars.windows(needle.len()).filter(|w| **w == needle[..]).count() as u64;
        }
    }
    total
}

/// A sampled n-gram test set of one length and class.
#[derive(Debug, Clone)]
pub struct NGramTestSet {
    pub n: usize,
    pub class: NGramClass,
    pub grams: Vec<String>,
    pub cap: usize,
}

impl NGramTestSet {
    pub fn write_to(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for g in &self.grams {
            out.push_str(g);
            out.push('\n');
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }
}

/// Sample a test set of `cap` grams of length `n` and the given class.
///
/// Seen sets sample uniformly without replacement from qualifying inventory
/// keys; Unseen and Purely-Unseen sets rejection-sample uniform random
/// strings, giving up after `cap * 1000` draws. Deterministic for a fixed
/// seed. Fewer than [`MIN_SAMPLES`] qualifying grams is an error.
pub fn sample_ngram_set(
    inv: &NGramInventory,
    n: usize,
    class: NGramClass,
    cap: usize,
    seed: u64,
) -> Result<NGramTestSet> {
    if !(2..=7).contains(&n) || n > inv.max_n() {
        return Err(Error::InvalidInput(format!(
            "n must be in 2..=min(7, max_n={}), got {n}",
            inv.max_n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(crate::mix_seed(seed, n as u64));
    let grams = match class {
        NGramClass::Seen => {
            let mut candidates: Vec<String> = inv
                .grams_of_len(n)
                .into_iter()
                .filter(|g| inv.count(g) > SEEN_THRESHOLD)
                .map(str::to_owned)
                .collect();
            // partial Fisher-Yates: the first `cap` slots become the sample
            let take = cap.min(candidates.len());
            for i in 0..take {
                let j = rng.random_range(i..candidates.len());
                candidates.swap(i, j);
            }
            candidates.truncate(take);
            candidates
        }
        NGramClass::Unseen | NGramClass::PurelyUnseen => {
            let mut accepted = Vec::with_capacity(cap.min(4096));
            let mut dedup: HashSet<String> = HashSet::new();
            let budget = cap.saturating_mul(1000);
            for _ in 0..budget {
                if accepted.len() >= cap {
                    break;
                }
                let gram: String = (0..n)
                    .map(|_| (b'a' + rng.random_range(0..26u8)) as char)
                    .collect();
                if dedup.contains(&gram) {
                    continue;
                }
                if classify_ngram(inv, &gram)?.satisfies(class) {
                    dedup.insert(gram.clone());
                    accepted.push(gram);
                }
            }
            accepted
        }
        NGramClass::Ignored => {
            return Err(Error::InvalidInput(
                "cannot sample a test set of Ignored grams".into(),
            ))
        }
    };
    if grams.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            found: grams.len(),
            min: MIN_SAMPLES,
            context: format!("{} {}-grams", class.as_str(), n),
        });
    }
    Ok(NGramTestSet {
        n,
        class,
        grams,
        cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textcorpus::{load_sentences, OovPolicy, SetRole};

    fn set_of(sentences: &[&str]) -> SentenceSet {
        SentenceSet {
            sentences: sentences.iter().map(|s| s.to_string()).collect(),
            role: SetRole::Train,
            source_name: "test".into(),
        }
    }

    #[test]
    fn counts_split_runs_on_spaces() {
        let inv = build_ngram_inventory(&set_of(&["ab ab"]), 2).unwrap();
        assert_eq!(inv.count("a"), 2);
        assert_eq!(inv.count("b"), 2);
        assert_eq!(inv.count("ab"), 2);
        assert_eq!(inv.count("ba"), 0, "grams must not cross spaces");
    }

    #[test]
    fn counts_all_lengths() {
        let inv = build_ngram_inventory(&set_of(&["abc"]), 3).unwrap();
        for (g, c) in [("a", 1), ("b", 1), ("c", 1), ("ab", 1), ("bc", 1), ("abc", 1)] {
            assert_eq!(inv.count(g), c, "count({g:?})");
        }
    }

    #[test]
    fn classification_thresholds() {
        // "ame" appears 12 times (Seen); "xq" once (Ignored).
        let mut sentences: Vec<&str> = vec!["ame"; 12];
        sentences.push("xq");
        let inv = build_ngram_inventory(&set_of(&sentences), 5).unwrap();
        assert_eq!(classify_ngram(&inv, "ame").unwrap(), NGramClass::Seen);
        assert_eq!(classify_ngram(&inv, "xq").unwrap(), NGramClass::Ignored);
        // "ameoy" never occurs but contains the seen sub-gram "ame".
        assert_eq!(classify_ngram(&inv, "ameoy").unwrap(), NGramClass::Unseen);
        // every sub-gram of "bcgpq" is unseen here
        assert_eq!(
            classify_ngram(&inv, "bcgpq").unwrap(),
            NGramClass::PurelyUnseen
        );
    }

    #[test]
    fn ignored_subgram_blocks_purely_unseen() {
        // "xq" occurs once: an unseen gram containing it is Unseen, not
        // PurelyUnseen, under the strict all-zero sub-gram rule.
        let inv = build_ngram_inventory(&set_of(&["xq"]), 5).unwrap();
        assert_eq!(classify_ngram(&inv, "xqz").unwrap(), NGramClass::Unseen);
    }

    #[test]
    fn unseen_two_grams_are_purely_unseen() {
        let inv = build_ngram_inventory(&set_of(&["ab"]), 3).unwrap();
        // no sub-grams of length >= 2 to check, so unseen == purely unseen
        assert_eq!(classify_ngram(&inv, "zz").unwrap(), NGramClass::PurelyUnseen);
    }

    #[test]
    fn classify_rejects_bad_chars() {
        let inv = build_ngram_inventory(&set_of(&["ab"]), 3).unwrap();
        assert!(classify_ngram(&inv, "a b").is_err());
        assert!(classify_ngram(&inv, "aB").is_err());
        assert!(classify_ngram(&inv, "a").is_err());
    }

    #[test]
    fn monotone_substring_counts() {
        let inv =
            build_ngram_inventory(&set_of(&["the cat sat", "the hat", "then"]), 4).unwrap();
        for gram in ["the", "then", "hat", "cat"] {
            let chars: Vec<char> = gram.chars().collect();
            for n in 1..chars.len() {
                for w in chars.windows(n) {
                    let sub: String = w.iter().collect();
                    assert!(
                        inv.count(&sub) >= inv.count(gram),
                        "count({sub:?}) < count({gram:?})"
                    );
                }
            }
        }
    }

    #[test]
    fn seen_sampling_is_deterministic_and_qualifying() {
        // 13 x 13 letter pairs, each repeated 12 times: 169 seen 2-grams
        let mut sentences = Vec::new();
        for a in "abcdefghijklm".chars() {
            for b in "nopqrstuvwxyz".chars() {
                sentences.push(format!("{a}{b}"));
            }
        }
        let sentences: Vec<String> = sentences
            .iter()
            .flat_map(|w| std::iter::repeat_n(w.clone(), 12))
            .collect();
        let refs: Vec<&str> = sentences.iter().map(String::as_str).collect();
        let inv = build_ngram_inventory(&set_of(&refs), 3).unwrap();
        let a = sample_ngram_set(&inv, 2, NGramClass::Seen, 10_000, 1).unwrap();
        let b = sample_ngram_set(&inv, 2, NGramClass::Seen, 10_000, 1).unwrap();
        assert_eq!(a.grams, b.grams);
        assert!(!a.grams.is_empty());
        for g in &a.grams {
            assert!(inv.count(g) > SEEN_THRESHOLD);
        }
    }

    #[test]
    fn insufficient_samples_is_an_error() {
        let inv = build_ngram_inventory(&set_of(&["ab"]), 6).unwrap();
        let err = sample_ngram_set(&inv, 6, NGramClass::Seen, 10_000, 1).unwrap_err();
        assert!(matches!(err, Error::InsufficientSamples { .. }), "{err}");
    }

    #[test]
    fn scan_frequency_matches_inventory() {
        let s = set_of(&["the cat sat on the mat", "that hat"]);
        let inv = build_ngram_inventory(&s, 4).unwrap();
        for gram in ["th", "at", "hat", "the", "cat", "zz", "tha", "that"] {
            assert_eq!(
                scan_frequency(&s.sentences, gram),
                inv.count(gram),
                "gram {gram:?}"
            );
        }
    }
}
