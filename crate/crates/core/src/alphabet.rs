//! The recognition alphabet and its label-index mapping.
//!
//! The task alphabet is fixed: the 26 lowercase ASCII letters, optionally
//! followed by the space character. Output class indices are letters first
//! (`a` = 0 .. `z` = 25), then space, with the CTC blank always occupying
//! the last class index (`num_classes - 1`).

pub const LETTERS: &str = "abcdefghijklmnopqrstuvwxyz";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    include_space: bool,
}

impl Alphabet {
    /// Letters only; used for n-gram test material where spaces are stripped.
    pub fn letters() -> Self {
        Alphabet {
            include_space: false,
        }
    }

    /// Letters plus space; the full sentence-transcription task.
    pub fn with_space() -> Self {
        Alphabet {
            include_space: true,
        }
    }

    pub fn includes_space(&self) -> bool {
        self.include_space
    }

    /// Number of real (non-blank) labels.
    pub fn num_labels(&self) -> usize {
        if self.include_space {
            27
        } else {
            26
        }
    }

    /// Number of network output classes including the CTC blank.
    pub fn num_classes(&self) -> usize {
        self.num_labels() + 1
    }

    /// Class index of the CTC blank (always the last class).
    pub fn blank(&self) -> usize {
        self.num_labels()
    }

    pub fn contains(&self, c: char) -> bool {
        c.is_ascii_lowercase() || (self.include_space && c == ' ')
    }

    pub fn label_of(&self, c: char) -> Option<usize> {
        if c.is_ascii_lowercase() {
            Some(c as usize - 'a' as usize)
        } else if c == ' ' && self.include_space {
            Some(26)
        } else {
            None
        }
    }

    pub fn char_of(&self, label: usize) -> Option<char> {
        if label < 26 {
            Some((b'a' + label as u8) as char)
        } else if label == 26 && self.include_space {
            Some(' ')
        } else {
            None
        }
    }

    /// Encode a string into label indices, rejecting out-of-alphabet characters.
    pub fn encode(&self, text: &str) -> crate::Result<Vec<usize>> {
        text.chars()
            .map(|c| self.label_of(c).ok_or(crate::Error::UnsupportedChar(c)))
            .collect()
    }

    /// Decode label indices back into a string. Labels outside the alphabet
    /// (including the blank) are rejected.
    pub fn decode(&self, labels: &[usize]) -> crate::Result<String> {
        labels
            .iter()
            .map(|&l| {
                self.char_of(l)
                    .ok_or_else(|| crate::Error::InvalidInput(format!("label {l} out of range")))
            })
            .collect()
    }
}
