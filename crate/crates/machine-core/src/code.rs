//! Ordered lists of equal-width binary words.

use std::fmt;

/// An ordered sequence of binary words, all of the same width.
///
/// This is the shape shared by machine output streams and by the
/// combinatorial reference constructions: the interesting property of a
/// code is usually the *order* of its words, not just the set.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Code {
    /// Number of bits per word.
    pub width: usize,
    /// The words, as strings over `{'0','1'}`, in sequence order.
    pub words: Vec<String>,
}

impl Code {
    /// An empty code of the given width.
    pub fn new(width: usize) -> Self {
        Code { width, words: Vec::new() }
    }

    /// Builds a code from words, checking that they share one width and
    /// are binary. Errors mention the first offending index.
    pub fn from_words(width: usize, words: Vec<String>) -> Result<Self, String> {
        for (i, w) in words.iter().enumerate() {
            if w.len() != width {
                return Err(format!("word {i} has length {}, expected {width}", w.len()));
            }
            if !is_binary(w) {
                return Err(format!("word {i} ({w:?}) contains a non-binary character"));
            }
        }
        Ok(Code { width, words })
    }

    /// Number of words.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// True if the code has no words.
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Appends a word emitted as raw bits.
    pub fn push_bits(&mut self, bits: &[u8]) {
        debug_assert_eq!(bits.len(), self.width);
        self.words.push(bits_to_string(bits));
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

/// True if `s` consists only of `'0'` and `'1'`.
pub fn is_binary(s: &str) -> bool {
    s.bytes().all(|b| b == b'0' || b == b'1')
}

/// Renders bit values (0/1) as a string of `'0'`/`'1'`.
pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// Parses a `'0'`/`'1'` string into bit values.
pub fn string_to_bits(s: &str) -> Result<Vec<u8>, String> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(format!("non-binary character {c:?}")),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_words_rejects_ragged_and_nonbinary() {
        assert!(Code::from_words(2, vec!["00".into(), "011".into()]).is_err());
        assert!(Code::from_words(2, vec!["0x".into()]).is_err());
        let c = Code::from_words(2, vec!["00".into(), "01".into()]).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn bit_string_round_trip() {
        assert_eq!(bits_to_string(&[1, 0, 0, 1]), "1001");
        assert_eq!(string_to_bits("1001").unwrap(), vec![1, 0, 0, 1]);
        assert!(string_to_bits("10a1").is_err());
    }
}
