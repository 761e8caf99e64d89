use std::fmt;
use std::sync::Arc;

use crate::error::{KvError, Result};

/// Index of a letter in its alphabet.
pub type Letter = u8;

/// Ordered set of letter symbols. The order induces the lexicographic order
/// on words.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(KvError::InvalidAlphabet("empty".into()));
        }
        if symbols.len() > Letter::MAX as usize {
            return Err(KvError::InvalidAlphabet("too many letters".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || !s.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(KvError::InvalidAlphabet(format!("bad symbol `{s}`")));
            }
            if s.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(KvError::InvalidAlphabet(format!(
                    "symbol `{s}` starts with a digit"
                )));
            }
            if symbols[..i].contains(s) {
                return Err(KvError::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet {
            symbols: symbols.into(),
        })
    }

    /// The two-letter alphabet `x < y`.
    pub fn xy() -> Self {
        Alphabet::new(["x", "y"]).expect("valid")
    }

    /// `x, y` for two letters, `x1 < x2 < ... < xk` otherwise.
    pub fn standard(k: usize) -> Result<Self> {
        match k {
            0 => Err(KvError::InvalidAlphabet("empty".into())),
            2 => Ok(Alphabet::xy()),
            _ => Alphabet::new((1..=k).map(|i| format!("x{i}"))),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.symbols.len() as Letter
    }

    /// Longest symbol that is a prefix of `text`.
    pub fn match_prefix(&self, text: &str) -> Option<(Letter, usize)> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, s)| text.starts_with(s.as_str()))
            .max_by_key(|(_, s)| s.len())
            .map(|(i, s)| (i as Letter, s.len()))
    }

    pub fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(KvError::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.symbols, &other.symbols) || self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(","))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["x", "x"]).is_err());
        assert!(Alphabet::new(["1a"]).is_err());
        assert!(Alphabet::new(["a+b"]).is_err());
    }

    #[test]
    fn longest_prefix_wins() {
        let a = Alphabet::new(["x1", "x10", "y"]).unwrap();
        assert_eq!(a.match_prefix("x10y"), Some((1, 3)));
        assert_eq!(a.match_prefix("x1y"), Some((0, 2)));
        assert_eq!(a.match_prefix("z"), None);
    }

    #[test]
    fn standard_alphabets() {
        assert_eq!(Alphabet::standard(2).unwrap().symbols(), ["x", "y"]);
        assert_eq!(Alphabet::standard(3).unwrap().symbols(), ["x1", "x2", "x3"]);
        assert_eq!(Alphabet::xy(), Alphabet::new(["x", "y"]).unwrap());
    }
}
