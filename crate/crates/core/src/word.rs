use std::cmp::Ordering;
use std::fmt;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{KvError, Result};
use crate::permutation::Permutation;

/// A monomial of the tensor algebra: a finite sequence of letters.
///
/// Words are ordered by degree first, then lexicographically, so a sorted
/// polynomial lists its homogeneous components in increasing degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// `a^i b^j`.
    pub fn power_pair(a: Letter, i: usize, b: Letter, j: usize) -> Self {
        let mut v = vec![a; i];
        v.extend(std::iter::repeat_n(b, j));
        Word(v)
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut rest = text;
        let mut letters = Vec::new();
        while !rest.is_empty() {
            let (l, len) = alphabet.match_prefix(rest).ok_or_else(|| KvError::Parse {
                position: text.len() - rest.len(),
                message: format!("unknown letter in `{text}`"),
            })?;
            letters.push(l);
            rest = &rest[len..];
        }
        Ok(Word(letters))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Position `i` of the result carries letter `self[σ(i)]`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Word> {
        if sigma.len() != self.degree() {
            return Err(KvError::SizeMismatch {
                expected: self.degree(),
                found: sigma.len(),
            });
        }
        Ok(self.permute_by_images(sigma.images()))
    }

    /// Same as [`Word::permute`] for 1-based `images`, unchecked.
    pub fn permute_by_images(&self, images: &[usize]) -> Word {
        Word(images.iter().map(|&i| self.0[i - 1]).collect())
    }

    /// Plain lexicographic comparison (a proper prefix is smaller).
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        WordDisplay {
            word: self,
            alphabet,
        }
    }

    /// All words of the given degree over `k` letters, in lexicographic order.
    pub fn all_of_degree(k: usize, degree: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..degree {
            out = out
                .iter()
                .flat_map(|w| {
                    (0..k as Letter).map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for &l in self.word.letters() {
            write!(f, "{}", self.alphabet.symbol(l))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(&Alphabet::xy(), s).unwrap()
    }

    #[test]
    fn permute_examples() {
        let s = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(w("xyy").permute(&s).unwrap(), w("yxy"));
        assert_eq!(
            w("xyy").permute(&Permutation::identity(3)).unwrap(),
            w("xyy")
        );
        assert_eq!(
            w("xy")
                .permute(&Permutation::new(vec![2, 1]).unwrap())
                .unwrap(),
            w("yx")
        );
        assert!(w("xy").permute(&s).is_err());
    }

    #[test]
    fn graded_order() {
        assert!(w("y") < w("xx"));
        assert!(w("xy") < w("yx"));
        assert_eq!(w("x").lex_cmp(&w("xx")), Ordering::Less);
        assert_eq!(Word::all_of_degree(2, 3).len(), 8);
        assert_eq!(Word::all_of_degree(2, 2)[1], w("xy"));
    }
}
