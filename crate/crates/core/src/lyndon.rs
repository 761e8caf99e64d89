//! Lyndon words, their standard bracketings, and Lie-membership by
//! triangular elimination.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Letter};
use crate::arith::{moebius, Rational};
use crate::error::{KvError, Result};
use crate::poly::Poly;
use crate::text::format_poly;
use crate::word::Word;

/// A word strictly smaller than each of its proper suffixes, together with
/// its standard factorization `w = uv`, `v` the longest proper Lyndon suffix.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct LyndonWord {
    word: Word,
    split: usize,
}

impl LyndonWord {
    pub fn new(word: Word) -> Option<Self> {
        if !is_lyndon(word.letters()) {
            return None;
        }
        let n = word.degree();
        let split = (1..n)
            .find(|&i| is_lyndon(&word.letters()[i..]))
            .unwrap_or(n);
        Some(LyndonWord { word, split })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn degree(&self) -> usize {
        self.word.degree()
    }

    /// `(u, v)` of the standard factorization; `None` for a single letter.
    pub fn factors(&self) -> Option<(LyndonWord, LyndonWord)> {
        if self.degree() == 1 {
            return None;
        }
        let n = self.degree();
        let u = LyndonWord::new(self.word.slice(0, self.split)).expect("left factor is Lyndon");
        let v = LyndonWord::new(self.word.slice(self.split, n)).expect("right factor is Lyndon");
        Some((u, v))
    }
}

pub fn is_lyndon(letters: &[Letter]) -> bool {
    !letters.is_empty() && (1..letters.len()).all(|i| letters < &letters[i..])
}

/// Lyndon words of degree `n` over the alphabet, in lexicographic order
/// (Duval's generation).
pub fn lyndon_words(alphabet: &Alphabet, n: usize) -> Result<Vec<LyndonWord>> {
    if n == 0 {
        return Err(KvError::OutOfRange("Lyndon words of degree 0".into()));
    }
    let k = alphabet.len() as Letter;
    let mut out = Vec::new();
    let mut w: Vec<Letter> = vec![0];
    while !w.is_empty() {
        if w.len() == n {
            out.push(LyndonWord::new(Word::new(w.clone())).expect("Duval yields Lyndon words"));
        }
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    Ok(out)
}

/// `P(a) = a` for letters and `P(uv) = [P(u), P(v)]` at the standard
/// factorization.
pub fn standard_bracketing(alphabet: &Alphabet, lw: &LyndonWord) -> Poly {
    match lw.factors() {
        None => Poly::word(alphabet, lw.word.clone()),
        Some((u, v)) => {
            standard_bracketing(alphabet, &u).bracket(&standard_bracketing(alphabet, &v))
        }
    }
}

/// `dim Lie(V)_n = (1/n) Σ_{d|n} μ(d) k^{n/d}`.
pub fn witt_dimension(k: u64, n: u64) -> Result<u64> {
    if k == 0 || n == 0 {
        return Err(KvError::OutOfRange(format!("witt_dimension({k}, {n})")));
    }
    let overflow = || KvError::OutOfRange(format!("witt_dimension({k}, {n}) overflows"));
    let mut sum: i128 = 0;
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mu = moebius(d)?;
        if mu == 0 {
            continue;
        }
        let power = (k as i128)
            .checked_pow((n / d) as u32)
            .ok_or_else(overflow)?;
        sum += mu as i128 * power;
    }
    u64::try_from(sum / n as i128).map_err(|_| overflow())
}

/// Lyndon words of one degree with their expanded standard bracketings.
#[derive(Debug)]
pub struct LyndonBasis {
    pub words: Vec<LyndonWord>,
    pub bracketings: Vec<Poly>,
    index: HashMap<Word, usize>,
}

impl LyndonBasis {
    fn build(alphabet: &Alphabet, n: usize) -> Result<Self> {
        let words = lyndon_words(alphabet, n)?;
        let bracketings = words
            .iter()
            .map(|w| standard_bracketing(alphabet, w))
            .collect();
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.word.clone(), i))
            .collect();
        Ok(LyndonBasis {
            words,
            bracketings,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

type BasisKey = (Vec<String>, usize);

fn cache() -> &'static RwLock<HashMap<BasisKey, Arc<LyndonBasis>>> {
    static CACHE: OnceLock<RwLock<HashMap<BasisKey, Arc<LyndonBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Cached basis of `Lie(V)_n`.
pub fn lyndon_basis(alphabet: &Alphabet, n: usize) -> Result<Arc<LyndonBasis>> {
    let key = (alphabet.symbols().to_vec(), n);
    if let Some(b) = cache().read().expect("basis cache poisoned").get(&key) {
        return Ok(b.clone());
    }
    let built = Arc::new(LyndonBasis::build(alphabet, n)?);
    let mut guard = cache().write().expect("basis cache poisoned");
    Ok(guard.entry(key).or_insert(built).clone())
}

/// Coordinates of a homogeneous Lie element in the Lyndon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieCoordinates {
    pub degree: usize,
    pub coords: BTreeMap<LyndonWord, Rational>,
}

impl LieCoordinates {
    pub fn to_poly(&self, alphabet: &Alphabet) -> Poly {
        let mut out = Poly::zero(alphabet);
        for (w, c) in &self.coords {
            out.add_scaled(&standard_bracketing(alphabet, w), c);
        }
        out
    }

    /// Dense coordinate vector against `lyndon_basis(alphabet, degree)`.
    pub fn dense(&self, basis: &LyndonBasis) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (w, c) in &self.coords {
            v[basis.position(w.word()).expect("coordinate outside basis")] = c.clone();
        }
        v
    }
}

/// Repeatedly cancels the smallest remaining word against the bracketing of
/// that word; fails as soon as the smallest word is not Lyndon.
pub fn to_lie_coordinates(p: &Poly) -> Result<LieCoordinates> {
    let degree = match (p.min_degree(), p.max_degree()) {
        (None, None) => 0,
        (Some(a), Some(b)) if a == b => a,
        _ => {
            return Err(KvError::OutOfRange(
                "Lie coordinates of an inhomogeneous polynomial".into(),
            ))
        }
    };
    let mut coords = BTreeMap::new();
    if degree == 0 {
        if p.is_zero() {
            return Ok(LieCoordinates { degree, coords });
        }
        return Err(KvError::NotLie {
            residual: format_poly(p),
        });
    }
    let basis = lyndon_basis(p.alphabet(), degree)?;
    let mut residual = p.clone();
    while let Some((w, c)) = residual.leading_term() {
        let (w, c) = (w.clone(), c.clone());
        let Some(i) = basis.position(&w) else {
            return Err(KvError::NotLie {
                residual: format_poly(&residual),
            });
        };
        debug_assert!(basis.bracketings[i].coeff(&w).is_one());
        residual.add_scaled(&basis.bracketings[i], &-&c);
        coords.insert(basis.words[i].clone(), c);
    }
    Ok(LieCoordinates { degree, coords })
}

/// Whether every homogeneous component of `p` is a Lie element.
pub fn is_lie(p: &Poly) -> bool {
    let top = p.max_degree().unwrap_or(0);
    (0..=top).all(|d| to_lie_coordinates(&p.homogeneous_component(d)).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::idempotents::{dynkin, eulerian};
    use crate::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(&Alphabet::xy(), s).unwrap()
    }

    fn names(ws: &[LyndonWord]) -> Vec<String> {
        let a = Alphabet::xy();
        ws.iter()
            .map(|w| w.word().display(&a).to_string())
            .collect()
    }

    #[test]
    fn lyndon_word_examples() {
        let a = Alphabet::xy();
        assert_eq!(names(&lyndon_words(&a, 1).unwrap()), ["x", "y"]);
        assert_eq!(names(&lyndon_words(&a, 2).unwrap()), ["xy"]);
        assert_eq!(
            names(&lyndon_words(&a, 4).unwrap()),
            ["xxxy", "xxyy", "xyyy"]
        );
        assert!(lyndon_words(&a, 0).is_err());
    }

    #[test]
    fn duval_matches_brute_force() {
        for k in 1..=3usize {
            let a = Alphabet::standard(k.max(2)).unwrap();
            let a = if k == 1 {
                Alphabet::new(["x"]).unwrap()
            } else {
                a
            };
            for n in 1..=7 {
                let brute: Vec<Word> = Word::all_of_degree(k, n)
                    .into_iter()
                    .filter(|w| is_lyndon(w.letters()))
                    .collect();
                let duval: Vec<Word> = lyndon_words(&a, n)
                    .unwrap()
                    .into_iter()
                    .map(|l| l.word)
                    .collect();
                assert_eq!(duval, brute, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn counts_match_witt() {
        let a = Alphabet::xy();
        for n in 1..=10 {
            assert_eq!(
                lyndon_words(&a, n).unwrap().len() as u64,
                witt_dimension(2, n as u64).unwrap()
            );
        }
        let b = Alphabet::standard(3).unwrap();
        for n in 1..=6 {
            assert_eq!(
                lyndon_words(&b, n).unwrap().len() as u64,
                witt_dimension(3, n as u64).unwrap()
            );
        }
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_dimension(2, 1).unwrap(), 2);
        assert_eq!(witt_dimension(2, 5).unwrap(), 6);
        assert_eq!(witt_dimension(2, 8).unwrap(), 30);
        assert!(witt_dimension(0, 3).is_err());
        assert!(witt_dimension(2, 200).is_err());
    }

    #[test]
    fn bracketing_examples() {
        let a = Alphabet::xy();
        let lw = |s: &str| LyndonWord::new(Word::parse(&a, s).unwrap()).unwrap();
        assert_eq!(standard_bracketing(&a, &lw("xy")), p("xy - yx"));
        assert_eq!(standard_bracketing(&a, &lw("xxy")), p("xxy - 2*xyx + yxx"));
        assert_eq!(standard_bracketing(&a, &lw("x")), p("x"));
        assert!(LyndonWord::new(Word::parse(&a, "yx").unwrap()).is_none());
        assert_eq!(
            lw("xxyxy")
                .factors()
                .map(|(u, v)| (u.split, v.word().degree())),
            Some((1, 2))
        );
    }

    #[test]
    fn triangularity() {
        let a = Alphabet::xy();
        for n in 1..=8 {
            let basis = lyndon_basis(&a, n).unwrap();
            for (w, b) in basis.words.iter().zip(&basis.bracketings) {
                let (lead, c) = b.leading_term().unwrap();
                assert_eq!(lead, w.word());
                assert_eq!(*c, int(1));
            }
        }
    }

    #[test]
    fn coordinate_examples() {
        let a = Alphabet::xy();
        let c = to_lie_coordinates(&p("xy - yx")).unwrap();
        assert_eq!(c.coords.len(), 1);
        assert_eq!(c.to_poly(&a), p("xy - yx"));
        match to_lie_coordinates(&p("xy + yx")) {
            Err(KvError::NotLie { residual }) => assert_eq!(residual, "2*yx"),
            other => panic!("{other:?}"),
        }
        assert!(to_lie_coordinates(&p("x + xy")).is_err());
        assert!(to_lie_coordinates(&p("0")).unwrap().coords.is_empty());
    }

    #[test]
    fn idempotent_images_are_lie() {
        let a = Alphabet::xy();
        for d in 1..=6 {
            for w in Word::all_of_degree(2, d) {
                let word = Poly::word(&a, w);
                for image in [dynkin(&word), eulerian(&word)] {
                    let c = to_lie_coordinates(&image).unwrap();
                    assert!(c.coords.len() as u64 <= witt_dimension(2, d as u64).unwrap());
                    assert_eq!(c.to_poly(&a), image);
                }
            }
        }
    }

    #[test]
    fn friedrichs_criterion() {
        let a = Alphabet::xy();
        for d in 1..=5 {
            for w in Word::all_of_degree(2, d) {
                let word = Poly::word(&a, w);
                for q in [dynkin(&word), word.clone(), &word + &dynkin(&word)] {
                    let fixed = dynkin(&q) == q;
                    assert_eq!(fixed, crate::coshuffle::is_primitive(&q));
                    assert_eq!(fixed, to_lie_coordinates(&q).is_ok());
                }
            }
        }
    }
}
