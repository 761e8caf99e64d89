//! Noncommutative polynomials: elements of the tensor algebra `T(V)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Letter};
use crate::arith::Rational;
use crate::error::{KvError, Result};
use crate::word::Word;

/// Finitely supported map from words to rationals. No zero coefficient is
/// ever stored, so equality is term-wise equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Rational>,
}

impl Poly {
    pub fn zero(alphabet: &Alphabet) -> Self {
        Poly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        Poly::monomial(alphabet, Word::empty(), Rational::one())
    }

    pub fn constant(alphabet: &Alphabet, c: Rational) -> Self {
        Poly::monomial(alphabet, Word::empty(), c)
    }

    pub fn letter(alphabet: &Alphabet, l: Letter) -> Self {
        Poly::monomial(alphabet, Word::letter(l), Rational::one())
    }

    pub fn word(alphabet: &Alphabet, w: Word) -> Self {
        Poly::monomial(alphabet, w, Rational::one())
    }

    pub fn monomial(alphabet: &Alphabet, w: Word, c: Rational) -> Self {
        let mut p = Poly::zero(alphabet);
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I>(alphabet: &Alphabet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let mut p = Poly::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient lookup by word text, e.g. `p.coeff_of("xy")`.
    pub fn coeff_of(&self, word: &str) -> Rational {
        Word::parse(&self.alphabet, word)
            .map(|w| self.coeff(&w))
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        assert_same(&self.alphabet, &other.alphabet);
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.alphabet);
        }
        Poly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    /// Degree-`d` part.
    pub fn homogeneous_component(&self, d: usize) -> Poly {
        Poly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree above `n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn checked_concat(&self, other: &Poly) -> Result<Poly> {
        self.alphabet.check_same(&other.alphabet)?;
        Ok(self.concat_unchecked(other, None))
    }

    /// Concatenation product, keeping only words of degree at most `max_degree`.
    pub fn concat_truncated(&self, other: &Poly, max_degree: usize) -> Poly {
        assert_same(&self.alphabet, &other.alphabet);
        self.concat_unchecked(other, Some(max_degree))
    }

    fn concat_unchecked(&self, other: &Poly, max_degree: Option<usize>) -> Poly {
        let mut out = Poly::zero(&self.alphabet);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                if max_degree.is_some_and(|m| a.degree() + b.degree() > m) {
                    continue;
                }
                out.add_term(a.concat(b), c * d);
            }
        }
        out
    }

    pub fn checked_bracket(&self, other: &Poly) -> Result<Poly> {
        self.alphabet.check_same(&other.alphabet)?;
        Ok(self.bracket(other))
    }

    /// `[p, q] = pq - qp`.
    pub fn bracket(&self, other: &Poly) -> Poly {
        self * other - other * self
    }

    /// `ad(z)^k (self)`.
    pub fn ad_pow(&self, z: &Poly, k: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..k {
            if p.is_zero() {
                break;
            }
            p = z.bracket(&p);
        }
        p
    }

    /// `[z, self]` for a letter `z`, without building a polynomial for `z`.
    pub fn ad_letter(&self, z: Letter) -> Poly {
        let mut out = Poly::zero(&self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.prepend(z), c.clone());
            let mut v = w.letters().to_vec();
            v.push(z);
            out.add_term(Word::new(v), -c);
        }
        out
    }

    /// The `z`-part: the `b_z` in `p = sum_z z b_z + constant`.
    pub fn letter_part(&self, z: Letter) -> Poly {
        Poly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.first() == Some(z))
                .map(|(w, c)| (w.tail(), c.clone()))
                .collect(),
        }
    }

    /// Left multiplication by a single letter.
    pub fn prepend_letter(&self, z: Letter) -> Poly {
        Poly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.prepend(z), c.clone()))
                .collect(),
        }
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<Poly> {
        let mut out = Poly::zero(&self.alphabet);
        for (w, c) in &self.terms {
            let mut letters = Vec::with_capacity(w.degree());
            let mut negative = false;
            for &l in w.letters() {
                let (image, neg) = sub
                    .image(l)
                    .ok_or_else(|| KvError::MissingImage(self.alphabet.symbol(l).to_string()))?;
                letters.push(image);
                negative ^= neg;
            }
            out.add_term(Word::new(letters), if negative { -c } else { c.clone() });
        }
        Ok(out)
    }

    pub fn map_words<F>(&self, f: F) -> Poly
    where
        F: Fn(&Word) -> Poly,
    {
        let mut out = Poly::zero(&self.alphabet);
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// Words occurring in the polynomial, lowest first.
    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn leading_term(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next()
    }
}

/// Letter-wise substitution `letter -> ±letter`, extended multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Option<(Letter, bool)>>,
}

impl Substitution {
    pub fn new(size: usize) -> Self {
        Substitution {
            images: vec![None; size],
        }
    }

    /// Sets `from -> ±to`; `negate` selects the minus sign.
    pub fn with(mut self, from: Letter, to: Letter, negate: bool) -> Self {
        if self.images.len() <= from as usize {
            self.images.resize(from as usize + 1, None);
        }
        self.images[from as usize] = Some((to, negate));
        self
    }

    pub fn image(&self, l: Letter) -> Option<(Letter, bool)> {
        self.images.get(l as usize).copied().flatten()
    }

    /// `x -> -y, y -> -x` on a two-letter alphabet.
    pub fn swap_negate() -> Self {
        Substitution::new(2).with(0, 1, true).with(1, 0, true)
    }

    /// `x <-> y`.
    pub fn swap() -> Self {
        Substitution::new(2).with(0, 1, false).with(1, 0, false)
    }

    /// `x_i -> -x_i` for every letter.
    pub fn negate_all(k: usize) -> Self {
        (0..k as Letter).fold(Substitution::new(k), |s, l| s.with(l, l, true))
    }

    /// `x_i -> x_{k+1-i}`.
    pub fn reverse_letters(k: usize) -> Self {
        (0..k as Letter).fold(Substitution::new(k), |s, l| {
            s.with(l, k as Letter - 1 - l, false)
        })
    }
}

fn assert_same(a: &Alphabet, b: &Alphabet) {
    assert!(a == b, "alphabet mismatch: {a} vs {b}");
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_same(&self.alphabet, &rhs.alphabet);
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_same(&self.alphabet, &rhs.alphabet);
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Concatenation product. Panics on alphabet mismatch; use
/// [`Poly::checked_concat`] for a fallible version.
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_same(&self.alphabet, &rhs.alphabet);
        self.concat_unchecked(rhs, None)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
