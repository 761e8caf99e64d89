//! The co-shuffle coproduct and convolution of endomorphisms of `T(V)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::alphabet::Alphabet;
use crate::arith::Rational;
use crate::poly::Poly;
use crate::word::Word;

/// Finitely supported element of `T(V) ⊗ T(V)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorSquare {
    alphabet: Alphabet,
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorSquare {
    pub fn zero(alphabet: &Alphabet) -> Self {
        TensorSquare {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn pure(a: &Poly, b: &Poly) -> Self {
        let mut out = TensorSquare::zero(a.alphabet());
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                out.add_term(u.clone(), v.clone(), c * d);
            }
        }
        out
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensorSquare) -> TensorSquare {
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), c.clone());
        }
        out
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn mul(&self, other: &TensorSquare) -> TensorSquare {
        let mut out = TensorSquare::zero(&self.alphabet);
        for ((a, b), c) in &self.terms {
            for ((u, v), d) in &other.terms {
                out.add_term(a.concat(u), b.concat(v), c * d);
            }
        }
        out
    }

    /// Applies `f ⊗ g` and multiplies: `μ ∘ (f ⊗ g)`.
    pub fn contract<F, G>(&self, f: F, g: G) -> Poly
    where
        F: Fn(&Word) -> Poly,
        G: Fn(&Word) -> Poly,
    {
        let mut out = Poly::zero(&self.alphabet);
        for ((u, v), c) in &self.terms {
            let fu = f(u);
            if fu.is_zero() {
                continue;
            }
            let gv = g(v);
            out.add_scaled(&(&fu * &gv), c);
        }
        out
    }

    /// `(ε ⊗ id)` and `(id ⊗ ε)`: keep the terms whose left (right) factor is
    /// the empty word.
    pub fn counit_left(&self) -> Poly {
        Poly::from_terms(
            &self.alphabet,
            self.terms
                .iter()
                .filter(|((u, _), _)| u.is_empty())
                .map(|((_, v), c)| (v.clone(), c.clone())),
        )
    }

    pub fn counit_right(&self) -> Poly {
        Poly::from_terms(
            &self.alphabet,
            self.terms
                .iter()
                .filter(|((_, v), _)| v.is_empty())
                .map(|((u, _), c)| (u.clone(), c.clone())),
        )
    }
}

/// `Δ(w)` for a word: the sum over all ways of splitting the positions of
/// `w` into two complementary subwords.
pub fn coshuffle_word(alphabet: &Alphabet, w: &Word) -> TensorSquare {
    let n = w.degree();
    assert!(n < 64, "word too long for subset enumeration");
    let mut out = TensorSquare::zero(alphabet);
    for mask in 0u64..(1u64 << n) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &l) in w.letters().iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l);
            } else {
                right.push(l);
            }
        }
        out.add_term(
            Word::new(left),
            Word::new(right),
            Rational::from_integer(1.into()),
        );
    }
    out
}

/// The co-shuffle `Δ`, the algebra morphism with letters primitive.
pub fn coshuffle(p: &Poly) -> TensorSquare {
    let mut out = TensorSquare::zero(p.alphabet());
    for (w, c) in p.terms() {
        for ((u, v), d) in coshuffle_word(p.alphabet(), w).terms {
            out.add_term(u, v, d * c);
        }
    }
    out
}

/// Whether `Δ(p) = 1⊗p + p⊗1`.
pub fn is_primitive(p: &Poly) -> bool {
    let one = Poly::one(p.alphabet());
    let expected = TensorSquare::pure(&one, p).add(&TensorSquare::pure(p, &one));
    coshuffle(p) == expected
}

/// Evaluates `J^{⋆k}(w)` where `J = Id - u∘ε`, memoised on `(word, k)`.
///
/// `J^{⋆k} = μ ∘ (J ⊗ J^{⋆(k-1)}) ∘ Δ`, and `J^{⋆k}` vanishes on words of
/// degree below `k`.
#[derive(Debug)]
pub struct ConvolutionPowers {
    alphabet: Alphabet,
    memo: HashMap<(Word, usize), Poly>,
}

impl ConvolutionPowers {
    pub fn new(alphabet: &Alphabet) -> Self {
        ConvolutionPowers {
            alphabet: alphabet.clone(),
            memo: HashMap::new(),
        }
    }

    pub fn j_power(&mut self, w: &Word, k: usize) -> Poly {
        if k == 0 {
            return if w.is_empty() {
                Poly::one(&self.alphabet)
            } else {
                Poly::zero(&self.alphabet)
            };
        }
        if w.degree() < k {
            return Poly::zero(&self.alphabet);
        }
        if k == 1 {
            return Poly::word(&self.alphabet, w.clone());
        }
        if let Some(p) = self.memo.get(&(w.clone(), k)) {
            return p.clone();
        }
        let delta = coshuffle_word(&self.alphabet, w);
        let mut out = Poly::zero(&self.alphabet);
        for ((u, v), c) in delta.terms() {
            if u.is_empty() || v.degree() < k - 1 {
                continue;
            }
            let rest = self.j_power(v, k - 1);
            if rest.is_zero() {
                continue;
            }
            let left = Poly::word(&self.alphabet, u.clone());
            out.add_scaled(&(&left * &rest), c);
        }
        self.memo.insert((w.clone(), k), out.clone());
        out
    }
}
