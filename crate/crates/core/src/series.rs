//! Degree-truncated formal power series over `T(V)`.

use std::fmt;
use std::ops::{Add, Sub};

use num_traits::One;

use crate::alphabet::Alphabet;
use crate::arith::{format_rational, int, Rational};
use crate::error::{KvError, Result};
use crate::poly::{Poly, Substitution};
use crate::word::Word;

/// Homogeneous components `0..=N`. Nothing above the truncation degree `N`
/// is ever represented.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSeries {
    alphabet: Alphabet,
    components: Vec<Poly>,
}

/// One nonzero coefficient of a defect series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DefectTerm {
    pub degree: usize,
    pub word: String,
    pub coeff: Rational,
}

impl fmt::Display for DefectTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.degree,
            self.word,
            format_rational(&self.coeff)
        )
    }
}

impl GradedSeries {
    pub fn zero(alphabet: &Alphabet, n: usize) -> Self {
        GradedSeries {
            alphabet: alphabet.clone(),
            components: vec![Poly::zero(alphabet); n + 1],
        }
    }

    /// Splits `p` into homogeneous components, dropping anything above `n`.
    pub fn from_poly(p: &Poly, n: usize) -> Self {
        let mut s = GradedSeries::zero(p.alphabet(), n);
        for (w, c) in p.terms() {
            if w.degree() <= n {
                s.components[w.degree()].add_term(w.clone(), c.clone());
            }
        }
        s
    }

    /// Builds a series from homogeneous components; component `d` must be
    /// homogeneous of degree `d`.
    pub fn from_components(alphabet: &Alphabet, components: Vec<Poly>) -> Self {
        assert!(!components.is_empty(), "at least the constant component");
        for (d, c) in components.iter().enumerate() {
            assert!(
                c.is_zero() || (c.min_degree() == Some(d) && c.max_degree() == Some(d)),
                "component {d} is not homogeneous of degree {d}"
            );
        }
        GradedSeries {
            alphabet: alphabet.clone(),
            components,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The truncation degree `N`.
    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, d: usize) -> &Poly {
        &self.components[d]
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn set_component(&mut self, d: usize, p: Poly) {
        assert!(p.is_zero() || (p.min_degree() == Some(d) && p.max_degree() == Some(d)));
        self.components[d] = p;
    }

    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero(&self.alphabet);
        for c in &self.components {
            out += c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut components: Vec<Poly> = self.components.iter().take(n + 1).cloned().collect();
        components.resize(n + 1, Poly::zero(&self.alphabet));
        GradedSeries {
            alphabet: self.alphabet.clone(),
            components,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn map<F: Fn(&Poly) -> Poly>(&self, f: F) -> Self {
        GradedSeries {
            alphabet: self.alphabet.clone(),
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|p| p.substitute(sub))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedSeries {
            alphabet: self.alphabet.clone(),
            components,
        })
    }

    /// Truncated product.
    pub fn mul(&self, other: &GradedSeries) -> Self {
        let n = self.order().min(other.order());
        let mut out = GradedSeries::zero(&self.alphabet, n);
        for (i, a) in self.components.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.components.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.components[i + j] += &(a * b);
            }
        }
        out
    }

    /// `exp(s)` truncated at the series order; requires a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.components[0].is_zero() {
            return Err(KvError::ConstantTerm {
                operation: "exp",
                expected: "0",
            });
        }
        let n = self.order();
        let mut out = GradedSeries::from_poly(&Poly::one(&self.alphabet), n);
        let mut power = out.clone();
        for k in 1..=n {
            power = power
                .mul(self)
                .scale(&Rational::new(1.into(), (k as i64).into()));
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    /// `log(s)` truncated at the series order; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.components[0] != Poly::one(&self.alphabet) {
            return Err(KvError::ConstantTerm {
                operation: "log",
                expected: "1",
            });
        }
        let n = self.order();
        let mut u = self.clone();
        u.components[0] = Poly::zero(&self.alphabet);
        let mut out = GradedSeries::zero(&self.alphabet, n);
        let mut power = GradedSeries::from_poly(&Poly::one(&self.alphabet), n);
        for k in 1..=n {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            let c = if k % 2 == 1 {
                Rational::one()
            } else {
                -Rational::one()
            } / int(k as i64);
            out = &out + &power.scale(&c);
        }
        Ok(out)
    }

    /// Every nonzero coefficient as `(degree, word, coefficient)`, lowest
    /// degree first.
    pub fn nonzero_terms(&self) -> Vec<DefectTerm> {
        self.components
            .iter()
            .flat_map(|p| p.terms())
            .map(|(w, c)| self.defect_term(w, c))
            .collect()
    }

    pub fn first_nonzero(&self) -> Option<DefectTerm> {
        self.components
            .iter()
            .flat_map(|p| p.terms())
            .next()
            .map(|(w, c)| self.defect_term(w, c))
    }

    fn defect_term(&self, w: &Word, c: &Rational) -> DefectTerm {
        DefectTerm {
            degree: w.degree(),
            word: w.display(&self.alphabet).to_string(),
            coeff: c.clone(),
        }
    }
}

impl Add for &GradedSeries {
    type Output = GradedSeries;
    fn add(self, rhs: &GradedSeries) -> GradedSeries {
        let n = self.order().min(rhs.order());
        GradedSeries {
            alphabet: self.alphabet.clone(),
            components: (0..=n)
                .map(|d| &self.components[d] + &rhs.components[d])
                .collect(),
        }
    }
}

impl Sub for &GradedSeries {
    type Output = GradedSeries;
    fn sub(self, rhs: &GradedSeries) -> GradedSeries {
        let n = self.order().min(rhs.order());
        GradedSeries {
            alphabet: self.alphabet.clone(),
            components: (0..=n)
                .map(|d| &self.components[d] - &rhs.components[d])
                .collect(),
        }
    }
}

impl std::ops::Neg for &GradedSeries {
    type Output = GradedSeries;
    fn neg(self) -> GradedSeries {
        self.map(|p| -p)
    }
}
