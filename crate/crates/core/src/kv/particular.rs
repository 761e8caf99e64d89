use crate::alphabet::Alphabet;
use crate::arith::{int, inverse_factorial, rat, Rational};
use crate::error::{KvError, Result};
use crate::idempotents::{dynkin, eulerian_power_pairs};
use crate::kv::bch::{bch_oracle, BchSeries};
use crate::kv::operators::{apply_operator, OperatorSpec};
use crate::lyndon::to_lie_coordinates;
use crate::poly::{Poly, Substitution};
use crate::series::GradedSeries;

const X: u8 = 0;
const Y: u8 = 1;

/// A candidate `(F, G)` for the first Kashiwara–Vergne equation
/// `x + y - log(e^y e^x) = (1 - e^{-ad x})F + (e^{ad y} - 1)G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KvSolutionPair {
    pub f: GradedSeries,
    pub g: GradedSeries,
}

impl KvSolutionPair {
    pub fn new(f: GradedSeries, g: GradedSeries) -> Self {
        let n = f.order().min(g.order());
        KvSolutionPair {
            f: f.truncate(n),
            g: g.truncate(n),
        }
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    /// `G(x,y) = F(-y,-x)`.
    pub fn is_symmetric(&self) -> bool {
        self.f.substitute(&Substitution::swap_negate()).as_ref() == Ok(&self.g)
    }

    /// Fails with the first component that is not a Lie element.
    pub fn certify_lie(&self) -> Result<()> {
        for c in self.f.components().iter().chain(self.g.components()) {
            to_lie_coordinates(c)?;
        }
        Ok(())
    }
}

/// `Φ⁺_n = γ(x·(Φ_n)_x)` and `Φ⁻_n = γ(y·(Φ_n)_y)` for `n ≥ 2`; degrees 0 and 1
/// are left zero.
pub fn phi_split(phi: &BchSeries) -> Result<(GradedSeries, GradedSeries)> {
    let series = phi.series();
    let alphabet = series.alphabet();
    if alphabet.len() != 2 {
        return Err(KvError::InvalidAlphabet(format!(
            "split needs {{x,y}}, got {alphabet}"
        )));
    }
    phi.certify_lie()?;
    let half = |z: u8| {
        let components = series
            .components()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n < 2 {
                    Poly::zero(alphabet)
                } else {
                    dynkin(&c.letter_part(z).prepend_letter(z))
                }
            })
            .collect();
        GradedSeries::from_components(alphabet, components)
    };
    Ok((half(X), half(Y)))
}

/// `a(x,y) = Σ_{m≥1} (m/(m+1)) Σ_{i=0}^{m-1} γ((e_{m+1}(x^{i+1} y^{m-i}))_x) / ((i+1)! (m-i)!)`.
///
/// Equivalently `a_m = (m/(m+1)) γ((Φ_{m+1})_x)`.
pub fn a_series(n: usize) -> Result<GradedSeries> {
    if n == 0 {
        return Err(KvError::OutOfRange("a(x,y) needs degree at least 1".into()));
    }
    let alphabet = Alphabet::xy();
    let mut components = vec![Poly::zero(&alphabet)];
    for m in 1..=n {
        let table = eulerian_power_pairs(m + 1);
        let mut inner = Poly::zero(&alphabet);
        for i in 0..m {
            let c = inverse_factorial(i as u64 + 1) * inverse_factorial((m - i) as u64);
            inner.add_scaled(&table[i + 1].letter_part(X), &c);
        }
        components.push(dynkin(&inner).scale(&rat(m as i64, m as i64 + 1)));
    }
    Ok(GradedSeries::from_components(&alphabet, components))
}

/// `F₀ = -Ber(-x) a(-x,-y)`.
pub fn f0(n: usize) -> Result<GradedSeries> {
    let a = a_series(n)?.substitute(&Substitution::negate_all(2))?;
    Ok(-&apply_operator(&OperatorSpec::ber(X, true, n), &a)?)
}

/// `G₀(x,y) = F₀(-y,-x)`.
pub fn g0(n: usize) -> Result<GradedSeries> {
    f0(n)?.substitute(&Substitution::swap_negate())
}

pub fn particular_solution(n: usize) -> Result<KvSolutionPair> {
    let f = f0(n)?;
    let g = f.substitute(&Substitution::swap_negate())?;
    Ok(KvSolutionPair { f, g })
}

fn require_order(s: &GradedSeries, n: usize) -> Result<()> {
    if n < 1 || s.order() + 1 < n {
        return Err(KvError::OutOfRange(format!(
            "a series of order {} does not determine the defect through degree {n}",
            s.order()
        )));
    }
    Ok(())
}

/// `Φ⁻(y,x) - E(-x)F` through degree `n`, with `Φ` from the exp/log oracle.
pub fn verify_split(f: &GradedSeries, n: usize) -> Result<GradedSeries> {
    require_order(f, n)?;
    let (_, minus) = phi_split(&bch_oracle(n)?)?;
    let minus_yx = minus.substitute(&Substitution::swap())?;
    let e = apply_operator(&OperatorSpec::e(X, true, n), &f.truncate(n - 1))?;
    Ok(&minus_yx - &e)
}

/// `Σ_{m≥2} Φ_m(y,x) - E(-x)F + E(y)G` through degree `n`, with `Φ` from
/// the exp/log oracle and `Φ(y,x)` obtained by exchanging letters.
pub fn verify_kv1(pair: &KvSolutionPair, n: usize) -> Result<GradedSeries> {
    require_order(&pair.f, n)?;
    let phi_yx = bch_oracle(n)?.swapped()?;
    let mut lhs = phi_yx.series().clone();
    lhs.set_component(1, Poly::zero(&Alphabet::xy()));
    let ef = apply_operator(&OperatorSpec::e(X, true, n), &pair.f.truncate(n - 1))?;
    let eg = apply_operator(&OperatorSpec::e(Y, false, n), &pair.g.truncate(n - 1))?;
    Ok(&(&lhs - &ef) + &eg)
}

/// Fails with the first nonzero defect term.
pub fn require_zero(defect: &GradedSeries) -> Result<()> {
    match defect.first_nonzero() {
        None => Ok(()),
        Some(term) => Err(KvError::NotASolution(term)),
    }
}

/// `F₁ = ½(F + G(-y,-x)) + λx`, `G₁ = ½(G + F(-y,-x)) - λy`.
pub fn symmetrize(pair: &KvSolutionPair, lambda: &Rational) -> Result<KvSolutionPair> {
    require_zero(&verify_kv1(pair, pair.order() + 1)?)?;
    let sub = Substitution::swap_negate();
    let half = rat(1, 2);
    let alphabet = Alphabet::xy();
    let n = pair.order();
    let shift = |l: u8, c: Rational| {
        GradedSeries::from_poly(
            &Poly::monomial(&alphabet, crate::word::Word::letter(l), c),
            n,
        )
    };
    let f = &(&pair.f + &pair.g.substitute(&sub)?).scale(&half) + &shift(X, lambda.clone());
    let g = &(&pair.g + &pair.f.substitute(&sub)?).scale(&half) + &shift(Y, -lambda * int(1));
    Ok(KvSolutionPair { f, g })
}
