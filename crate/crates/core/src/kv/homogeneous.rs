use crate::alphabet::Alphabet;
use crate::arith::{rat, Rational};
use crate::error::{KvError, Result};
use crate::idempotents::{dynkin, patras_reutenauer_generator, psi};
use crate::kv::operators::{apply_operator, OperatorSpec};
use crate::kv::particular::{particular_solution, KvSolutionPair};
use crate::poly::{Poly, Substitution};
use crate::series::GradedSeries;
use crate::word::Word;

const X: u8 = 0;
const Y: u8 = 1;

fn check_xy(p: &Poly) -> Result<()> {
    p.alphabet().check_same(&Alphabet::xy())
}

fn linear(letter: u8, lambda: &Rational, n: usize) -> GradedSeries {
    GradedSeries::from_poly(
        &Poly::monomial(&Alphabet::xy(), Word::letter(letter), lambda.clone()),
        n,
    )
}

/// `(Ber(-x)P + λ₁x, Ber(y)Q + λ₂y)` truncated at `n`.
fn ber_pair(
    p: &Poly,
    q: &Poly,
    lambda1: &Rational,
    lambda2: &Rational,
    n: usize,
) -> Result<KvSolutionPair> {
    let f = apply_operator(
        &OperatorSpec::ber(X, true, n),
        &GradedSeries::from_poly(p, n),
    )?;
    let g = apply_operator(
        &OperatorSpec::ber(Y, false, n),
        &GradedSeries::from_poly(q, n),
    )?;
    Ok(KvSolutionPair {
        f: &f + &linear(X, lambda1, n),
        g: &g + &linear(Y, lambda2, n),
    })
}

/// `F = Ber(-x)γ(p_x) + λ₁x`, `G = Ber(y)γ(p_y) + λ₂y` for `p ∈ Ker γ`,
/// a solution of `E(-x)F = E(y)G`.
pub fn homogeneous_solution(
    p: &Poly,
    lambda1: &Rational,
    lambda2: &Rational,
    n: usize,
) -> Result<KvSolutionPair> {
    check_xy(p)?;
    if !dynkin(p).is_zero() {
        return Err(KvError::NotInKernel);
    }
    ber_pair(
        &dynkin(&p.letter_part(X)),
        &dynkin(&p.letter_part(Y)),
        lambda1,
        lambda2,
        n,
    )
}

/// `E(-x)F - E(y)G` through degree `n`.
pub fn homogeneous_defect(pair: &KvSolutionPair, n: usize) -> Result<GradedSeries> {
    if n < 1 || pair.order() + 1 < n {
        return Err(KvError::OutOfRange(format!(
            "pair of order {} checked through {n}",
            pair.order()
        )));
    }
    let f = apply_operator(&OperatorSpec::e(X, true, n), &pair.f.truncate(n - 1))?;
    let g = apply_operator(&OperatorSpec::e(Y, false, n), &pair.g.truncate(n - 1))?;
    Ok(&f - &g)
}

/// `F = F₀ + Ber(-x)Ψ_x(p) + λ₁x`, `G = F₀(-y,-x) + Ber(y)Ψ_y(p) + λ₂y`.
pub fn general_solution(
    p: &Poly,
    lambda1: &Rational,
    lambda2: &Rational,
    n: usize,
) -> Result<KvSolutionPair> {
    check_xy(p)?;
    let base = particular_solution(n)?;
    let correction = ber_pair(&psi(p, X), &psi(p, Y), lambda1, lambda2, n)?;
    Ok(KvSolutionPair {
        f: &base.f + &correction.f,
        g: &base.g + &correction.g,
    })
}

/// `E(p) = γ(p)p` (in `Ker γ` for homogeneous `p` without constant term)
/// reweighted by `n/(n+1)` in each degree `n`.
pub fn weighted_generator(p: &Poly) -> Poly {
    let e = patras_reutenauer_generator(p);
    let mut out = Poly::zero(p.alphabet());
    for n in e.min_degree().unwrap_or(0)..=e.max_degree().unwrap_or(0) {
        out += &e
            .homogeneous_component(n)
            .scale(&rat(n as i64, n as i64 + 1));
    }
    out
}

/// The second description of all solutions:
/// `F = F₀ + Ber(-x)γ(Σ_n (n/(n+1)) (E(p)_n)_x) + λ₁x`, and likewise for `G`
/// with the `y`-part and `Ber(y)`.
pub fn e_route_solution(
    p: &Poly,
    lambda1: &Rational,
    lambda2: &Rational,
    n: usize,
) -> Result<KvSolutionPair> {
    check_xy(p)?;
    let w = weighted_generator(p);
    if !dynkin(&w).is_zero() {
        return Err(KvError::NotInKernel);
    }
    let base = particular_solution(n)?;
    let correction = ber_pair(
        &dynkin(&w.letter_part(X)),
        &dynkin(&w.letter_part(Y)),
        lambda1,
        lambda2,
        n,
    )?;
    Ok(KvSolutionPair {
        f: &base.f + &correction.f,
        g: &base.g + &correction.g,
    })
}

/// `A(p) = γ(p)p - γ(p(-y,-x))p(-y,-x)`, antisymmetric under `(x,y) ↦ (-y,-x)`
/// and in `Ker γ` for homogeneous `p`.
pub fn antisymmetric_kernel_element(p: &Poly) -> Result<Poly> {
    check_xy(p)?;
    let flipped = p.substitute(&Substitution::swap_negate())?;
    Ok(&patras_reutenauer_generator(p) - &patras_reutenauer_generator(&flipped))
}
