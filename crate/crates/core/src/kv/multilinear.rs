use crate::alphabet::{Alphabet, Letter};
use crate::arith::rat;
use crate::error::{KvError, Result};
use crate::idempotents::dynkin;
use crate::kv::bch::{bch_eulerian_for, bch_oracle_for, BchSeries};
use crate::kv::operators::{apply_operator, OperatorSpec};
use crate::poly::Poly;
use crate::series::GradedSeries;

/// Which `Ber` factor builds `F_{i,0}` from `a_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// `F_{i,0} = -Ber(-x_i) a_i` for every `i`.
    Uniform,
    /// `F_{i,0} = s_i Ber(s_i x_i) a_i` with `s_i = (-1)^i`, matching the
    /// factor `1 - e^{s_i ad x_i}` of the equation.
    Alternating,
}

/// `s_i = (-1)^i` is negative for odd `i` (1-based).
fn sign_is_negative(i: usize) -> bool {
    i % 2 == 1
}

fn check(i: usize, k: usize) -> Result<Alphabet> {
    if k < 2 || i == 0 || i > k {
        return Err(KvError::OutOfRange(format!("index {i} of {k} letters")));
    }
    Alphabet::standard(k)
}

/// The letters `x_k, …, x_1` of `log(e^{x_k} ⋯ e^{x_1})`.
fn reversed_factors(k: usize) -> Vec<Letter> {
    (0..k as Letter).rev().collect()
}

/// `log(e^{x_k} ⋯ e^{x_1})` through the Eulerian idempotent.
pub fn reversed_bch(k: usize, n: usize) -> Result<BchSeries> {
    let alphabet = check(1, k)?;
    bch_eulerian_for(&alphabet, &reversed_factors(k), n)
}

/// `a_i = Σ_m (m/(m+1)) γ((Ψ_{m+1})_{x_i})` with `Ψ = log(e^{x_k} ⋯ e^{x_1})`
/// built from the Eulerian idempotent; for `k = 2`, `a_1 = a(-x,-y)`.
pub fn multilinear_a(i: usize, k: usize, n: usize) -> Result<GradedSeries> {
    let alphabet = check(i, k)?;
    let psi = reversed_bch(k, n + 1)?;
    let z = (i - 1) as Letter;
    let mut components = vec![Poly::zero(&alphabet)];
    for m in 1..=n {
        let part = psi.component(m + 1).letter_part(z);
        components.push(dynkin(&part).scale(&rat(m as i64, m as i64 + 1)));
    }
    Ok(GradedSeries::from_components(&alphabet, components))
}

pub fn multilinear_f0(
    i: usize,
    k: usize,
    n: usize,
    convention: SignConvention,
) -> Result<GradedSeries> {
    let a = multilinear_a(i, k, n)?;
    let z = (i - 1) as Letter;
    let (negative, flip) = match convention {
        SignConvention::Uniform => (true, true),
        SignConvention::Alternating => (sign_is_negative(i), sign_is_negative(i)),
    };
    let f = apply_operator(&OperatorSpec::ber(z, negative, n), &a)?;
    Ok(if flip { -&f } else { f })
}

pub fn multilinear_particular(
    k: usize,
    n: usize,
    convention: SignConvention,
) -> Result<Vec<GradedSeries>> {
    (1..=k)
        .map(|i| multilinear_f0(i, k, n, convention))
        .collect()
}

/// `Σ_{m≥2} Ψ_m - Σ_i E(s_i x_i) F_i` through degree `n`, where
/// `Ψ = log(e^{x_k} ⋯ e^{x_1})` comes from the exp/log oracle.
pub fn verify_multilinear(k: usize, solutions: &[GradedSeries], n: usize) -> Result<GradedSeries> {
    let alphabet = check(1, k)?;
    if solutions.len() != k {
        return Err(KvError::SizeMismatch {
            expected: k,
            found: solutions.len(),
        });
    }
    let psi = bch_oracle_for(&alphabet, &reversed_factors(k), n)?;
    let mut defect = psi.series().clone();
    defect.set_component(1, Poly::zero(&alphabet));
    for (idx, f) in solutions.iter().enumerate() {
        if n < 1 || f.order() + 1 < n {
            return Err(KvError::OutOfRange(format!(
                "F_{} of order {} checked through {n}",
                idx + 1,
                f.order()
            )));
        }
        let op = OperatorSpec::e(idx as Letter, sign_is_negative(idx + 1), n);
        defect = &defect - &apply_operator(&op, &f.truncate(n - 1))?;
    }
    Ok(defect)
}

/// Per-letter split of `Ψ = log(e^{x_k} ⋯ e^{x_1})`: `Σ_{m≥2} γ(x_i (Ψ_m)_{x_i})`,
/// the target of `E(s_i x_i) F_i`.
pub fn multilinear_split_target(i: usize, k: usize, n: usize) -> Result<GradedSeries> {
    let alphabet = check(i, k)?;
    let psi = bch_oracle_for(&alphabet, &reversed_factors(k), n)?;
    let z = (i - 1) as Letter;
    let components = psi
        .series()
        .components()
        .iter()
        .enumerate()
        .map(|(m, c)| {
            if m < 2 {
                Poly::zero(&alphabet)
            } else {
                dynkin(&c.letter_part(z).prepend_letter(z))
            }
        })
        .collect();
    Ok(GradedSeries::from_components(&alphabet, components))
}

/// `s_i` as used by the equation, for the oracle.
pub fn equation_sign_is_negative(i: usize) -> bool {
    sign_is_negative(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kv::particular::{f0, g0};
    use crate::poly::Substitution;

    #[test]
    fn two_letter_case_reduces_to_kv1() {
        let n = 6;
        let sols = multilinear_particular(2, n, SignConvention::Alternating).unwrap();
        assert_eq!(sols[0], f0(n).unwrap());
        assert_eq!(sols[1], -&g0(n).unwrap());
        assert!(verify_multilinear(2, &sols, n + 1).unwrap().is_zero());
        let a = crate::kv::particular::a_series(n)
            .unwrap()
            .substitute(&Substitution::negate_all(2))
            .unwrap();
        assert_eq!(multilinear_a(1, 2, n).unwrap(), a);
    }

    #[test]
    fn three_letters_alternating_signs() {
        let sols = multilinear_particular(3, 4, SignConvention::Alternating).unwrap();
        assert!(verify_multilinear(3, &sols, 5).unwrap().is_zero());
    }

    #[test]
    fn uniform_signs_fail_for_even_indices() {
        let sols = multilinear_particular(3, 3, SignConvention::Uniform).unwrap();
        let defect = verify_multilinear(3, &sols, 4).unwrap();
        assert!(!defect.is_zero());
        assert_eq!(
            sols[0],
            multilinear_f0(1, 3, 3, SignConvention::Alternating).unwrap()
        );
        assert_eq!(
            sols[2],
            multilinear_f0(3, 3, 3, SignConvention::Alternating).unwrap()
        );
        assert_ne!(
            sols[1],
            multilinear_f0(2, 3, 3, SignConvention::Alternating).unwrap()
        );
    }

    #[test]
    fn zero_tuple_defect_is_the_bch_tail() {
        let a = Alphabet::standard(3).unwrap();
        let zeros = vec![GradedSeries::zero(&a, 3); 3];
        let defect = verify_multilinear(3, &zeros, 4).unwrap();
        let psi = bch_oracle_for(&a, &[2, 1, 0], 4).unwrap();
        assert_eq!(defect.component(2), psi.component(2));
        assert!(!defect.is_zero());
    }

    #[test]
    fn index_checks() {
        assert!(multilinear_f0(0, 3, 2, SignConvention::Uniform).is_err());
        assert!(multilinear_f0(4, 3, 2, SignConvention::Uniform).is_err());
        let a = Alphabet::standard(3).unwrap();
        assert!(verify_multilinear(3, &[GradedSeries::zero(&a, 2)], 3).is_err());
    }
}
