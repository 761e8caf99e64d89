//! Independent linear-algebra oracles: degree-wise solves and nullities.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter};
use crate::arith::{int, Rational};
use crate::error::{KvError, Result};
use crate::idempotents::kernel_generator;
use crate::kv::bch::bch_oracle;
use crate::kv::homogeneous::{homogeneous_defect, homogeneous_solution};
use crate::kv::operators::{apply_operator, OperatorSpec};
use crate::kv::particular::{phi_split, KvSolutionPair};
use crate::linalg::Matrix;
use crate::lyndon::{lyndon_basis, to_lie_coordinates};
use crate::poly::{Poly, Substitution};
use crate::series::GradedSeries;
use crate::word::Word;

/// Index of every word of the given degrees.
fn word_index(k: usize, degrees: std::ops::RangeInclusive<usize>) -> BTreeMap<Word, usize> {
    degrees
        .flat_map(|d| Word::all_of_degree(k, d))
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect()
}

fn word_vector(p: &Poly, index: &BTreeMap<Word, usize>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); index.len()];
    for (w, c) in p.terms() {
        v[index[w]] = c.clone();
    }
    v
}

/// Solves `E(±z)F = T` for a Lie series `F` with components `1..=n`,
/// degree by degree in Lyndon coordinates. Free coordinates are set to zero,
/// which at degree 1 drops the `𝕂z` ambiguity.
pub fn solve_operator_equation(
    z: Letter,
    negative: bool,
    target: &GradedSeries,
    n: usize,
) -> Result<GradedSeries> {
    let alphabet = target.alphabet().clone();
    if target.order() < n + 1 {
        return Err(KvError::OutOfRange(format!(
            "target of order {} for a solve through {n}",
            target.order()
        )));
    }
    let k = alphabet.len();
    let mut f = GradedSeries::zero(&alphabet, n);
    for m in 1..=n {
        // Degree m+1: ±ad(z)F_m = T_{m+1} - (E(±z) applied to F_1..F_{m-1}).
        let known = apply_operator(&OperatorSpec::e(z, negative, m + 1), &f.truncate(m))?;
        let rhs = target.component(m + 1) - known.component(m + 1);
        let basis = lyndon_basis(&alphabet, m)?;
        let index = word_index(k, m + 1..=m + 1);
        let sign = if negative { int(-1) } else { int(1) };
        let columns: Vec<Vec<Rational>> = basis
            .bracketings
            .iter()
            .map(|b| word_vector(&b.ad_letter(z).scale(&sign), &index))
            .collect();
        let matrix = Matrix::from_columns(index.len(), &columns);
        let solution = matrix
            .solve(&word_vector(&rhs, &index))
            .ok_or(KvError::Inconsistent(m + 1))?;
        let mut component = Poly::zero(&alphabet);
        for (b, c) in basis.bracketings.iter().zip(&solution) {
            component.add_scaled(b, c);
        }
        f.set_component(m, component);
    }
    Ok(f)
}

/// Degree-`n` component of the solution of `E(-x)F = Φ⁻(y,x)` with no `x`
/// coordinate, `Φ` taken from the exp/log oracle.
pub fn solve_split_linear(n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(KvError::OutOfRange(
            "split solve needs degree at least 1".into(),
        ));
    }
    let (_, minus) = phi_split(&bch_oracle(n + 1)?)?;
    let target = minus.substitute(&Substitution::swap())?;
    Ok(solve_operator_equation(0, true, &target, n)?
        .component(n)
        .clone())
}

/// Nullity of `E(x)` on `Lie(V)_d` over `{x, y}`.
pub fn e_nullity_on_lie(d: usize) -> Result<usize> {
    let alphabet = Alphabet::xy();
    let basis = lyndon_basis(&alphabet, d)?;
    let index = word_index(2, d + 1..=d + 3);
    let columns: Vec<Vec<Rational>> = basis
        .bracketings
        .iter()
        .map(|b| {
            let s = GradedSeries::from_poly(b, d);
            apply_operator(&OperatorSpec::e(0, false, d + 3), &s.truncate(d + 2))
                .map(|e| word_vector(&e.to_poly(), &index))
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(index.len(), &columns).nullity())
}

/// Nullity of `ad(x)` on the degree-`d` part of `T(V)` over `{x, y}`.
pub fn ad_nullity_on_words(d: usize) -> usize {
    let alphabet = Alphabet::xy();
    let index = word_index(2, d + 1..=d + 1);
    let columns: Vec<Vec<Rational>> = Word::all_of_degree(2, d)
        .into_iter()
        .map(|w| word_vector(&Poly::word(&alphabet, w).ad_letter(0), &index))
        .collect();
    Matrix::from_columns(index.len(), &columns).nullity()
}

/// Coordinates of `(F_1..F_n, G_1..G_n)` in the Lyndon bases.
fn pair_vector(pair: &KvSolutionPair, n: usize) -> Result<Vec<Rational>> {
    let alphabet = Alphabet::xy();
    let mut v = Vec::new();
    for s in [&pair.f, &pair.g] {
        for d in 1..=n {
            let basis = lyndon_basis(&alphabet, d)?;
            v.extend(to_lie_coordinates(s.component(d))?.dense(&basis));
        }
    }
    Ok(v)
}

/// Dimension of the Lie pairs `(F, G)` with components `1..=n` solving
/// `E(-x)F = E(y)G` through degree `n + 1`, by a nullspace computation.
pub fn homogeneous_dimension_generic(n: usize) -> Result<usize> {
    let alphabet = Alphabet::xy();
    let index = word_index(2, 2..=n + 1);
    let mut columns = Vec::new();
    for side in 0..2 {
        for d in 1..=n {
            for b in &lyndon_basis(&alphabet, d)?.bracketings {
                let unit = GradedSeries::from_poly(b, n);
                let zero = GradedSeries::zero(&alphabet, n);
                let pair = if side == 0 {
                    KvSolutionPair::new(unit, zero)
                } else {
                    KvSolutionPair::new(zero, unit)
                };
                columns.push(word_vector(
                    &homogeneous_defect(&pair, n + 1)?.to_poly(),
                    &index,
                ));
            }
        }
    }
    Ok(Matrix::from_columns(index.len(), &columns).nullity())
}

/// Dimension of the span of truncated `homogeneous_solution(w - γ(w))` over
/// all words `w` of degree `2..=n+1`, together with `(x, 0)` and `(0, y)`.
pub fn homogeneous_dimension_parameterized(n: usize) -> Result<usize> {
    let alphabet = Alphabet::xy();
    let zero = int(0);
    let mut columns = vec![
        pair_vector(
            &homogeneous_solution(&Poly::zero(&alphabet), &int(1), &zero, n)?,
            n,
        )?,
        pair_vector(
            &homogeneous_solution(&Poly::zero(&alphabet), &zero, &int(1), n)?,
            n,
        )?,
    ];
    for d in 2..=n + 1 {
        for w in Word::all_of_degree(2, d) {
            let p = kernel_generator(&w, &Poly::zero(&alphabet))?;
            let pair = homogeneous_solution(&p, &zero, &zero, n)?;
            columns.push(pair_vector(&pair, n)?);
        }
    }
    let rows = columns[0].len();
    Ok(Matrix::from_columns(rows, &columns).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kv::particular::f0;
    use crate::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(&Alphabet::xy(), s).unwrap()
    }

    #[test]
    fn split_solve_examples() {
        assert_eq!(solve_split_linear(1).unwrap(), p("1/4*y"));
        assert_eq!(solve_split_linear(2).unwrap(), p("1/24*xy - 1/24*yx"));
        let f = f0(5).unwrap();
        for n in 2..=5 {
            assert_eq!(solve_split_linear(n).unwrap(), *f.component(n));
        }
    }

    #[test]
    fn nullities() {
        assert_eq!(e_nullity_on_lie(1).unwrap(), 1);
        for d in 2..=5 {
            assert_eq!(e_nullity_on_lie(d).unwrap(), 0);
        }
        for d in 0..=6 {
            assert_eq!(ad_nullity_on_words(d), 1);
        }
    }

    #[test]
    fn homogeneous_dimensions_agree() {
        for n in 1..=3 {
            assert_eq!(
                homogeneous_dimension_generic(n).unwrap(),
                homogeneous_dimension_parameterized(n).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn multilinear_signs_from_the_split_solve() {
        use crate::kv::multilinear::{
            equation_sign_is_negative, multilinear_f0, multilinear_split_target, SignConvention,
        };
        let (k, n) = (3, 4);
        for i in 1..=k {
            let z = (i - 1) as Letter;
            let target = multilinear_split_target(i, k, n + 1).unwrap();
            let solved =
                solve_operator_equation(z, equation_sign_is_negative(i), &target, n).unwrap();
            let formula = multilinear_f0(i, k, n, SignConvention::Alternating).unwrap();
            let diff = &formula - &solved;
            assert!(diff
                .component(1)
                .terms()
                .all(|(w, _)| *w == Word::letter(z)));
            for d in 2..=n {
                assert!(diff.component(d).is_zero(), "i={i}, degree {d}");
            }
            let uniform = multilinear_f0(i, k, n, SignConvention::Uniform).unwrap();
            assert_eq!(uniform == formula, i % 2 == 1);
        }
    }
}
