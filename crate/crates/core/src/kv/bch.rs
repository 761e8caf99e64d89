use num_traits::One;

use crate::alphabet::{Alphabet, Letter};
use crate::arith::{inverse_factorial, Rational};
use crate::error::{KvError, Result};
use crate::idempotents::{eulerian, eulerian_power_pairs};
use crate::lyndon::to_lie_coordinates;
use crate::poly::{Poly, Substitution};
use crate::series::GradedSeries;
use crate::word::Word;

/// `log(e^{z_1} ⋯ e^{z_r})` truncated at a degree, tagged with the letters
/// `z_1, …, z_r` of the exponentials in product order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BchSeries {
    series: GradedSeries,
    factors: Vec<Letter>,
}

impl BchSeries {
    pub fn series(&self) -> &GradedSeries {
        &self.series
    }

    /// Letters of the exponentials, left to right: `[x, y]` for `Φ(x,y)`.
    pub fn factors(&self) -> &[Letter] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn component(&self, n: usize) -> &Poly {
        self.series.component(n)
    }

    /// Relabels letters; the tag follows the substitution.
    pub fn relabel(&self, images: &[Letter]) -> Result<BchSeries> {
        let sub = images
            .iter()
            .enumerate()
            .fold(Substitution::new(images.len()), |s, (from, &to)| {
                s.with(from as Letter, to, false)
            });
        Ok(BchSeries {
            series: self.series.substitute(&sub)?,
            factors: self.factors.iter().map(|&l| images[l as usize]).collect(),
        })
    }

    /// `Φ(y,x)` from `Φ(x,y)` by exchanging the two letters.
    pub fn swapped(&self) -> Result<BchSeries> {
        if self.series.alphabet().len() != 2 {
            return Err(KvError::InvalidAlphabet("swap needs two letters".into()));
        }
        self.relabel(&[1, 0])
    }

    /// Fails with the first non-Lie component.
    pub fn certify_lie(&self) -> Result<()> {
        for c in self.series.components() {
            to_lie_coordinates(c)?;
        }
        Ok(())
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(KvError::OutOfRange(
            "BCH truncation degree must be at least 1".into(),
        ));
    }
    Ok(())
}

/// `Φ(x,y) = Σ_n Σ_{i+j=n} e_n(x^i y^j)/(i! j!)`.
pub fn bch_eulerian(n: usize) -> Result<BchSeries> {
    bch_eulerian_for(&Alphabet::xy(), &[0, 1], n)
}

/// `log(exp(x)·exp(y))` by series arithmetic.
pub fn bch_oracle(n: usize) -> Result<BchSeries> {
    bch_oracle_for(&Alphabet::xy(), &[0, 1], n)
}

/// `Φ(x_1, …, x_k) = log(e^{x_1} ⋯ e^{x_k})` through the Eulerian idempotent.
pub fn multilinear_bch(k: usize, n: usize) -> Result<BchSeries> {
    if k < 2 {
        return Err(KvError::OutOfRange(format!(
            "multilinear BCH needs at least 2 letters, got {k}"
        )));
    }
    let factors: Vec<Letter> = (0..k as Letter).collect();
    bch_eulerian_for(&Alphabet::standard(k)?, &factors, n)
}

/// `Φ_m = Σ_{i_1+…+i_r=m} e_m(z_1^{i_1} ⋯ z_r^{i_r}) / (i_1! ⋯ i_r!)` for the
/// given distinct factor letters.
pub fn bch_eulerian_for(alphabet: &Alphabet, factors: &[Letter], n: usize) -> Result<BchSeries> {
    check_degree(n)?;
    check_factors(alphabet, factors)?;
    let mut components = vec![Poly::zero(alphabet)];
    for m in 1..=n {
        let mut phi = Poly::zero(alphabet);
        if alphabet.len() == 2 && factors.len() == 2 {
            // Two letters: the shared table for e_m(x^i y^j), relabelled.
            let table = eulerian_power_pairs(m);
            let sub = Substitution::new(2)
                .with(0, factors[0], false)
                .with(1, factors[1], false);
            for (i, e) in table.iter().enumerate() {
                let c = inverse_factorial(i as u64) * inverse_factorial((m - i) as u64);
                phi.add_scaled(&e.substitute(&sub)?, &c);
            }
        } else {
            for parts in compositions(m, factors.len()) {
                let mut letters = Vec::with_capacity(m);
                let mut c = Rational::one();
                for (&z, &count) in factors.iter().zip(&parts) {
                    letters.extend(std::iter::repeat_n(z, count));
                    c *= inverse_factorial(count as u64);
                }
                let word = Poly::word(alphabet, Word::new(letters));
                phi.add_scaled(&eulerian(&word), &c);
            }
        }
        components.push(phi);
    }
    Ok(BchSeries {
        series: GradedSeries::from_components(alphabet, components),
        factors: factors.to_vec(),
    })
}

/// `log(e^{z_1} ⋯ e^{z_r})` by truncated exp/log.
pub fn bch_oracle_for(alphabet: &Alphabet, factors: &[Letter], n: usize) -> Result<BchSeries> {
    check_degree(n)?;
    check_factors(alphabet, factors)?;
    let mut product = GradedSeries::from_poly(&Poly::one(alphabet), n);
    for &z in factors {
        product = product.mul(&GradedSeries::from_poly(&Poly::letter(alphabet, z), n).exp()?);
    }
    Ok(BchSeries {
        series: product.log()?,
        factors: factors.to_vec(),
    })
}

fn check_factors(alphabet: &Alphabet, factors: &[Letter]) -> Result<()> {
    let mut seen = vec![false; alphabet.len()];
    for &z in factors {
        match seen.get_mut(z as usize) {
            Some(s) if !*s => *s = true,
            _ => {
                return Err(KvError::OutOfRange(format!(
                    "factor letters {factors:?} for {alphabet}"
                )))
            }
        }
    }
    Ok(())
}

/// All `r`-tuples of non-negative integers summing to `m`, lexicographically.
pub fn compositions(m: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    if r == 1 {
        return vec![vec![m]];
    }
    (0..=m)
        .flat_map(|first| {
            compositions(m - first, r - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}
