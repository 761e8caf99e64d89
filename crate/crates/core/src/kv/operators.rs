use crate::alphabet::Letter;
use crate::arith::{bernoulli, int, inverse_factorial, Rational};
use crate::error::{KvError, Result};
use crate::poly::Poly;
use crate::series::GradedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `E(z) = exp(ad z) - 1`.
    E,
    /// `Ber(z) = Σ_k B_k ad(z)^k / k!`.
    Ber,
    Ad,
}

/// A series in `ad(±z)` applied to graded series up to `order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    pub base: Letter,
    pub negative: bool,
    pub kind: OperatorKind,
    pub order: usize,
}

impl OperatorSpec {
    pub fn e(base: Letter, negative: bool, order: usize) -> Self {
        OperatorSpec {
            base,
            negative,
            kind: OperatorKind::E,
            order,
        }
    }

    pub fn ber(base: Letter, negative: bool, order: usize) -> Self {
        OperatorSpec {
            base,
            negative,
            kind: OperatorKind::Ber,
            order,
        }
    }

    pub fn ad(base: Letter, negative: bool, order: usize) -> Self {
        OperatorSpec {
            base,
            negative,
            kind: OperatorKind::Ad,
            order,
        }
    }

    /// Coefficient of `ad(±z)^k`, sign of the base included.
    fn coefficient(&self, k: usize) -> Rational {
        let c = match self.kind {
            OperatorKind::E if k >= 1 => inverse_factorial(k as u64),
            OperatorKind::Ber => bernoulli(k) * inverse_factorial(k as u64),
            OperatorKind::Ad if k == 1 => int(1),
            _ => int(0),
        };
        if self.negative && k % 2 == 1 {
            -c
        } else {
            c
        }
    }

    fn min_power(&self) -> usize {
        match self.kind {
            OperatorKind::Ber => 0,
            _ => 1,
        }
    }
}

/// Applies the operator degree by degree; the result has the operator's
/// order, which must not exceed what the input determines.
pub fn apply_operator(op: &OperatorSpec, s: &GradedSeries) -> Result<GradedSeries> {
    if op.order > s.order() + op.min_power() {
        return Err(KvError::OutOfRange(format!(
            "operator order {} exceeds what a series of order {} determines",
            op.order,
            s.order()
        )));
    }
    let alphabet = s.alphabet();
    let mut out: Vec<Poly> = vec![Poly::zero(alphabet); op.order + 1];
    for (d, component) in s.components().iter().enumerate().take(op.order + 1) {
        let mut power = component.clone();
        for k in 0..=op.order - d {
            if power.is_zero() {
                break;
            }
            let c = op.coefficient(k);
            if k >= op.min_power() && c != int(0) {
                out[d + k].add_scaled(&power, &c);
            }
            if op.kind == OperatorKind::Ad && k == 1 {
                break;
            }
            power = power.ad_letter(op.base);
        }
    }
    Ok(GradedSeries::from_components(alphabet, out))
}
