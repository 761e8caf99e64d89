//! Exact rationals and the integer sequences the formulas consume.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{KvError, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"`, `"-a/b"`, `"+a"` or `"a"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |message: &str| KvError::Parse {
        position: 0,
        message: format!("{message}: `{text}`"),
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad("invalid numerator"))?;
    let den: BigInt = match den {
        Some(d) => {
            let d = d.trim();
            if d.starts_with(['+', '-']) {
                return Err(bad("signed denominator"));
            }
            d.parse().map_err(|_| bad("invalid denominator"))?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// `"a/b"`, or `"a"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return Err(KvError::OutOfRange(format!("binomial({n}, {k})")));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

pub fn moebius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(KvError::OutOfRange("moebius(0)".into()));
    }
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

pub fn inverse_factorial(n: u64) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

/// Bernoulli numbers in the `t/(e^t - 1)` convention (`B_1 = -1/2`), filled by
/// the recurrence `sum_{j<=m} C(m+1, j) B_j = 0`.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        BernoulliCache {
            values: vec![Rational::one()],
        }
    }
}

impl BernoulliCache {
    pub fn up_to(k: usize) -> Self {
        let mut cache = BernoulliCache::default();
        cache.extend_to(k);
        cache
    }

    pub fn extend_to(&mut self, k: usize) {
        while self.values.len() <= k {
            let m = self.values.len() as u64;
            let mut acc = Rational::zero();
            for (j, b) in self.values.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = binomial(m + 1, j as u64).expect("j <= m");
                acc += b * Rational::from_integer(c);
            }
            let next = -acc / int(m as i64 + 1);
            self.values.push(next);
        }
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.values.get(k)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

static BERNOULLI: RwLock<Option<BernoulliCache>> = RwLock::new(None);

/// `B_k` with `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> Rational {
    if let Some(cache) = BERNOULLI.read().unwrap().as_ref() {
        if let Some(b) = cache.get(k) {
            return b.clone();
        }
    }
    let mut guard = BERNOULLI.write().unwrap();
    let cache = guard.get_or_insert_with(BernoulliCache::default);
    cache.extend_to(k);
    cache.get(k).cloned().expect("extended")
}
