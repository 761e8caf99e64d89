//! The Dynkin and Eulerian idempotents of `T(V)`, kernel-of-γ generators,
//! and the Ψ maps.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;
use rayon::prelude::*;

use crate::alphabet::{Alphabet, Letter};
use crate::arith::{binomial, int, Rational};
use crate::coshuffle::ConvolutionPowers;
use crate::error::{KvError, Result};
use crate::permutation::{count_descents, enumerate_descent_class, split_sn};
use crate::poly::Poly;
use crate::word::Word;

/// Largest `k^n` for which the Eulerian permutation sum tallies into a dense
/// table indexed by the permuted word.
const DENSE_LIMIT: usize = 1 << 22;

/// Dynkin idempotent: `v_1…v_n ↦ (1/n)[v_1,[v_2,[…[v_{n-1},v_n]…]]]`, zero on
/// constants.
pub fn dynkin(p: &Poly) -> Poly {
    let mut out = Poly::zero(p.alphabet());
    for (w, c) in p.terms() {
        let n = w.degree();
        if n == 0 {
            continue;
        }
        let scale = c / int(n as i64);
        for (word, sign) in right_nested(w.letters()) {
            out.add_term(word, if sign { -&scale } else { scale.clone() });
        }
    }
    out
}

/// Terms of the right-nested bracket `[a_1,[a_2,…,a_n]]` as `(word, negative)`.
///
/// Each `a_i` with `i < n` lands left of `a_n` (in increasing order) or right
/// of it (in decreasing order); every right placement flips the sign.
fn right_nested(letters: &[Letter]) -> Vec<(Word, bool)> {
    let n = letters.len();
    let last = letters[n - 1];
    (0u64..1 << (n - 1))
        .map(|right| {
            let mut word = Vec::with_capacity(n);
            word.extend(
                (0..n - 1)
                    .filter(|i| right >> i & 1 == 0)
                    .map(|i| letters[i]),
            );
            word.push(last);
            word.extend(
                (0..n - 1)
                    .rev()
                    .filter(|i| right >> i & 1 == 1)
                    .map(|i| letters[i]),
            );
            (Word::new(word), right.count_ones() % 2 == 1)
        })
        .collect()
}

/// Dynkin idempotent through descent classes:
/// `γ_n(x_1…x_n) = ((-1)^{n-1}/n) Σ_k (-1)^k Σ_{σ∈D_{1..k}} (x_n…x_1)^σ`.
pub fn dynkin_via_permutations(p: &Poly) -> Poly {
    let mut out = Poly::zero(p.alphabet());
    for (w, c) in p.terms() {
        let n = w.degree();
        if n == 0 {
            continue;
        }
        let base = c / int(n as i64);
        let reversed = w.reversed();
        for k in 0..n {
            let coeff = if (n - 1 + k) % 2 == 0 {
                base.clone()
            } else {
                -&base
            };
            for sigma in enumerate_descent_class(n, k).expect("k < n") {
                out.add_term(reversed.permute_by_images(sigma.images()), coeff.clone());
            }
        }
    }
    out
}

/// Eulerian idempotent `e_n = (1/n) Σ_{σ∈S_n} (-1)^{d(σ)} C(n-1,d(σ))^{-1} (·)^σ`.
///
/// The permutation sum is split into lexicographic chunks reduced in parallel;
/// only integer tallies per `(permuted word, descent count)` cross threads.
pub fn eulerian(p: &Poly) -> Poly {
    let mut out = Poly::zero(p.alphabet());
    for (w, c) in p.terms() {
        out.add_scaled(&eulerian_word(p.alphabet().len(), w, p), c);
    }
    out
}

fn eulerian_word(k: usize, w: &Word, like: &Poly) -> Poly {
    let n = w.degree();
    let mut out = Poly::zero(like.alphabet());
    if n == 0 {
        return out;
    }
    let weights = descent_weights(n);
    let mut emit = |word: Word, tally: &[i64]| out.add_term(word, weigh(tally, &weights));
    let chunks = split_sn(n, rayon::current_num_threads() * 4);
    let letters = w.letters();
    match k.checked_pow(n as u32).filter(|&size| size <= DENSE_LIMIT) {
        Some(size) => {
            let tally = chunks
                .into_par_iter()
                .fold(
                    || vec![0i64; size * n],
                    |mut t, chunk| {
                        chunk.for_each_raw(|images| {
                            let code = images
                                .iter()
                                .fold(0usize, |acc, &i| acc * k + letters[i - 1] as usize);
                            t[code * n + count_descents(images)] += 1;
                        });
                        t
                    },
                )
                .reduce(|| vec![0i64; size * n], merge_dense);
            for code in 0..size {
                let row = &tally[code * n..(code + 1) * n];
                if row.iter().any(|&t| t != 0) {
                    emit(decode(code, k, n), row);
                }
            }
        }
        None => {
            let tally = chunks
                .into_par_iter()
                .fold(
                    HashMap::new,
                    |mut t: HashMap<Vec<Letter>, Vec<i64>>, chunk| {
                        chunk.for_each_raw(|images| {
                            let key: Vec<Letter> = images.iter().map(|&i| letters[i - 1]).collect();
                            t.entry(key).or_insert_with(|| vec![0; n])[count_descents(images)] += 1;
                        });
                        t
                    },
                )
                .reduce(HashMap::new, |mut a, b| {
                    for (key, row) in b {
                        let acc = a.entry(key).or_insert_with(|| vec![0; n]);
                        acc.iter_mut().zip(row).for_each(|(x, y)| *x += y);
                    }
                    a
                });
            for (key, row) in tally {
                emit(Word::new(key), &row);
            }
        }
    }
    out
}

/// `(1/n)(-1)^d C(n-1,d)^{-1}` for `d = 0..n`.
fn descent_weights(n: usize) -> Vec<Rational> {
    (0..n)
        .map(|d| {
            let b = Rational::from_integer(binomial(n as u64 - 1, d as u64).expect("d < n"));
            let sign = if d % 2 == 0 { int(1) } else { int(-1) };
            sign / b / int(n as i64)
        })
        .collect()
}

fn weigh(tally: &[i64], weights: &[Rational]) -> Rational {
    tally
        .iter()
        .zip(weights)
        .filter(|(t, _)| **t != 0)
        .map(|(t, w)| w * int(*t))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `e_n(x^i y^{n-i})` for `i = 0..=n` over `{x, y}`, from a single pass over
/// `S_n`, memoised per degree.
///
/// For each `σ`, the permuted word of `x^i y^{n-i}` has `y` exactly at the
/// positions `p` with `σ(p) > i`, so its bitmask shrinks one position at a
/// time as `i` grows.
pub fn eulerian_power_pairs(n: usize) -> Arc<Vec<Poly>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<Poly>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().expect("eulerian cache poisoned").get(&n) {
        return v.clone();
    }
    let computed = Arc::new(compute_power_pairs(n));
    cache
        .write()
        .expect("eulerian cache poisoned")
        .entry(n)
        .or_insert(computed)
        .clone()
}

fn compute_power_pairs(n: usize) -> Vec<Poly> {
    let alphabet = Alphabet::xy();
    if n == 0 {
        return vec![Poly::zero(&alphabet)];
    }
    assert!(n < 26, "degree {n} is beyond the permutation-sum budget");
    let width = 1usize << n;
    let tally = split_sn(n, rayon::current_num_threads() * 4)
        .into_par_iter()
        .fold(
            || vec![0i64; (n + 1) * width * n],
            |mut t, chunk| {
                let mut position = vec![0usize; n + 1];
                chunk.for_each_raw(|images| {
                    let d = count_descents(images);
                    for (p, &v) in images.iter().enumerate() {
                        position[v] = p;
                    }
                    let mut code = width - 1;
                    t[code * n + d] += 1;
                    for (i, &p) in position.iter().enumerate().skip(1) {
                        code &= !(1 << (n - 1 - p));
                        t[(i * width + code) * n + d] += 1;
                    }
                });
                t
            },
        )
        .reduce(|| vec![0i64; (n + 1) * width * n], merge_dense);
    let weights = descent_weights(n);
    (0..=n)
        .map(|i| {
            let mut out = Poly::zero(&alphabet);
            for code in 0..width {
                let row = &tally[(i * width + code) * n..(i * width + code + 1) * n];
                if row.iter().any(|&t| t != 0) {
                    out.add_term(decode(code, 2, n), weigh(row, &weights));
                }
            }
            out
        })
        .collect()
}

fn merge_dense(mut a: Vec<i64>, b: Vec<i64>) -> Vec<i64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

fn decode(mut code: usize, k: usize, n: usize) -> Word {
    let mut letters = vec![0 as Letter; n];
    for slot in letters.iter_mut().rev() {
        *slot = (code % k) as Letter;
        code /= k;
    }
    Word::new(letters)
}

/// `e = log⋆(Id) = Σ_k (-1)^{k-1} J^{⋆k}/k`, with `J^{⋆k}` vanishing above the
/// word length.
pub fn eulerian_via_convolution(p: &Poly) -> Poly {
    let mut powers = ConvolutionPowers::new(p.alphabet());
    let mut out = Poly::zero(p.alphabet());
    for (w, c) in p.terms() {
        for k in 1..=w.degree() {
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            out.add_scaled(&powers.j_power(w, k), &(c * sign / int(k as i64)));
        }
    }
    out
}

/// `w - γ(w)`, which spans `Ker γ` in degree `n ≥ 2` as `w` ranges over words.
pub fn kernel_generator(w: &Word, like: &Poly) -> Result<Poly> {
    if w.is_empty() {
        return Err(KvError::OutOfRange(
            "kernel generator of the empty word".into(),
        ));
    }
    let word = Poly::word(like.alphabet(), w.clone());
    Ok(&word - &dynkin(&word))
}

/// `(n-1)w + Σ_{k=0}^{n-2} (-1)^{n+k} Σ_{σ∈D_{1..k}} (x_n…x_1)^σ`, equal to
/// `n(w - γ(w))`.
pub fn kernel_generator_explicit(w: &Word, like: &Poly) -> Result<Poly> {
    kernel_descent_sum(w, like, 0)
}

/// The descent sum above with the inner index starting at `first_k`.
pub fn kernel_descent_sum(w: &Word, like: &Poly, first_k: usize) -> Result<Poly> {
    let n = w.degree();
    if n == 0 {
        return Err(KvError::OutOfRange(
            "kernel generator of the empty word".into(),
        ));
    }
    let mut out = Poly::monomial(like.alphabet(), w.clone(), int(n as i64 - 1));
    let reversed = w.reversed();
    for k in first_k..n.saturating_sub(1) {
        let sign = if (n + k).is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        for sigma in enumerate_descent_class(n, k)? {
            out.add_term(reversed.permute_by_images(sigma.images()), sign.clone());
        }
    }
    Ok(out)
}

/// `γ(a)·a`, an element of `Ker γ` when `a` has no constant term.
pub fn patras_reutenauer_generator(a: &Poly) -> Poly {
    &dynkin(a) * a
}

/// `Ψ_z(p) = γ((p - γ(p))_z)`.
pub fn psi(p: &Poly, z: Letter) -> Poly {
    dynkin(&(p - &dynkin(p)).letter_part(z))
}
