//! Symmetric-group enumeration and descent statistics.

use std::fmt;

use crate::error::{KvError, Result};

/// A bijection of `{1..n}` stored by its images `(σ(1), ..., σ(n))`, with
/// the descent set cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    descents: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(KvError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Self::from_images_unchecked(images))
    }

    fn from_images_unchecked(images: Vec<usize>) -> Self {
        let descents = descent_positions(&images);
        Permutation { images, descents }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_images_unchecked((1..=n).collect())
    }

    /// `ω = (n, n-1, ..., 1)`.
    pub fn reversal(n: usize) -> Self {
        Self::from_images_unchecked((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn descent_set(&self) -> &[usize] {
        &self.descents
    }

    pub fn descent_count(&self) -> usize {
        self.descents.len()
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(KvError::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self::from_images_unchecked(
            other.images.iter().map(|&i| self.images[i - 1]).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (pos, &img) in self.images.iter().enumerate() {
            inv[img - 1] = pos + 1;
        }
        Self::from_images_unchecked(inv)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

fn descent_positions(images: &[usize]) -> Vec<usize> {
    images
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect()
}

/// Number of descents of a raw image slice.
pub fn count_descents(images: &[usize]) -> usize {
    images.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Advances `images` to the next permutation in lexicographic order.
/// Returns `false` (leaving the slice sorted descending) at the end.
pub fn next_lex(images: &mut [usize]) -> bool {
    let n = images.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && images[i - 1] >= images[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while images[j] <= images[i - 1] {
        j -= 1;
    }
    images.swap(i - 1, j);
    images[i..].reverse();
    true
}

/// The permutation of rank `rank` (0-based) in lexicographic order of `S_n`.
pub fn unrank_lex(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut fact: Vec<u64> = vec![1; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as u64;
    }
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let idx = (rank / fact[i]) as usize;
        rank %= fact[i];
        out.push(pool.remove(idx));
    }
    out
}

pub fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic stream over a contiguous rank range of `S_n`.
#[derive(Debug, Clone)]
pub struct LexPermutations {
    current: Vec<usize>,
    remaining: u64,
}

impl LexPermutations {
    pub fn range(n: usize, start: u64, count: u64) -> Self {
        let total = factorial_u64(n);
        let start = start.min(total);
        LexPermutations {
            current: unrank_lex(n, start % total),
            remaining: count.min(total - start),
        }
    }

    /// Calls `f` on the image slice of every permutation, without allocating.
    pub fn for_each_raw<F: FnMut(&[usize])>(mut self, mut f: F) {
        while self.remaining > 0 {
            f(&self.current);
            self.remaining -= 1;
            if self.remaining > 0 {
                next_lex(&mut self.current);
            }
        }
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let out = Permutation::from_images_unchecked(self.current.clone());
        self.remaining -= 1;
        if self.remaining > 0 {
            next_lex(&mut self.current);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// All of `S_n` in lexicographic order of images.
pub fn enumerate_sn(n: usize) -> Result<LexPermutations> {
    if n == 0 {
        return Err(KvError::OutOfRange("S_0".into()));
    }
    Ok(LexPermutations::range(n, 0, factorial_u64(n)))
}

/// Splits `S_n` into at most `chunks` contiguous lexicographic ranges.
pub fn split_sn(n: usize, chunks: usize) -> Vec<LexPermutations> {
    let total = factorial_u64(n);
    let chunks = (chunks.max(1) as u64).min(total);
    let size = total.div_ceil(chunks);
    (0..chunks)
        .map(|c| LexPermutations::range(n, c * size, size))
        .filter(|r| r.remaining > 0)
        .collect()
}

/// `D_{1..k}`: permutations of `S_n` whose descent set is exactly `{1, ..., k}`,
/// in lexicographic order. `k = 0` gives the identity alone.
///
/// Such a permutation decreases on positions `1..=k+1` and increases from
/// `k+1` on, so `σ(k+1) = 1` and it is fixed by the value set of the first
/// `k` positions.
pub fn enumerate_descent_class(n: usize, k: usize) -> Result<Vec<Permutation>> {
    if n == 0 || k >= n {
        return Err(KvError::OutOfRange(format!(
            "descent class {{1..{k}}} in S_{n}"
        )));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    choose(2, n, k, &mut chosen, &mut |head| {
        let mut images: Vec<usize> = head.iter().rev().copied().collect();
        images.push(1);
        images.extend((2..=n).filter(|v| !head.contains(v)));
        out.push(Permutation::from_images_unchecked(images));
    });
    out.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(out)
}

fn choose<F: FnMut(&[usize])>(from: usize, to: usize, k: usize, acc: &mut Vec<usize>, f: &mut F) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for v in from..=to {
        acc.push(v);
        choose(v + 1, to, k, acc, f);
        acc.pop();
    }
}
