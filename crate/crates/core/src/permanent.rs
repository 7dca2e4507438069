//! Exact permanents over any [`Ring`].
//!
//! Two routes: the defining n!-term expansion, and Ryser's inclusion-exclusion
//! formula walked in binary-reflected Gray-code order so each subset step
//! costs one row-sum update per row.

use std::thread;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::guards::{check, Config, Guards};
use crate::ring::Ring;

/// Square matrix with entries from a single ring instance, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<R> {
    n: usize,
    entries: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn new(n: usize, entries: Vec<R>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadMatrix("dimension 0".into()));
        }
        if entries.len() != n * n {
            return Err(Error::BadMatrix(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().position(|e| !e.compatible(&entries[0])) {
            return Err(Error::BadMatrix(format!(
                "entry ({}, {}) comes from a different ring",
                bad / n,
                bad % n
            )));
        }
        Ok(RingMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadMatrix("rows of unequal length".into()));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::new(n, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Apply an entrywise map (typically a ring homomorphism).
    pub fn try_map<S: Ring>(&self, f: impl FnMut(&R) -> Result<S>) -> Result<RingMatrix<S>> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        RingMatrix::new(self.n, entries)
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.n, |i, j| self.get(perm[i], j).clone()).expect("same shape")
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, perm[j]).clone()).expect("same shape")
    }

    pub fn scale_row(&self, row: usize, k: &BigInt) -> Self {
        Self::from_fn(self.n, |i, j| {
            let e = self.get(i, j);
            if i == row {
                e.scaled(k)
            } else {
                e.clone()
            }
        })
        .expect("same shape")
    }
}

/// Advance `xs` to the next permutation in lexicographic order.
/// Returns `false` (leaving `xs` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Σ_σ Π_i a_{iσ(i)} over all n! permutations in lexicographic order.
pub fn permanent_naive<R: Ring>(m: &RingMatrix<R>, guards: &Guards) -> Result<R> {
    let n = m.dim();
    check("max-naive", n as u128, guards.max_naive as u128)?;
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut acc = m.get(0, 0).zero_like();
    loop {
        let mut term = m.get(0, sigma[0]).clone();
        for (i, &s) in sigma.iter().enumerate().skip(1) {
            term = term.product(m.get(i, s));
        }
        acc.add_in_place(&term);
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(acc)
}

#[inline]
fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

/// Ryser's formula `Σ_{∅≠S⊆[n]} (−1)^{n−|S|} Π_i Σ_{j∈S} a_ij`.
pub fn permanent_ryser<R: Ring>(m: &RingMatrix<R>, cfg: &Config) -> Result<R> {
    ryser_fold(m, cfg, |sums: &[R]| {
        let mut it = sums.iter();
        let first = it.next().expect("non-empty matrix").clone();
        it.fold(first, |acc, s| acc.product(s))
    })
}

/// Ryser's subset sum with the row-sum product replaced by `term`.
///
/// `term` must be additive-compatible with the product it replaces for the
/// result to mean anything; any linear functional of the product qualifies,
/// which is how constant terms are read off without forming full products.
///
/// Subsets `gray(1) … gray(2^n − 1)` are split into contiguous ranges, one per
/// worker. Each worker seeds its row sums directly at its first subset and
/// walks the rest by single-column updates; partial sums are combined in
/// ascending range order.
pub fn ryser_fold<R, T, F>(m: &RingMatrix<R>, cfg: &Config, term: F) -> Result<T>
where
    R: Ring,
    T: Ring,
    F: Fn(&[R]) -> T + Sync,
{
    let n = m.dim();
    check("max-ryser", n as u128, cfg.guards.max_ryser as u128)?;
    let total = (1u64 << n) - 1;
    let workers = (cfg.workers() as u64).min(total).max(1);
    let ranges: Vec<(u64, u64)> = (0..workers)
        .map(|w| (1 + total * w / workers, 1 + total * (w + 1) / workers))
        .collect();

    let run = |(start, end): (u64, u64)| -> Option<T> {
        if start >= end {
            return None;
        }
        let zero = m.get(0, 0).zero_like();
        let mut sums = vec![zero; n];
        let seed = gray(start);
        for j in 0..n {
            if seed >> j & 1 == 1 {
                for (i, s) in sums.iter_mut().enumerate() {
                    s.add_in_place(m.get(i, j));
                }
            }
        }
        let mut acc: Option<T> = None;
        for k in start..end {
            if k > start {
                let j = k.trailing_zeros() as usize;
                let added = gray(k) >> j & 1 == 1;
                for (i, s) in sums.iter_mut().enumerate() {
                    if added {
                        s.add_in_place(m.get(i, j));
                    } else {
                        s.sub_in_place(m.get(i, j));
                    }
                }
            }
            let t = term(&sums);
            let acc = acc.get_or_insert_with(|| t.zero_like());
            if (n as u32 - gray(k).count_ones()).is_multiple_of(2) {
                acc.add_in_place(&t);
            } else {
                acc.sub_in_place(&t);
            }
        }
        acc
    };

    let partials: Vec<Option<T>> = if workers == 1 {
        vec![run(ranges[0])]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges.iter().map(|&range| scope.spawn(move || run(range))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("ryser worker panicked"))
                .collect()
        })
    };

    let mut result: Option<T> = None;
    for part in partials.into_iter().flatten() {
        match result.as_mut() {
            None => result = Some(part),
            Some(acc) => acc.add_in_place(&part),
        }
    }
    Ok(result.expect("at least one non-empty range"))
}
