//! Set partitions via restricted growth strings, and the partition
//! expansion of the trace-character permanent per(V).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::field::{FieldCtx, FieldElem};
use crate::guards::{check, Guards};

/// A partition of `{1, …, n}` into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    fn from_rgs(rgs: &[usize]) -> Self {
        let t = rgs.iter().max().map_or(0, |&m| m + 1);
        let mut blocks = vec![Vec::new(); t];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { blocks }
    }

    /// Blocks ordered by least element; elements are 1-based and ascending.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

/// Lexicographic walk over restricted growth strings
/// `a_0 = 0, a_i ≤ 1 + max(a_0 … a_{i−1})`.
#[derive(Clone, Debug)]
pub struct Partitions {
    rgs: Vec<usize>,
    /// prefix maxima: `maxes[i] = max(a_0 … a_i)`
    maxes: Vec<usize>,
    started: bool,
    done: bool,
}

impl Partitions {
    fn new(n: usize) -> Self {
        Partitions {
            rgs: vec![0; n],
            maxes: vec![0; n],
            started: false,
            done: false,
        }
    }

    /// Step to the next string; `false` once exhausted.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.rgs.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for k in i + 1..n {
                    self.rgs[k] = 0;
                    self.maxes[k] = self.maxes[i];
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    fn num_blocks(&self) -> usize {
        self.maxes.last().map_or(0, |&m| m + 1)
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        self.advance().then(|| SetPartition::from_rgs(&self.rgs))
    }
}

/// Every set partition of `{1, …, n}` exactly once, in lexicographic order of
/// restricted growth strings.
pub fn enumerate_partitions(n: usize, guards: &Guards) -> Result<Partitions> {
    check("max-bell", n as u128, guards.max_bell as u128)?;
    Ok(Partitions::new(n))
}

/// Bell numbers by the Bell triangle.
pub fn bell_number(n: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for k in 1..=n {
        let v = f[k - 1].clone() * k;
        f.push(v);
    }
    f
}

/// per(V) by Möbius inversion over the partition lattice of `{1, …, q−1}`:
///
/// `Σ_π (−1)^{q−1−t} Π (d_i − 1)! Π C(π_i)`, where `C(B) = q − 1` if
/// `Σ_{i∈B} ω^i = 0` and `−1` otherwise.
pub fn per_v_partition(ctx: &FieldCtx, guards: &Guards) -> Result<BigInt> {
    let n = ctx.q() as usize - 1;
    let mut parts = enumerate_partitions(n, guards)?;
    let fact = factorials(n);
    let q_minus_1 = BigInt::from(n);
    let powers: Vec<FieldElem> = (1..=n).map(|i| ctx.omega_pow(i as i64)).collect();

    let mut total = BigInt::zero();
    let mut sums = vec![FieldElem::ZERO; n];
    let mut sizes = vec![0usize; n];
    while parts.advance() {
        let t = parts.num_blocks();
        sums[..t].fill(FieldElem::ZERO);
        sizes[..t].fill(0);
        for (i, &b) in parts.rgs().iter().enumerate() {
            sums[b] = ctx.add(sums[b], powers[i]);
            sizes[b] += 1;
        }
        let mut term = BigInt::one();
        let mut negatives = n - t;
        for b in 0..t {
            term *= &fact[sizes[b] - 1];
            if sums[b].is_zero() {
                term *= &q_minus_1;
            } else {
                negatives += 1;
            }
        }
        if negatives % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}
