//! Brute-force ground truth: enumerate every permutation f of F_q^× (with
//! f(0) = 0), interpolate it, and tally degrees; and count the restricted
//! solutions of the linear systems directly. Deliberately unclever.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::bound::factorial;
use crate::counting::CountTable;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::guards::{check, Config};
use crate::permanent::next_permutation;

/// Every `SELF_CHECK_STRIDE`-th enumerated permutation is re-evaluated at all
/// points against its interpolating polynomial.
const SELF_CHECK_STRIDE: u64 = 100;

/// A permutation f of F_q^×, stored as `images[i] = f(ω^i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAssignment {
    images: Vec<FieldElem>,
}

impl PermutationAssignment {
    pub fn new(ctx: &FieldCtx, images: Vec<FieldElem>) -> Result<Self> {
        let n = ctx.q() as usize - 1;
        if images.len() != n {
            return Err(Error::BadMatrix(format!(
                "a permutation of F_{}^x needs {n} images, got {}",
                ctx.q(),
                images.len()
            )));
        }
        let mut seen = vec![false; ctx.q() as usize];
        for &y in &images {
            if y.is_zero() || y.code() >= ctx.q() {
                return Err(Error::BadMatrix(format!("image code {} is not a unit", y.code())));
            }
            if std::mem::replace(&mut seen[y.code() as usize], true) {
                return Err(Error::BadMatrix(format!("image code {} repeats", y.code())));
            }
        }
        Ok(PermutationAssignment { images })
    }

    /// The map c ↦ g(c) for a function g on the units.
    pub fn from_fn(ctx: &FieldCtx, mut g: impl FnMut(FieldElem) -> FieldElem) -> Result<Self> {
        Self::new(ctx, ctx.units().map(&mut g).collect())
    }

    pub fn images(&self) -> &[FieldElem] {
        &self.images
    }
}

/// The unique interpolating polynomial Σ_{t=1}^{q−2} a_t x^t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpolation {
    /// `coeffs[t − 1] = a_t` for t = 1 … q−2.
    pub coeffs: Vec<FieldElem>,
    /// Largest t with a_t ≠ 0 (0 for the zero polynomial).
    pub degree: u32,
}

/// `a_t = −Σ_k v_k ω^{−kt}` for an arbitrary map with `values[k] = g(ω^k)`.
fn coefficient(ctx: &FieldCtx, values: &[FieldElem], t: usize) -> FieldElem {
    let n = values.len();
    let mut acc = FieldElem::ZERO;
    for (k, &v) in values.iter().enumerate() {
        let e = (n - (k * t) % n) % n;
        acc = ctx.add(acc, ctx.mul(v, ctx.omega_pow(e as i64)));
    }
    ctx.neg(acc)
}

fn degree_of(coeffs: &[FieldElem]) -> u32 {
    coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i as u32 + 1)
}

/// Interpolation of any map on the units whose power sum Σ g(c) vanishes
/// (so the x^{q−1} term is absent), without the self-check.
pub fn interpolate_values(ctx: &FieldCtx, values: &[FieldElem]) -> Interpolation {
    let n = values.len();
    let coeffs: Vec<FieldElem> = (1..n).map(|t| coefficient(ctx, values, t)).collect();
    let degree = degree_of(&coeffs);
    Interpolation { coeffs, degree }
}

/// Σ_{t} a_t c^t at c = ω^k for every k.
pub fn evaluate(ctx: &FieldCtx, coeffs: &[FieldElem]) -> Vec<FieldElem> {
    let n = ctx.q() as usize - 1;
    (0..n)
        .map(|k| {
            coeffs.iter().enumerate().fold(FieldElem::ZERO, |acc, (i, &a)| {
                ctx.add(acc, ctx.mul(a, ctx.omega_pow((k * (i + 1)) as i64)))
            })
        })
        .collect()
}

fn self_check(ctx: &FieldCtx, f: &[FieldElem], interp: &Interpolation) -> Result<()> {
    let back = evaluate(ctx, &interp.coeffs);
    if back != f {
        let codes = |v: &[FieldElem]| v.iter().map(|e| e.code()).collect::<Vec<_>>();
        return Err(Error::identity(
            "interpolation-self-check",
            format!("images {:?} re-evaluate to {:?}", codes(f), codes(&back)),
        ));
    }
    Ok(())
}

/// Interpolate f (with f(0) = 0), verified by evaluating at every point.
pub fn interpolate(ctx: &FieldCtx, f: &PermutationAssignment) -> Result<Interpolation> {
    let interp = interpolate_values(ctx, f.images());
    self_check(ctx, f.images(), &interp)?;
    Ok(interp)
}

/// Degree only: scans coefficients from the top and stops at the first
/// nonzero one.
fn degree_fast(ctx: &FieldCtx, values: &[FieldElem]) -> u32 {
    let n = values.len();
    (1..n)
        .rev()
        .find(|&t| !coefficient(ctx, values, t).is_zero())
        .map_or(0, |t| t as u32)
}

fn check_cap(ctx: &FieldCtx, cfg: &Config) -> Result<()> {
    let n = ctx.q() as u64 - 1;
    let count = factorial(n);
    let count = u128::try_from(&count).unwrap_or(u128::MAX);
    check("max-oracle", count, cfg.guards.max_oracle as u128)
}

/// Visit every assignment whose first image is `first`, the rest in
/// lexicographic order of codes.
fn for_each_with_first(ctx: &FieldCtx, first: u32, mut visit: impl FnMut(&[FieldElem]) -> Result<()>) -> Result<()> {
    let mut images: Vec<FieldElem> = std::iter::once(first)
        .chain((1..ctx.q()).filter(|&c| c != first))
        .map(|c| ctx.elem(c))
        .collect();
    loop {
        visit(&images)?;
        if !next_permutation(&mut images[1..]) {
            return Ok(());
        }
    }
}

/// Shard the first image across workers, each folding into its own state;
/// states come back in ascending order of first image.
fn sharded<S: Send>(
    ctx: &FieldCtx,
    cfg: &Config,
    init: impl Fn() -> S + Sync,
    step: impl Fn(&mut S, &[FieldElem]) -> Result<()> + Sync,
) -> Result<Vec<S>> {
    let firsts: Vec<u32> = (1..ctx.q()).collect();
    let workers = cfg.workers().min(firsts.len()).max(1);
    let chunk = firsts.len().div_ceil(workers);
    let run = |shard: &[u32]| -> Result<S> {
        let mut state = init();
        for &first in shard {
            for_each_with_first(ctx, first, |images| step(&mut state, images))?;
        }
        Ok(state)
    };
    if workers == 1 {
        return Ok(vec![run(&firsts)?]);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = firsts.chunks(chunk).map(|shard| s.spawn(move || run(shard))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle worker panicked"))
            .collect()
    })
}

/// Degree histogram over all (q−1)! permutations with f(0) = 0.
pub fn brute_force_table(ctx: &FieldCtx, cfg: &Config) -> Result<CountTable> {
    if ctx.q() < 3 {
        return Err(Error::OutOfRange {
            what: "q",
            value: ctx.q() as i64,
            range: "q >= 3 (degrees 1..=q-2 must be nonempty)".into(),
        });
    }
    check_cap(ctx, cfg)?;
    let n = ctx.q() as usize - 1;
    let hists = sharded(
        ctx,
        cfg,
        || (vec![0u64; n], 0u64),
        |(hist, seen), images| {
            let degree = if *seen % SELF_CHECK_STRIDE == 0 {
                let interp = interpolate_values(ctx, images);
                self_check(ctx, images, &interp)?;
                interp.degree
            } else {
                degree_fast(ctx, images)
            };
            *seen += 1;
            hist[degree as usize] += 1;
            Ok(())
        },
    )?;
    let mut entries: BTreeMap<u32, BigInt> = (1..n as u32).map(|d| (d, BigInt::default())).collect();
    for (hist, _) in hists {
        for (d, &c) in hist.iter().enumerate() {
            if c == 0 {
                continue;
            }
            match entries.get_mut(&(d as u32)) {
                Some(e) => *e += c,
                None => {
                    return Err(Error::identity(
                        "degree-range",
                        format!("{c} permutations interpolated to degree {d}"),
                    ))
                }
            }
        }
    }
    Ok(CountTable::from_entries(ctx.q(), entries))
}

/// Number of permutations (x_1, …, x_{q−1}) of F_q^× with
/// Σ_i ω^{(i−1)l} x_i = 0 for every l in `exponents`.
pub fn count_restricted_solutions(ctx: &FieldCtx, exponents: &[i64], cfg: &Config) -> Result<BigInt> {
    check_cap(ctx, cfg)?;
    let n = ctx.q() as usize - 1;
    let weights: Vec<Vec<FieldElem>> = exponents
        .iter()
        .map(|&l| (0..n).map(|i| ctx.omega_pow(i as i64 * l)).collect())
        .collect();
    let counts = sharded(
        ctx,
        cfg,
        || 0u64,
        |count, xs| {
            let ok = weights.iter().all(|w| {
                w.iter()
                    .zip(xs)
                    .fold(FieldElem::ZERO, |acc, (&a, &x)| ctx.add(acc, ctx.mul(a, x)))
                    .is_zero()
            });
            *count += ok as u64;
            Ok(())
        },
    )?;
    Ok(counts.into_iter().map(BigInt::from).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, r: u32) -> FieldCtx {
        FieldCtx::build(p, r, None).unwrap()
    }

    #[test]
    fn monomial_permutations() {
        let f4 = field(2, 2);
        let id = PermutationAssignment::from_fn(&f4, |c| c).unwrap();
        let it = interpolate(&f4, &id).unwrap();
        assert_eq!(it.degree, 1);
        assert_eq!(it.coeffs, vec![FieldElem::ONE, FieldElem::ZERO]);

        let sq = PermutationAssignment::from_fn(&f4, |c| f4.pow(c, 2)).unwrap();
        let it = interpolate(&f4, &sq).unwrap();
        assert_eq!((it.degree, it.coeffs[1]), (2, FieldElem::ONE));

        let f5 = field(5, 1);
        let cube = PermutationAssignment::from_fn(&f5, |c| f5.pow(c, 3)).unwrap();
        assert_eq!(interpolate(&f5, &cube).unwrap().degree, 3);
    }

    #[test]
    fn assignment_validation() {
        let f5 = field(5, 1);
        let e = |c| f5.elem(c);
        assert!(PermutationAssignment::new(&f5, vec![e(1), e(2), e(3)]).is_err());
        assert!(PermutationAssignment::new(&f5, vec![e(1), e(2), e(3), e(3)]).is_err());
        assert!(PermutationAssignment::new(&f5, vec![e(0), e(2), e(3), e(4)]).is_err());
        assert!(PermutationAssignment::new(&f5, vec![e(4), e(2), e(3), e(1)]).is_ok());
    }

    #[test]
    fn small_tables() {
        let cfg = Config::default();
        let t4 = brute_force_table(&field(2, 2), &cfg).unwrap();
        assert_eq!(t4.entries, BTreeMap::from([(1, BigInt::from(3)), (2, BigInt::from(3))]));
        let t5 = brute_force_table(&field(5, 1), &Config::with_threads(3)).unwrap();
        assert_eq!(
            t5.entries,
            BTreeMap::from([(1, BigInt::from(4)), (2, BigInt::from(0)), (3, BigInt::from(20))])
        );
    }

    #[test]
    fn restricted_solutions() {
        let cfg = Config::default();
        assert_eq!(
            count_restricted_solutions(&field(2, 2), &[1], &cfg).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            count_restricted_solutions(&field(5, 1), &[1, 2], &cfg).unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let mut cfg = Config::default();
        cfg.guards.max_oracle = 5;
        assert!(matches!(
            brute_force_table(&field(2, 2), &cfg),
            Err(Error::Guard {
                guard: "max-oracle",
                ..
            })
        ));
    }
}
