//! Gauss sums `λ_j = Σ_{k=0}^{q−2} ζ_p^{Tr(ω^k)} · ζ_{q−1}^{kj}`.
//!
//! Each λ_j is first formed exactly in Z[x]/(x^N − 1) with N = p(q − 1)
//! (ζ_p = ζ_N^{q−1}, ζ_{q−1} = ζ_N^p), as is |λ_j|² = λ_j · conj(λ_j). Only the
//! final evaluation at ζ_N = e^{2πi/N} is numeric, in double-double.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cyclo::CycloElem;
use crate::dd::DoubleDouble;
use crate::field::FieldCtx;
use crate::ring::Ring;

/// Relative tolerance on |λ_j|² = q and absolute tolerance on λ_0 = −1.
pub const GAUSS_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct GaussSum {
    pub j: u32,
    /// λ_j as an integer combination of N-th roots of unity.
    pub exact: CycloElem,
    pub re: DoubleDouble,
    pub im: DoubleDouble,
    /// |λ_j|², from the exact product λ_j · conj(λ_j).
    pub modulus_sq: DoubleDouble,
}

fn coeff_dd(c: &BigInt) -> DoubleDouble {
    match c.to_i128() {
        Some(v) if v.unsigned_abs() < 1u128 << 100 => DoubleDouble::from_i128(v),
        _ => DoubleDouble::from_f64(c.to_f64().unwrap_or(f64::NAN)),
    }
}

/// Value of `e` at `e^{2πi/N}`, N = `e.order()`.
pub fn evaluate(e: &CycloElem) -> (DoubleDouble, DoubleDouble) {
    let n = e.order() as i64;
    let mut re = DoubleDouble::ZERO;
    let mut im = DoubleDouble::ZERO;
    for (k, c) in e.coeffs().iter().enumerate() {
        if c.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        let (cos, sin) = DoubleDouble::cos_sin_turns(k as i64, n);
        let c = coeff_dd(c);
        re = re + c * cos;
        im = im + c * sin;
    }
    (re, im)
}

pub fn gauss_sums(ctx: &FieldCtx) -> Vec<GaussSum> {
    let p = ctx.p() as usize;
    let units = ctx.q() as usize - 1;
    let order = p * units;
    (0..units as u32)
        .map(|j| {
            let mut exact = CycloElem::zero(order);
            for k in 0..units {
                let tr = ctx.trace(ctx.omega_pow(k as i64)) as usize;
                let e = units * tr + p * ((k * j as usize) % units);
                exact.add_in_place(&CycloElem::monomial(order, e as i64));
            }
            let (re, im) = evaluate(&exact);
            let (modulus_sq, _) = evaluate(&exact.product(&exact.conj()));
            GaussSum {
                j,
                exact,
                re,
                im,
                modulus_sq,
            }
        })
        .collect()
}

/// Worst deviations observed against the expected values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussCheck {
    /// max over j ≠ 0 of | |λ_j|² − q | / q
    pub max_rel_err: f64,
    /// |λ_0 − (−1)|
    pub lambda0_err: f64,
    pub ok: bool,
}

pub fn check_gauss_sums(ctx: &FieldCtx, sums: &[GaussSum]) -> GaussCheck {
    let q = DoubleDouble::from_f64(ctx.q() as f64);
    let mut max_rel_err = 0.0f64;
    let mut lambda0_err = 0.0f64;
    for g in sums {
        if g.j == 0 {
            let dre = (g.re + DoubleDouble::ONE).to_f64();
            let dim = g.im.to_f64();
            lambda0_err = dre.hypot(dim);
        } else {
            let rel = ((g.modulus_sq - q).abs() / q).to_f64();
            max_rel_err = max_rel_err.max(rel);
        }
    }
    GaussCheck {
        max_rel_err,
        lambda0_err,
        ok: max_rel_err <= GAUSS_TOLERANCE && lambda0_err <= GAUSS_TOLERANCE,
    }
}
