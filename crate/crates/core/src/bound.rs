//! The two-sided bound
//! `(1 − 1/q)((q−1)! ∓ q^{q/2}/(q−1))` around N_q(q−2).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::field::FieldCtx;

/// Decimal digits used to bracket √q when q^{q/2} is irrational.
const SQRT_DIGITS: u32 = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub lo: BigRational,
    pub hi: BigRational,
    /// False when √q was bracketed and the endpoints were rounded outward.
    pub exact: bool,
    pub ok: bool,
}

/// Exact q^{q/2} when it is an integer, else an upper bound.
fn q_half_power(q: u64, p: u64, r: u32) -> (BigRational, bool) {
    let qb = BigInt::from(q);
    if q.is_multiple_of(2) {
        return (BigRational::from_integer(Pow::pow(&qb, (q / 2) as u32)), true);
    }
    let base = Pow::pow(&qb, ((q - 1) / 2) as u32);
    if r.is_multiple_of(2) {
        let root = Pow::pow(BigInt::from(p), r / 2);
        return (BigRational::from_integer(base * root), true);
    }
    let scale = Pow::pow(BigInt::from(10), SQRT_DIGITS);
    let scaled = &qb * &scale * &scale;
    let mut root = scaled.sqrt();
    if &root * &root != scaled {
        root += 1;
    }
    (BigRational::new(base * root, scale), false)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn bound_check(ctx: &FieldCtx, n_value: &BigInt) -> BoundCheck {
    let q = ctx.q() as u64;
    let (x, exact) = q_half_power(q, ctx.p() as u64, ctx.r());
    let qm1 = BigRational::from_integer(BigInt::from(q - 1));
    let scale = &qm1 / BigRational::from_integer(BigInt::from(q));
    let fact = BigRational::from_integer(factorial(q - 1));
    let spread = x / &qm1;
    let lo = &scale * (&fact - &spread);
    let hi = &scale * (&fact + &spread);
    let n = BigRational::from_integer(n_value.clone());
    let ok = lo <= n && n <= hi;
    BoundCheck { lo, hi, exact, ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn f8_interval() {
        let ctx = FieldCtx::build(2, 3, None).unwrap();
        let b = bound_check(&ctx, &BigInt::from(4368));
        assert_eq!(b.lo, rat(3898, 1));
        assert_eq!(b.hi, rat(4922, 1));
        assert!(b.exact && b.ok);
    }

    #[test]
    fn f4_interval() {
        let ctx = FieldCtx::build(2, 2, None).unwrap();
        let b = bound_check(&ctx, &BigInt::from(3));
        assert_eq!(b.lo, rat(1, 2));
        assert_eq!(b.hi, rat(17, 2));
        assert!(b.ok);
    }

    #[test]
    fn f5_interval_is_outward_rounded() {
        let ctx = FieldCtx::build(5, 1, None).unwrap();
        let b = bound_check(&ctx, &BigInt::from(20));
        assert!(!b.exact && b.ok);
        // (4/5)(24 ∓ 25√5/4) with √5 ≈ 2.2360679774997896964
        let s5 = 2.236_067_977_499_79_f64;
        let lo = 0.8 * (24.0 - 25.0 * s5 / 4.0);
        let hi = 0.8 * (24.0 + 25.0 * s5 / 4.0);
        let to_f = |r: &BigRational| {
            use num_traits::ToPrimitive;
            r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
        };
        assert!(to_f(&b.lo) <= lo + 1e-12 && (to_f(&b.lo) - lo).abs() < 1e-9);
        assert!(to_f(&b.hi) >= hi - 1e-12 && (to_f(&b.hi) - hi).abs() < 1e-9);
        assert!(b.lo > rat(8, 1) && b.hi < rat(31, 1));
    }

    #[test]
    fn square_odd_order_is_exact() {
        let ctx = FieldCtx::build(3, 2, None).unwrap();
        let b = bound_check(&ctx, &BigInt::from(0));
        assert!(b.exact);
        // 9^{4.5} = 3^9 = 19683; (8/9)(40320 − 19683/8)
        assert_eq!(b.lo, rat(8 * 40320 * 8 - 8 * 19683, 72));
    }
}
