//! Double-double floating point (an unevaluated sum `hi + lo` of two f64s,
//! about 106 bits of mantissa). Only what the Gauss-sum check needs:
//! ring operations, division, and sin/cos of rational multiples of 2π.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };
    pub const PI: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Exact for |n| < 2^106.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let lo = (n - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// `(cos θ, sin θ)` for `θ = 2π · num/den`.
    pub fn cos_sin_turns(num: i64, den: i64) -> (Self, Self) {
        assert!(den > 0);
        // reduce to (−den/2, den/2] so |θ| ≤ π
        let mut k = num.rem_euclid(den);
        if 2 * k > den {
            k -= den;
        }
        let frac = Self::from_i128(2 * k as i128).div(Self::from_i128(den as i128));
        let theta = Self::PI * frac;
        let x2 = theta * theta;
        // Taylor series; |θ| ≤ π so 40 terms leave a remainder below 1e-35.
        let mut cos = Self::ONE;
        let mut sin = theta;
        let mut c_term = Self::ONE;
        let mut s_term = theta;
        for i in 1..=20 {
            let i = i as f64;
            c_term = (c_term * x2).div(Self::from_f64((2.0 * i - 1.0) * (2.0 * i)));
            s_term = (s_term * x2).div(Self::from_f64((2.0 * i) * (2.0 * i + 1.0)));
            if i as i32 % 2 == 1 {
                cos = cos - c_term;
                sin = sin - s_term;
            } else {
                cos = cos + c_term;
                sin = sin + s_term;
            }
        }
        (cos, sin)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * Self::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Self::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        DoubleDouble { hi: s, lo: e } + Self::from_f64(q3)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carries_more_than_f64() {
        let third = DoubleDouble::ONE.div(DoubleDouble::from_f64(3.0));
        let back = third * DoubleDouble::from_f64(3.0) - DoubleDouble::ONE;
        assert!(back.to_f64().abs() < 1e-30);
        let big = DoubleDouble::from_i128((1i128 << 80) + 1);
        assert_eq!((big - DoubleDouble::from_i128(1i128 << 80)).to_f64(), 1.0);
    }

    #[test]
    fn unit_circle() {
        for den in [1i64, 2, 3, 7, 12, 30, 84] {
            for num in -den..2 * den {
                let (c, s) = DoubleDouble::cos_sin_turns(num, den);
                let one = c * c + s * s - DoubleDouble::ONE;
                assert!(one.to_f64().abs() < 1e-28, "{num}/{den}");
                let theta = 2.0 * std::f64::consts::PI * num as f64 / den as f64;
                assert!((c.to_f64() - theta.cos()).abs() < 1e-14);
                assert!((s.to_f64() - theta.sin()).abs() < 1e-14);
            }
        }
        // cos(2π/6) = 1/2 exactly
        let (c, _) = DoubleDouble::cos_sin_turns(1, 6);
        assert!((c - DoubleDouble::from_f64(0.5)).to_f64().abs() < 1e-30);
    }
}
