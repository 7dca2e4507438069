//! Z[x]/(x^n − 1): exact integer combinations of n-th roots of unity.
//!
//! The counting routes only need prime n = p, where an element equals a
//! rational integer at a primitive root ζ exactly when its coefficients at
//! x^1 … x^{p-1} agree (because 1 + ζ + … + ζ^{p-1} = 0).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "Cyclo[{}]", cs.join(", "))
    }
}

impl CycloElem {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycloElem {
            coeffs: vec![BigInt::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0)
    }

    /// `x^k`, with `k` reduced modulo the order.
    pub fn monomial(order: usize, k: i64) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[k.rem_euclid(order as i64) as usize] = BigInt::one();
        e
    }

    pub fn from_int(order: usize, n: BigInt) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = n;
        e
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "cyclotomic order must be positive");
        CycloElem { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        out.add_in_place(other);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.product(other))
    }

    pub fn neg(&self) -> Self {
        CycloElem {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Complex conjugation, `x^k ↦ x^{-k}`.
    pub fn conj(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(n - k) % n] = c.clone();
        }
        out
    }

    /// The rational integer this element equals at a primitive root of
    /// unity: `coeffs[0] − coeffs[1]`, provided the tail is constant.
    pub fn as_integer(&self) -> Result<BigInt> {
        if self.order() == 1 {
            return Ok(self.coeffs[0].clone());
        }
        let tail = &self.coeffs[1];
        if self.coeffs[2..].iter().any(|c| c != tail) {
            return Err(Error::NotInteger);
        }
        Ok(&self.coeffs[0] - tail)
    }

    pub fn sum_of_coeffs(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Ring for CycloElem {
    fn zero_like(&self) -> Self {
        Self::zero(self.order())
    }

    fn add_in_place(&mut self, rhs: &Self) {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }

    fn sub_in_place(&mut self, rhs: &Self) {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }

    fn product(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }

    fn scaled(&self, k: &BigInt) -> Self {
        CycloElem {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn is_zero_elem(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn compatible(&self, rhs: &Self) -> bool {
        self.order() == rhs.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> CycloElem {
        CycloElem::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn monomials_multiply_cyclically() {
        for n in [2usize, 3, 5, 7] {
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    let prod = CycloElem::monomial(n, a).try_mul(&CycloElem::monomial(n, b)).unwrap();
                    assert_eq!(prod, CycloElem::monomial(n, a + b));
                }
            }
        }
        assert_eq!(c(&[4, 2]).try_mul(&c(&[1, 0])).unwrap(), c(&[4, 2]));
        assert_eq!(c(&[0, 1, 0]).try_mul(&c(&[0, 0, 1])).unwrap(), c(&[1, 0, 0]));
    }

    #[test]
    fn integer_extraction() {
        assert_eq!(c(&[5, 0, 0, 0, 0]).as_integer().unwrap(), BigInt::from(5));
        assert_eq!(c(&[4, 2]).as_integer().unwrap(), BigInt::from(2));
        for p in [2usize, 3, 5, 7, 11] {
            let mut v = vec![1i64; p];
            v[0] = 0;
            assert_eq!(c(&v).as_integer().unwrap(), BigInt::from(-1));
        }
        assert!(matches!(c(&[0, 1, 2]).as_integer(), Err(Error::NotInteger)));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert!(matches!(
            c(&[1, 0]).try_add(&c(&[1, 0, 0])),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        ));
        assert!(c(&[1, 0]).try_mul(&c(&[1, 0, 0])).is_err());
    }

    #[test]
    fn conjugation_reverses_exponents() {
        assert_eq!(c(&[1, 2, 3]).conj(), c(&[1, 3, 2]));
        assert_eq!(c(&[0, 0, 1]).neg(), c(&[0, 0, -1]));
    }
}
