//! The minimal commutative-ring interface the permanent engine needs.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Zero;

/// A commutative ring with subtraction whose elements know their own context
/// (arity, field, cyclotomic order), so zero can be produced from any element.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn add_in_place(&mut self, rhs: &Self);
    fn sub_in_place(&mut self, rhs: &Self);
    fn product(&self, rhs: &Self) -> Self;
    fn scaled(&self, k: &BigInt) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// Whether `self` and `rhs` belong to the same ring instance.
    fn compatible(&self, _rhs: &Self) -> bool {
        true
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }

    fn add_in_place(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_in_place(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scaled(&self, k: &BigInt) -> Self {
        self * k
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}
