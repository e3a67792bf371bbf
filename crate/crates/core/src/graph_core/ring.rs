//! Minimal exact-integer abstraction so tree recursions can run on `i128`
//! and fall back to `BigInt` when an intermediate value overflows.

use core::cmp::Ordering;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub(crate) trait Ring: Clone + Sized {
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sign(&self) -> Ordering;
    fn into_big(self) -> BigInt;

    fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }
}

impl Ring for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sign(&self) -> Ordering {
        if Zero::is_zero(self) {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn into_big(self) -> BigInt {
        self
    }
}
