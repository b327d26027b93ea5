//! Minimal commutative-ring interface shared by integers and (nested)
//! integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::hash::Hash;

/// An integral domain with exact division and a gcd.
///
/// Implemented for [`BigInt`] and, recursively, for `Poly<R>`. The method
/// names avoid `add`/`mul` so they never collide with `std::ops`.
pub trait Ring: Clone + PartialEq + Eq + Hash + Debug + Zero + One {
    fn from_i64(n: i64) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `Some(q)` with `q * rhs == self`, `None` when `rhs` does not divide.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
    /// Greatest common divisor with non-negative leading sign.
    fn gcd_with(&self, rhs: &Self) -> Self;
    /// Sign of the leading integer coefficient (0 for zero).
    fn lead_sign(&self) -> i8;

    fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Multiply by -1 if the leading sign is negative.
    fn sign_normalized(&self) -> Self {
        if self.lead_sign() < 0 {
            self.negate()
        } else {
            self.clone()
        }
    }
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn gcd_with(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn lead_sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}
