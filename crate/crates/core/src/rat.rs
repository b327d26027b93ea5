//! Rationals and closed rational intervals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational in canonical form.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn sign_of(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub fn floor(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rat) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) / int(2)
}

/// Closed interval `[lo, hi]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(r: Rat) -> Self {
        RatInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersects(&self, o: &RatInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Strictly below `o` with no overlap.
    pub fn below(&self, o: &RatInterval) -> bool {
        self.hi < o.lo
    }

    pub fn add(&self, o: &RatInterval) -> Self {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> Self {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &RatInterval) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul(&RatInterval::point(c.clone()))
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, o: &RatInterval) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let inv = RatInterval::new(Rat::one() / &o.hi, Rat::one() / &o.lo);
        Some(self.mul(&inv))
    }

    pub fn hull(&self, o: &RatInterval) -> Self {
        RatInterval::new(
            self.lo.clone().min(o.lo.clone()),
            self.hi.clone().max(o.hi.clone()),
        )
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mid(&self) -> Rat {
        midpoint(&self.lo, &self.hi)
    }
}

/// Evaluate an integer polynomial on an interval (Horner, naive enclosure).
pub fn eval_interval(p: &crate::poly::IntPoly1, at: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc
            .mul(at)
            .add(&RatInterval::point(Rat::from_integer(c.clone())));
    }
    acc
}

/// Evaluate an integer polynomial in `(x, y)` on a box.
pub fn eval_interval2(
    p: &crate::poly::IntPoly2,
    x: &RatInterval,
    y: &RatInterval,
) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(y).add(&eval_interval(c, x));
    }
    acc
}

/// Evaluate an integer polynomial exactly at a rational.
pub fn eval_rat(p: &crate::poly::IntPoly1, at: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * at + Rat::from_integer(c.clone());
    }
    acc
}

/// Evaluate an integer polynomial in `(x, y)` exactly at a rational point.
pub fn eval_rat2(p: &crate::poly::IntPoly2, x: &Rat, y: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * y + eval_rat(c, x);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_ceil_negative() {
        assert_eq!(floor(&rat(-3, 2)), BigInt::from(-2));
        assert_eq!(ceil(&rat(-3, 2)), BigInt::from(-1));
        assert_eq!(ceil(&int(4)), BigInt::from(4));
    }

    #[test]
    fn interval_mul_covers_sign_mix() {
        let a = RatInterval::new(int(-1), int(2));
        let b = RatInterval::new(int(-3), int(1));
        let p = a.mul(&b);
        assert_eq!(p.lo, int(-6));
        assert_eq!(p.hi, int(3));
        assert!(a.div(&b).is_none());
    }
}
