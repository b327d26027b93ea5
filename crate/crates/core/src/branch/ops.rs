//! Arithmetic, inversion and composition of branches.
//!
//! Each result is found in two steps: eliminate an auxiliary variable `u`
//! with a resultant to get a defining polynomial, then pick the right root
//! at one sample by shrinking an interval enclosure of the true value.
//! Auxiliary polynomials live in `Z[x][z][u]` (`u` outermost).

use super::{
    compare_eventually, compare_eventually_with_bound, identify_branch, index_of,
    limit_at_infinity, monotone_eventually, normalize, sign_along, structural_bound, Branch, Enclosure, Limit,
    Monotone,
};
use crate::error::{Error, Result};
use crate::poly::{permute, Flat, IntPoly1, IntPoly2, IntPoly3, Poly};
use crate::rat::{eval_interval2, Rat, RatInterval};
use crate::realalg::{isolate, specialize_x};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// `p(x, u)` (outer `u`) placed in `Z[x][z][u]`.
fn lift_xu(p: &IntPoly2) -> IntPoly3 {
    permute(p, &[0, 2])
}

fn z3() -> IntPoly3 {
    IntPoly3::from_terms(&[(vec![0, 1, 0], BigInt::one())])
}

fn u3() -> IntPoly3 {
    IntPoly3::from_terms(&[(vec![1, 0, 0], BigInt::one())])
}

fn lift_x3(c: &IntPoly1) -> IntPoly3 {
    IntPoly3::constant(IntPoly2::constant(c.clone()))
}

/// `p(x, u)` as a polynomial with outer variable `u`, from a polynomial in `u` alone.
fn const_in_x(p: &IntPoly1) -> IntPoly2 {
    p.map_coeffs(|c| IntPoly1::constant(c.clone()))
}

/// `d^k p(x, n/d)` with `k = deg_u p`.
fn substitute_rational(p: &IntPoly2, n: &IntPoly1, d: &IntPoly1, k: usize) -> IntPoly1 {
    let mut acc = IntPoly1::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        acc = acc.plus(&c.times(&n.pow(j)).times(&d.pow(k - j)));
    }
    acc
}

fn reduce_frac(n: &IntPoly1, d: &IntPoly1) -> (IntPoly1, IntPoly1) {
    let g = n.gcd(d);
    let (n, d) = (n.div_poly(&g).unwrap(), d.div_poly(&g).unwrap());
    if d.lead_sign() < 0 {
        (n.negate(), d.negate())
    } else {
        (n, d)
    }
}

impl Branch {
    /// `z = P(x, f(x)) / Q(x, f(x))` for this branch `f`.
    pub fn apply_rational(&self, p: &IntPoly2, q: &IntPoly2) -> Result<Branch> {
        let g = p.gcd(q);
        let (p, q) = if g.is_zero() {
            (p.clone(), q.clone())
        } else {
            (p.div_poly(&g).unwrap(), q.div_poly(&g).unwrap())
        };
        let (sq, bq) = sign_along(&q, self);
        if sq == 0 {
            return Err(Error::DenominatorAlongCurve);
        }
        if let Some((n, d)) = self.as_rational() {
            let k = p.deg().max(q.deg());
            let (a, b) = reduce_frac(
                &substitute_rational(&p, &n, &d, k),
                &substitute_rational(&q, &n, &d, k),
            );
            return Ok(Branch::rational(&a, &b).raised(&self.bound));
        }
        if p.deg() == 0 && q.deg() == 0 {
            let (a, b) = reduce_frac(&p.coeff(0), &q.coeff(0));
            return Ok(Branch::rational(&a, &b));
        }
        let e = z3().times(&lift_xu(&q)).minus(&lift_xu(&p));
        let r: IntPoly2 = lift_xu(&self.q).resultant(&e);
        let min_bound = bq.max(self.bound.clone());
        identify_branch(&r, &min_bound, |x0| {
            let x0 = x0.clone();
            let mut v = Enclosure::new(self.value_at(&x0));
            let xi = RatInterval::point(x0);
            Box::new(move || loop {
                let u = v.next();
                let num = eval_interval2(&p, &xi, &u);
                let den = eval_interval2(&q, &xi, &u);
                if let Some(t) = num.div(&den) {
                    return t;
                }
            })
        })
    }

    /// Multiply by a rational constant.
    pub fn scale(&self, c: &Rat) -> Branch {
        if c.is_zero() {
            return Branch::from_int(0);
        }
        let p = IntPoly2::new(vec![IntPoly1::zero(), IntPoly1::constant(c.numer().clone())]);
        let q = IntPoly2::constant(IntPoly1::constant(c.denom().clone()));
        self.apply_rational(&p, &q).expect("constant denominator")
    }

    /// Add a rational function of `x`.
    fn add_rational(&self, n: &IntPoly1, d: &IntPoly1) -> Branch {
        // z = (d u + n) / d
        let p = IntPoly2::new(vec![n.clone(), d.clone()]);
        let q = IntPoly2::constant(d.clone());
        self.apply_rational(&p, &q).expect("denominator is eventually nonzero")
    }

    fn mul_rational(&self, n: &IntPoly1, d: &IntPoly1) -> Branch {
        let p = IntPoly2::new(vec![IntPoly1::zero(), n.clone()]);
        let q = IntPoly2::constant(d.clone());
        self.apply_rational(&p, &q).expect("denominator is eventually nonzero")
    }

    pub fn add(&self, other: &Branch) -> Branch {
        match (self.as_rational(), other.as_rational()) {
            (Some((n1, d1)), Some((n2, d2))) => {
                let (n, d) = reduce_frac(&n1.times(&d2).plus(&n2.times(&d1)), &d1.times(&d2));
                Branch::rational(&n, &d).raised(&self.bound.clone().max(other.bound.clone()))
            }
            (_, Some((n, d))) => self.add_rational(&n, &d).raised(&other.bound),
            (Some((n, d)), _) => other.add_rational(&n, &d).raised(&self.bound),
            _ => {
                // Res_u(q1(x, u), q2(x, z - u))
                let v = z3().minus(&u3());
                let shifted = other.q.eval_into(&v, lift_x3);
                let r: IntPoly2 = lift_xu(&self.q).resultant(&shifted);
                let min_bound = self.bound.clone().max(other.bound.clone());
                identify_branch(&r, &min_bound, |x0| {
                    let mut a = Enclosure::new(self.value_at(x0));
                    let mut b = Enclosure::new(other.value_at(x0));
                    Box::new(move || a.next().add(&b.next()))
                })
                .expect("sum is a root of the eliminant")
            }
        }
    }

    pub fn sub(&self, other: &Branch) -> Branch {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Branch) -> Branch {
        match (self.as_rational(), other.as_rational()) {
            (Some((n1, d1)), Some((n2, d2))) => {
                let (n, d) = reduce_frac(&n1.times(&n2), &d1.times(&d2));
                Branch::rational(&n, &d).raised(&self.bound.clone().max(other.bound.clone()))
            }
            (_, Some((n, d))) => self.mul_rational(&n, &d).raised(&other.bound),
            (Some((n, d)), _) => other.mul_rational(&n, &d).raised(&self.bound),
            _ => {
                if sign_along(&IntPoly2::var(), self).0 == 0 {
                    return Branch::from_int(0);
                }
                // Res_u(q1(x, u), u^d q2(x, z / u))
                let dg = other.q.deg();
                let mut h = IntPoly3::zero();
                for (j, c) in other.q.coeffs().iter().enumerate() {
                    let t = lift_x3(c).times(&z3().pow(j)).times(&u3().pow(dg - j));
                    h = h.plus(&t);
                }
                let r: IntPoly2 = lift_xu(&self.q).resultant(&h);
                let min_bound = self.bound.clone().max(other.bound.clone());
                identify_branch(&r, &min_bound, |x0| {
                    let mut a = Enclosure::new(self.value_at(x0));
                    let mut b = Enclosure::new(other.value_at(x0));
                    Box::new(move || a.next().mul(&b.next()))
                })
                .expect("product is a root of the eliminant")
            }
        }
    }

    pub fn inv(&self) -> Result<Branch> {
        let p = IntPoly2::one();
        let q = IntPoly2::var();
        self.apply_rational(&p, &q).map_err(|e| match e {
            Error::DenominatorAlongCurve => Error::BranchDivisionByZero,
            e => e,
        })
    }

    pub fn div(&self, other: &Branch) -> Result<Branch> {
        match other.as_rational() {
            Some((n, d)) => {
                if n.is_zero() {
                    return Err(Error::BranchDivisionByZero);
                }
                Ok(self.mul_rational(&d, &n).raised(&other.bound))
            }
            None => Ok(self.mul(&other.inv()?)),
        }
    }

    /// `(1 - r) self + r other` for a rational `r`.
    pub fn mix(&self, other: &Branch, r: &Rat) -> Branch {
        if r.is_zero() {
            return self.raised(&other.bound);
        }
        if r.is_one() {
            return other.raised(&self.bound);
        }
        self.scale(&(Rat::one() - r)).add(&other.scale(r))
    }

    /// A branch eventually strictly between `self` and `other`, which must
    /// differ. When `self` is rational so is the result: the midpoint if
    /// `other` is rational too, otherwise `self ± x^-k` for the least `k`
    /// that fits.
    pub fn toward(&self, other: &Branch) -> Branch {
        let half = Rat::new(1.into(), 2.into());
        let (Some((n, d)), None) = (self.as_rational(), other.as_rational()) else {
            return self.mix(other, &half);
        };
        let dir = compare_eventually(self, other);
        for k in 0..=48 {
            let xk = IntPoly1::monomial(BigInt::one(), k);
            // n/d ± 1/x^k
            let step = if dir == Ordering::Less { d.clone() } else { d.negate() };
            let c = Branch::rational(&n.times(&xk).plus(&step), &d.times(&xk)).raised(&self.bound);
            if compare_eventually(&c, other) == dir {
                return c;
            }
        }
        self.mix(other, &half)
    }

    /// `self + w (other - self)` for a branch `w`.
    pub fn mix_with(&self, other: &Branch, w: &Branch) -> Branch {
        self.add(&w.mul(&other.sub(self)))
    }

    /// Inverse function; requires the branch to increase to `+∞`.
    pub fn invert(&self) -> Result<Branch> {
        if monotone_eventually(self) != Monotone::Increasing
            || limit_at_infinity(self) != Limit::PosInf
        {
            return Err(Error::NotIncreasingToInfinity);
        }
        if let Some((n, d)) = self.as_rational() {
            if n.deg() == 1 && d.deg() == 0 {
                // z = (a x + c) / d  =>  x = (d z - c) / a
                let (a, c) = (n.coeff(1), n.coeff(0));
                let num = IntPoly1::new(vec![-c, d.coeff(0)]);
                return Ok(Branch::rational(&num, &IntPoly1::constant(a)));
            }
        }
        let r = normalize(&self.q.swap_xy())?;
        let t = self.sample();
        let bound = structural_bound(&r).max(self.value_at(&t).ceil());
        let x0 = Rat::from_integer(&bound + 1);
        let (p0, _) = specialize_x(&r, &x0);
        let p0 = p0.square_free();
        // bracket w0 = b^-1(x0) using b(t) < x0 and monotonicity
        let mut lo = t.clone();
        let mut step = Rat::one();
        let mut hi = &t + &step;
        loop {
            match self.value_at(&hi).compare_rat(&x0) {
                Ordering::Less => {
                    lo = hi.clone();
                    step = &step * Rat::from_integer(2.into());
                    hi = &hi + &step;
                }
                Ordering::Equal => {
                    lo = hi.clone();
                    break;
                }
                Ordering::Greater => break,
            }
        }
        let found = loop {
            if lo == hi {
                break RatInterval::point(lo);
            }
            let hits = isolate::isolate_in(&p0, &lo, &hi);
            if hits.len() == 1 {
                break hits[0].clone();
            }
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            match self.value_at(&mid).compare_rat(&x0) {
                Ordering::Less => lo = mid,
                Ordering::Greater => hi = mid,
                Ordering::Equal => break RatInterval::point(mid),
            }
        };
        Ok(Branch {
            index: index_of(&p0, &found),
            q: r,
            bound,
        })
    }

    /// `self ∘ inner`; `inner` must eventually exceed this branch's bound.
    pub fn compose(&self, inner: &Branch) -> Result<Branch> {
        let floor = Branch::constant(&Rat::from_integer(self.bound.clone()));
        let (ord, c1) = compare_eventually_with_bound(inner, &floor);
        if ord != Ordering::Greater {
            return Err(Error::CompositionDomain(format!(
                "{} does not eventually exceed {}",
                inner, self.bound
            )));
        }
        if let Some((n, d)) = self.as_rational() {
            return inner
                .apply_rational(&const_in_x(&n), &const_in_x(&d))
                .map(|b| b.raised(&c1));
        }
        let r: IntPoly2 = match inner.as_rational() {
            Some((n, d)) => {
                // q_out(n/d, z) d^k
                let k = self.q.deg_x();
                let coeffs: Vec<IntPoly1> = (0..=self.q.deg())
                    .map(|j| {
                        let cj: IntPoly1 = self.q.coeff(j);
                        let mut acc = IntPoly1::zero();
                        for (i, a) in cj.coeffs().iter().enumerate() {
                            acc = acc.plus(&n.pow(i).times(&d.pow(k - i)).scale(a));
                        }
                        acc
                    })
                    .collect();
                Poly::new(coeffs)
            }
            None => {
                // Res_u(q_in(x, u), q_out(u, z))
                let outer: IntPoly3 = permute(&self.q, &[1, 0]);
                lift_xu(&inner.q).resultant(&outer)
            }
        };
        let min_bound = c1.max(inner.bound.clone());
        identify_branch(&r, &min_bound, |x0| {
            let mut v = Enclosure::new(self.value_at_alg(&inner.value_at(x0)));
            Box::new(move || v.next())
        })
    }
}

/// The branch eventually equal to the pointwise minimum.
pub fn branch_min(bs: &[Branch]) -> Branch {
    let mut best = bs[0].clone();
    for b in &bs[1..] {
        if compare_eventually(b, &best) == Ordering::Less {
            best = b.clone();
        }
    }
    best
}

/// The branch eventually equal to the pointwise maximum.
pub fn branch_max(bs: &[Branch]) -> Branch {
    let mut best = bs[0].clone();
    for b in &bs[1..] {
        if compare_eventually(b, &best) == Ordering::Greater {
            best = b.clone();
        }
    }
    best
}
