//! Algebraic function germs at `+∞`.
//!
//! A [`Branch`] is the `index`-th real root (bottom to top) of `q(x, ·)`
//! for `x > bound`. The bound is an integer past which the roots of `q`
//! neither collide, escape to infinity nor change in number, and each root
//! is either constant or strictly monotone. Every eventual question is
//! settled by pushing the bound past the real roots of a resultant and then
//! evaluating exactly at one integer sample.

mod ops;

pub use ops::{branch_max, branch_min};

use crate::error::{Error, Result};
use crate::poly::{IntPoly1, IntPoly2, Poly};
use crate::rat::{int, Rat, RatInterval};
use crate::realalg::{isolate, max_root_ceiling, specialize_x, RealAlg};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    q: IntPoly2,
    index: usize,
    bound: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    NegInf,
    Finite(RealAlg),
    PosInf,
}

/// Primitive over `Z[x]`, square-free in `z`, positive leading sign.
pub fn normalize(q: &IntPoly2) -> Result<IntPoly2> {
    if q.is_zero() || q.deg() == 0 {
        return Err(Error::ConstantInVariable);
    }
    Ok(q.primitive_part().square_free())
}

/// Smallest integer `n >= 0` with every real root of each polynomial at most `n`.
pub(crate) fn past_roots<'a>(polys: impl IntoIterator<Item = &'a IntPoly1>) -> BigInt {
    polys
        .into_iter()
        .filter_map(max_root_ceiling)
        .fold(BigInt::zero(), |a, b| a.max(b))
}

/// Bound for a normalized `q`: past it the root branches are continuous,
/// pairwise distinct, constant in number and constant or strictly monotone.
pub fn structural_bound(q: &IntPoly2) -> BigInt {
    let lc = q.lead();
    let disc = q.resultant(&q.derivative());
    let qx = q.derivative_x();
    let g = q.gcd(&qx);
    let u = if g.deg() > 0 { q.div_poly(&g).expect("gcd divides") } else { q.clone() };
    let mono = if u.deg() > 0 && !qx.is_zero() {
        u.resultant(&qx)
    } else {
        IntPoly1::zero()
    };
    past_roots([&lc, &disc, &mono])
}

/// Real roots of `q(x0, ·)` left to right.
pub fn roots_at(q: &IntPoly2, x0: &Rat) -> Vec<RealAlg> {
    let (num, _) = specialize_x(q, x0);
    if num.is_zero() {
        return Vec::new();
    }
    RealAlg::roots_of(&num).unwrap_or_default()
}

/// Exact sign of `p(x0, v)`.
pub fn sign_at_point(p: &IntPoly2, x0: &Rat, v: &RealAlg) -> i8 {
    let (num, _) = specialize_x(p, x0);
    v.sign_at(&num)
}

impl Branch {
    /// All root branches of `q` past a common bound.
    pub fn all(q: &IntPoly2) -> Result<(BigInt, Vec<Branch>)> {
        let q = normalize(q)?;
        let b = structural_bound(&q);
        let m = roots_at(&q, &Rat::from_integer(&b + 1)).len();
        let branches = (0..m)
            .map(|index| Branch {
                q: q.clone(),
                index,
                bound: b.clone(),
            })
            .collect();
        Ok((b, branches))
    }

    /// The `index`-th branch of `q`, valid past `max(bound, structural bound)`.
    pub fn new(q: &IntPoly2, index: usize, bound: BigInt) -> Result<Branch> {
        let q = normalize(q)?;
        let bound = bound.max(structural_bound(&q));
        let m = roots_at(&q, &Rat::from_integer(&bound + 1)).len();
        if index >= m {
            return Err(Error::InvalidBranch(format!(
                "index {} but only {} real branches",
                index, m
            )));
        }
        Ok(Branch { q, index, bound })
    }

    /// `z = num(x) / den(x)`.
    pub fn rational(num: &IntPoly1, den: &IntPoly1) -> Branch {
        assert!(!den.is_zero(), "zero denominator");
        let q = Poly::new(vec![num.negate(), den.clone()]);
        Branch::new(&q, 0, BigInt::zero()).expect("linear branches exist")
    }

    pub fn constant(c: &Rat) -> Branch {
        Branch::rational(
            &IntPoly1::constant(c.numer().clone()),
            &IntPoly1::constant(c.denom().clone()),
        )
    }

    pub fn from_int(n: i64) -> Branch {
        Branch::constant(&int(n))
    }

    pub fn poly_x(p: &IntPoly1) -> Branch {
        Branch::rational(p, &IntPoly1::one())
    }

    /// `z = x`.
    pub fn identity() -> Branch {
        Branch::poly_x(&IntPoly1::var())
    }

    pub fn defining(&self) -> &IntPoly2 {
        &self.q
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    /// The same germ with a larger validity bound.
    pub fn raised(&self, b: &BigInt) -> Branch {
        let mut c = self.clone();
        if b > &c.bound {
            c.bound = b.clone();
        }
        c
    }

    /// `Some((num, den))` when the defining polynomial is linear in `z`.
    pub fn as_rational(&self) -> Option<(IntPoly1, IntPoly1)> {
        (self.q.deg() == 1).then(|| (self.q.coeff(0).negate(), self.q.coeff(1)))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let (n, d) = self.as_rational()?;
        (n.deg() == 0 && d.deg() == 0).then(|| Rat::new(n.coeff(0), d.coeff(0)))
    }

    /// First integer sample past the bound.
    pub fn sample(&self) -> Rat {
        Rat::from_integer(&self.bound + 1)
    }

    /// Exact value at a rational `x0 > bound`.
    pub fn value_at(&self, x0: &Rat) -> RealAlg {
        debug_assert!(x0 > &Rat::from_integer(self.bound.clone()));
        if let Some((n, d)) = self.as_rational() {
            let v = crate::rat::eval_rat(&n, x0) / crate::rat::eval_rat(&d, x0);
            return RealAlg::from_rat(v);
        }
        let roots = roots_at(&self.q, x0);
        roots[self.index].clone()
    }

    /// Exact value at a real algebraic `x > bound`.
    pub fn value_at_alg(&self, x: &RealAlg) -> RealAlg {
        if let Some(r) = x.to_rat() {
            return self.value_at(&r);
        }
        let b = Rat::from_integer(self.bound.clone());
        let mut x = x.clone();
        while x.lo() <= &b {
            x = x.refine();
        }
        // Res_x(m(x), q(x, z)) as a polynomial in z
        let m: IntPoly2 = x.defining().map_coeffs(|c| IntPoly1::constant(c.clone()));
        let r = m.resultant(&self.q.swap_xy());
        let mut lo = self.value_at(x.lo());
        let mut hi = self.value_at(x.hi());
        crate::realalg::identify_with(&r, |_| {
            let t = lo.interval().hull(&hi.interval());
            x = x.refine();
            if let Some(v) = x.to_rat() {
                lo = self.value_at(&v);
                hi = lo.clone();
            } else {
                let w = x.width();
                lo = self.value_at(x.lo()).refine_to(&w);
                hi = self.value_at(x.hi()).refine_to(&w);
            }
            t
        })
    }

    /// Whether this branch is a root branch of `g`, which must divide the
    /// defining polynomial.
    fn is_root_of(&self, g: &IntPoly2) -> bool {
        if g.deg() == 0 {
            return false;
        }
        if g == &self.q {
            return true;
        }
        let x0 = self.sample();
        sign_at_point(g, &x0, &self.value_at(&x0)) == 0
    }

    pub fn neg(&self) -> Branch {
        let q = self.q.reflect().primitive_part();
        let m = roots_at(&self.q, &self.sample()).len();
        Branch {
            q,
            index: m - 1 - self.index,
            bound: self.bound.clone(),
        }
    }
}

/// Eventual order of two branches, with a bound past which it holds.
pub fn compare_eventually_with_bound(a: &Branch, b: &Branch) -> (Ordering, BigInt) {
    if let (Some((n1, d1)), Some((n2, d2))) = (a.as_rational(), b.as_rational()) {
        // sign of n1 d2 - n2 d1 times sign of d1 d2
        let diff = &(&n1 * &d2) - &(&n2 * &d1);
        let bound = past_roots([&diff]).max(a.bound.clone()).max(b.bound.clone());
        let den = &d1 * &d2;
        let s = diff.lead().lead_sign() * den.lead().lead_sign();
        return (s.cmp(&0), bound);
    }
    let g = a.q.gcd(&b.q);
    let mut bound = a.bound.clone().max(b.bound.clone());
    let ga = a.is_root_of(&g);
    let gb = b.is_root_of(&g);
    if !ga && !gb {
        // both are roots of the coprime cofactors; crossings are roots of
        // their resultant
        let u1 = a.q.div_poly(&g).expect("gcd divides");
        let u2 = b.q.div_poly(&g).expect("gcd divides");
        let r = u1.resultant(&u2);
        bound = bound.max(past_roots([&r]));
    }
    let x0 = Rat::from_integer(&bound + 1);
    let ord = a.value_at(&x0).compare(&b.value_at(&x0));
    (ord, bound)
}

pub fn compare_eventually(a: &Branch, b: &Branch) -> Ordering {
    compare_eventually_with_bound(a, b).0
}

/// Eventual sign of `p(x, b(x))`, with a bound past which it holds.
pub fn sign_along(p: &IntPoly2, b: &Branch) -> (i8, BigInt) {
    if p.is_zero() {
        return (0, b.bound.clone());
    }
    if p.deg() == 0 {
        let c = p.coeff(0);
        return (c.lead().lead_sign(), past_roots([&c]).max(b.bound.clone()));
    }
    if let Some((n, d)) = b.as_rational() {
        // d^deg p(x, n/d)
        let k = p.deg();
        let mut acc = IntPoly1::zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            acc = acc.plus(&c.times(&n.pow(j)).times(&d.pow(k - j)));
        }
        let s = acc.lead().lead_sign() * if k % 2 == 1 { d.lead().lead_sign() } else { 1 };
        return (s, past_roots([&acc]).max(b.bound.clone()));
    }
    let g = b.q.gcd(p);
    if b.is_root_of(&g) {
        return (0, b.bound.clone());
    }
    let u = b.q.div_poly(&g).expect("gcd divides");
    let r = u.resultant(p);
    let bound = past_roots([&r]).max(b.bound.clone());
    let x0 = Rat::from_integer(&bound + 1);
    (sign_at_point(p, &x0, &b.value_at(&x0)), bound)
}

pub fn monotone_eventually(b: &Branch) -> Monotone {
    let qx = b.q.derivative_x();
    let (sx, _) = sign_along(&qx, b);
    if sx == 0 {
        return Monotone::Constant;
    }
    let (sz, _) = sign_along(&b.q.derivative(), b);
    match -sx * sz {
        1 => Monotone::Increasing,
        _ => Monotone::Decreasing,
    }
}

pub fn limit_at_infinity(b: &Branch) -> Limit {
    if let Some((n, d)) = b.as_rational() {
        return match n.deg().cmp(&d.deg()) {
            Ordering::Less => Limit::Finite(RealAlg::from_int(0)),
            Ordering::Equal => Limit::Finite(RealAlg::from_rat(Rat::new(n.lead(), d.lead()))),
            Ordering::Greater => {
                if n.lead().lead_sign() == d.lead().lead_sign() {
                    Limit::PosInf
                } else {
                    Limit::NegInf
                }
            }
        };
    }
    // a finite limit L satisfies c(L) = 0, c the top x-coefficient
    let dx = b.q.deg_x();
    let top = b.q.x_coefficients()[dx].clone();
    let m = Rat::from_integer(isolate::cauchy_bound(&top) + 1);
    if compare_eventually(b, &Branch::constant(&m)) == Ordering::Greater {
        return Limit::PosInf;
    }
    if compare_eventually(b, &Branch::constant(&-m.clone())) == Ordering::Less {
        return Limit::NegInf;
    }
    let roots = RealAlg::roots_of(&top).unwrap_or_default();
    for (i, r) in roots.iter().enumerate() {
        let s = if i + 1 < roots.len() {
            r.rational_between(&roots[i + 1])
        } else {
            m.clone()
        };
        if compare_eventually(b, &Branch::constant(&s)) == Ordering::Less {
            return Limit::Finite(r.clone());
        }
    }
    unreachable!("a monotone bounded branch converges to a root of its top coefficient")
}

/// Enclosures of `b(x0)` shrinking with `level`.
pub(crate) struct Enclosure {
    v: RealAlg,
}

impl Enclosure {
    pub(crate) fn new(v: RealAlg) -> Self {
        Enclosure { v }
    }

    pub(crate) fn next(&mut self) -> RatInterval {
        let t = self.v.interval();
        self.v = self.v.refine();
        t
    }
}

/// The branch of `r` through the value enclosed by `target` at the first
/// sample past `max(min_bound, structural bound of r)`.
pub(crate) fn identify_branch<'a>(
    r: &IntPoly2,
    min_bound: &BigInt,
    target: impl FnOnce(&Rat) -> Box<dyn FnMut() -> RatInterval + 'a>,
) -> Result<Branch> {
    let r = normalize(r)?;
    let bound = structural_bound(&r).max(min_bound.clone());
    let x0 = Rat::from_integer(&bound + 1);
    let (p0, _) = specialize_x(&r, &x0);
    let p0 = p0.square_free();
    let mut next = target(&x0);
    let found = loop {
        let t = next();
        let hits = isolate::isolate_in(&p0, &t.lo, &t.hi);
        match hits.len() {
            1 => break hits[0].clone(),
            0 => return Err(Error::InvalidBranch("no root in target enclosure".into())),
            _ => {}
        }
    };
    Ok(Branch {
        index: index_of(&p0, &found),
        q: r,
        bound,
    })
}

/// Number of roots of `p0` strictly below the root isolated by `found`.
pub(crate) fn index_of(p0: &IntPoly1, found: &RatInterval) -> usize {
    let c = Rat::from_integer(isolate::cauchy_bound(p0));
    let below = isolate::isolate_in(p0, &-c, &found.lo).len();
    if found.is_point() {
        below - 1
    } else {
        below
    }
}


impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "branch({}, {}, {})",
            crate::syntax::format_poly2(&self.q, ("x", "z")),
            self.index,
            self.bound
        )
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Branch::from_expr(&crate::syntax::parse_expr(s)?)
    }
}

impl Branch {
    pub fn from_expr(e: &crate::syntax::Expr) -> Result<Self> {
        use crate::syntax::{expect_call, index, poly2, rational};
        let a = expect_call(e, "branch", 3)?;
        let q = poly2(&a[0])?;
        let i = index(&a[1])?;
        let b = crate::rat::ceil(&rational(&a[2])?);
        Branch::new(&q, i, b)
    }
}

#[cfg(test)]
mod tests;
