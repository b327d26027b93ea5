//! Exact real algebraic numbers: the field `k`.
//!
//! A [`RealAlg`] is a square-free primitive integer polynomial together with
//! a closed rational interval containing exactly one of its real roots.
//! Every decision (sign, order, equality) is exact: intervals are refined by
//! bisection with rational endpoints and equality goes through polynomial
//! gcds, never through floating point.

pub mod isolate;

use crate::error::{Error, Result};
use crate::poly::{permute, IntPoly1, IntPoly2, IntPoly3, Poly};
use crate::rat::{eval_interval, eval_interval2, eval_rat, floor, int, sign_of, Rat, RatInterval};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

pub use isolate::{isolate_real_roots, max_root_ceiling};

#[derive(Clone, Debug)]
pub struct RealAlg {
    poly: IntPoly1,
    lo: Rat,
    hi: Rat,
}

impl RealAlg {
    pub fn from_rat(r: Rat) -> Self {
        let poly = Poly::new(vec![-r.numer().clone(), r.denom().clone()]);
        RealAlg {
            poly,
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(int(n))
    }

    /// Validated constructor used by the parser: `poly` need not be
    /// square-free, but must have exactly one real root in `[lo, hi]`.
    pub fn new(poly: &IntPoly1, lo: Rat, hi: Rat) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if lo > hi {
            return Err(Error::InvalidAlgebraic("lo > hi".into()));
        }
        let sf = poly.square_free();
        let roots = isolate::isolate_in(&sf, &lo, &hi);
        if roots.len() != 1 {
            return Err(Error::InvalidAlgebraic(format!(
                "{} real roots in [{}, {}]",
                roots.len(),
                lo,
                hi
            )));
        }
        Ok(Self::from_isolating(sf, roots[0].clone()))
    }

    /// Unchecked: `poly` square-free, `iv` from [`isolate::isolate_in`].
    pub(crate) fn from_isolating(poly: IntPoly1, iv: RatInterval) -> Self {
        if iv.is_point() {
            return Self::from_rat(iv.lo);
        }
        if poly.deg() == 1 {
            let r = Rat::new(-poly.coeff(0), poly.coeff(1));
            return Self::from_rat(r);
        }
        let a = RealAlg {
            poly: poly.primitive_part(),
            lo: iv.lo,
            hi: iv.hi,
        };
        a.collapse_rational()
    }

    /// All real roots of `p`, left to right.
    pub fn roots_of(p: &IntPoly1) -> Result<Vec<RealAlg>> {
        let sf = p.square_free();
        Ok(isolate_real_roots(p)?
            .into_iter()
            .map(|iv| Self::from_isolating(sf.clone(), iv))
            .collect())
    }

    /// A rational root of a primitive polynomial has denominator dividing
    /// the leading coefficient; test the one candidate in a short interval.
    fn collapse_rational(self) -> Self {
        let lc = self.poly.lead().abs();
        let step = Rat::new(BigInt::one(), lc.clone());
        let mut a = self;
        while a.width() >= step {
            a = a.refine();
            if a.is_rational() {
                return a;
            }
        }
        let k = crate::rat::ceil(&(&a.lo * Rat::from_integer(lc.clone())));
        let cand = Rat::new(k, lc);
        if a.contains(&cand) && eval_rat(&a.poly, &cand).is_zero() {
            return Self::from_rat(cand);
        }
        a
    }

    pub fn defining(&self) -> &IntPoly1 {
        &self.poly
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.lo.clone())
    }

    fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    /// Halve the isolating interval.
    pub fn refine(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let mid = (&self.lo + &self.hi) / int(2);
        let sm = sign_of(&eval_rat(&self.poly, &mid));
        if sm == 0 {
            return Self::from_rat(mid);
        }
        let sl = sign_of(&eval_rat(&self.poly, &self.lo));
        if sl == sm {
            RealAlg {
                poly: self.poly.clone(),
                lo: mid,
                hi: self.hi.clone(),
            }
        } else {
            RealAlg {
                poly: self.poly.clone(),
                lo: self.lo.clone(),
                hi: mid,
            }
        }
    }

    pub fn refine_to(&self, width: &Rat) -> Self {
        let mut a = self.clone();
        while &a.width() > width {
            a = a.refine();
        }
        a
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        if let Some(r) = self.to_rat() {
            return crate::rat::ceil(&r);
        }
        let mut a = self.clone();
        loop {
            if let Some(r) = a.to_rat() {
                return crate::rat::ceil(&r);
            }
            if floor(&a.lo) == floor(&a.hi) {
                return floor(&a.lo) + 1;
            }
            a = a.refine();
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        -self.neg().ceil()
    }

    /// Exact sign of `q` at this number.
    pub fn sign_at(&self, q: &IntPoly1) -> i8 {
        if let Some(r) = self.to_rat() {
            return sign_of(&eval_rat(q, &r));
        }
        if q.is_zero() {
            return 0;
        }
        let g = q.gcd(&self.poly);
        if g.deg() > 0 && !isolate::isolate_in(&g, &self.lo, &self.hi).is_empty() {
            return 0;
        }
        let mut a = self.clone();
        loop {
            let v = eval_interval(q, &a.interval());
            if !v.contains_zero() {
                return sign_of(&v.lo);
            }
            a = a.refine();
            if let Some(r) = a.to_rat() {
                return sign_of(&eval_rat(q, &r));
            }
        }
    }

    pub fn sign(&self) -> i8 {
        if let Some(r) = self.to_rat() {
            return sign_of(&r);
        }
        // irrational: interval eventually excludes 0
        let mut a = self.clone();
        loop {
            if a.lo.is_positive() {
                return 1;
            }
            if a.hi.is_negative() {
                return -1;
            }
            a = a.refine();
        }
    }

    pub fn compare(&self, other: &RealAlg) -> Ordering {
        if let (Some(a), Some(b)) = (self.to_rat(), other.to_rat()) {
            return a.cmp(&b);
        }
        if let Some(b) = other.to_rat() {
            return self.compare_rat(&b);
        }
        if let Some(a) = self.to_rat() {
            return other.compare_rat(&a).reverse();
        }
        let g = self.poly.gcd(&other.poly);
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if g.deg() > 0 {
                let lo = a.lo.clone().min(b.lo.clone());
                let hi = a.hi.clone().max(b.hi.clone());
                let g_roots = isolate::isolate_in(&g, &lo, &hi).len();
                if g_roots == 1 && a.sign_at(&g) == 0 && b.sign_at(&g) == 0 {
                    return Ordering::Equal;
                }
                if g_roots == 0 {
                    // g has no root near either number: they are distinct
                    // and the loop separates them
                }
            }
            a = a.refine();
            b = b.refine();
        }
    }

    pub fn compare_rat(&self, r: &Rat) -> Ordering {
        if let Some(a) = self.to_rat() {
            return a.cmp(r);
        }
        let mut a = self.clone();
        loop {
            if &a.hi < r {
                return Ordering::Less;
            }
            if &a.lo > r {
                return Ordering::Greater;
            }
            a = a.refine();
            if let Some(v) = a.to_rat() {
                return v.cmp(r);
            }
        }
    }

    /// A rational strictly between `self` and `other` (which must differ).
    pub fn rational_between(&self, other: &RealAlg) -> Rat {
        let (lo, hi) = match self.compare(other) {
            Ordering::Less => (self.clone(), other.clone()),
            Ordering::Greater => (other.clone(), self.clone()),
            Ordering::Equal => panic!("rational_between equal numbers"),
        };
        let (mut lo, mut hi) = (lo, hi);
        loop {
            if lo.hi < hi.lo {
                let m = (&lo.hi + &hi.lo) / int(2);
                // endpoints may coincide with rational values; keep strict
                if lo.compare_rat(&m) == Ordering::Less && hi.compare_rat(&m) == Ordering::Greater {
                    return m;
                }
            }
            lo = lo.refine();
            hi = hi.refine();
        }
    }

    pub fn neg(&self) -> Self {
        if let Some(r) = self.to_rat() {
            return Self::from_rat(-r);
        }
        RealAlg {
            poly: self.poly.reflect().primitive_part(),
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if let Some(r) = self.to_rat() {
            if r.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::from_rat(Rat::one() / r));
        }
        // irrational, hence nonzero; refine until the interval excludes 0
        let mut a = self.clone();
        while a.interval().contains_zero() {
            a = a.refine();
        }
        let (lo, hi) = (Rat::one() / &a.hi, Rat::one() / &a.lo);
        Ok(RealAlg {
            poly: a.poly.reversed().primitive_part(),
            lo,
            hi,
        })
    }

    pub fn add(&self, other: &RealAlg) -> Self {
        if let (Some(a), Some(b)) = (self.to_rat(), other.to_rat()) {
            return Self::from_rat(a + b);
        }
        // Res_v(q(v), p(z - v))
        let zmv: IntPoly2 = Poly::new(vec![IntPoly1::var(), IntPoly1::constant(-BigInt::one())]);
        let shifted = self
            .poly
            .eval_into(&zmv, |c| IntPoly2::constant(IntPoly1::constant(c.clone())));
        let q = other.poly.map_coeffs(|c| IntPoly1::constant(c.clone()));
        let r = q.resultant(&shifted);
        identify(&r, self, other, |x, y| x.add(y))
    }

    pub fn sub(&self, other: &RealAlg) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RealAlg) -> Self {
        if let (Some(a), Some(b)) = (self.to_rat(), other.to_rat()) {
            return Self::from_rat(a * b);
        }
        if self.sign() == 0 || other.sign() == 0 {
            return Self::from_int(0);
        }
        // Res_v(q(v), v^d p(z / v))
        let d = self.poly.deg();
        let hom: IntPoly2 = Poly::new(
            (0..=d)
                .map(|k| {
                    // coefficient of v^k is a_{d-k} z^{d-k}
                    IntPoly1::monomial(self.poly.coeff(d - k), d - k)
                })
                .collect(),
        );
        let q = other.poly.map_coeffs(|c| IntPoly1::constant(c.clone()));
        let r = q.resultant(&hom);
        identify(&r, self, other, |x, y| x.mul(y))
    }

    pub fn div(&self, other: &RealAlg) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Value of an integer polynomial at this number.
    pub fn eval_poly(&self, q: &IntPoly1) -> Self {
        if let Some(r) = self.to_rat() {
            return Self::from_rat(eval_rat(q, &r));
        }
        // Res_v(p(v), z - q(v)) as a polynomial in z
        let zq: IntPoly2 = q
            .map_coeffs(|c| IntPoly1::constant(-c.clone()))
            .plus(&IntPoly2::constant(IntPoly1::var()));
        let p = self.poly.map_coeffs(|c| IntPoly1::constant(c.clone()));
        let r = p.resultant(&zq);
        let mut a = self.clone();
        identify_with(&r, |_| {
            let iv = eval_interval(q, &a.interval());
            a = a.refine();
            iv
        })
    }
}

/// Identify the root of `r` equal to `op(a, b)` by interval arithmetic.
fn identify(
    r: &IntPoly1,
    a: &RealAlg,
    b: &RealAlg,
    op: impl Fn(&RatInterval, &RatInterval) -> RatInterval,
) -> RealAlg {
    let mut a = a.clone();
    let mut b = b.clone();
    identify_with(r, |_| {
        let iv = op(&a.interval(), &b.interval());
        a = a.refine();
        b = b.refine();
        iv
    })
}

/// Find the unique root of `r` that lies in every interval produced by
/// `target`; the intervals must shrink to that root.
pub(crate) fn identify_with(r: &IntPoly1, mut target: impl FnMut(usize) -> RatInterval) -> RealAlg {
    assert!(!r.is_zero(), "identify_with: zero polynomial");
    let sf = r.square_free();
    for level in 0.. {
        let t = target(level);
        let roots = isolate::isolate_in(&sf, &t.lo, &t.hi);
        match roots.len() {
            1 => return RealAlg::from_isolating(sf, roots[0].clone()),
            0 => panic!("identify_with: target interval contains no root"),
            _ => {}
        }
    }
    unreachable!()
}

/// Exact value of `p(x, y)` at algebraic `x`, `y`.
pub fn eval2(p: &IntPoly2, x: &RealAlg, y: &RealAlg) -> RealAlg {
    if let Some(xr) = x.to_rat() {
        // p(xr, v) has rational coefficients: clear denominators
        let (num, den) = specialize_x(p, &xr);
        let val = y.eval_poly(&num);
        return RealAlg::from_rat(Rat::one() / Rat::from_integer(den)).mul_rat_fast(&val);
    }
    if let Some(yr) = y.to_rat() {
        let (num, den) = specialize_x(&p.swap_xy(), &yr);
        let val = x.eval_poly(&num);
        return RealAlg::from_rat(Rat::one() / Rat::from_integer(den)).mul_rat_fast(&val);
    }
    // z - p(u, v) in Z[z][v][u]: variables [u, v, z]
    let pz: IntPoly3 = permute(p, &[1, 0]);
    let z: IntPoly3 = IntPoly3::constant(IntPoly2::constant(IntPoly1::var()));
    let e = z.minus(&pz);
    let pu: IntPoly3 = x
        .poly
        .map_coeffs(|c| IntPoly2::constant(IntPoly1::constant(c.clone())));
    let inner: IntPoly2 = pu.resultant(&e);
    let pv: IntPoly2 = y.poly.map_coeffs(|c| IntPoly1::constant(c.clone()));
    let r = pv.resultant(&inner);
    let mut a = x.clone();
    let mut b = y.clone();
    identify_with(&r, |_| {
        let iv = eval_interval2(p, &a.interval(), &b.interval());
        a = a.refine();
        b = b.refine();
        iv
    })
}

impl RealAlg {
    fn mul_rat_fast(&self, other: &RealAlg) -> RealAlg {
        match self.to_rat() {
            Some(c) => other.scale(&c),
            None => self.mul(other),
        }
    }

    /// Multiply by a rational constant.
    pub fn scale(&self, c: &Rat) -> RealAlg {
        if let Some(r) = self.to_rat() {
            return Self::from_rat(r * c);
        }
        if c.is_zero() {
            return Self::from_int(0);
        }
        // p(z / c) scaled to integers: coefficient a_i * n^(d-i) * ... with c = n/m
        // root w = c*v  =>  v = w m / n,  sum a_i (m w)^i n^(d-i)
        let d = self.poly.deg();
        let (n, m) = (c.numer().clone(), c.denom().clone());
        let poly = Poly::new(
            (0..=d)
                .map(|i| self.poly.coeff(i) * Pow::pow(&m, i) * Pow::pow(&n, d - i))
                .collect(),
        )
        .primitive_part();
        let (lo, hi) = if c.is_positive() {
            (&self.lo * c, &self.hi * c)
        } else {
            (&self.hi * c, &self.lo * c)
        };
        RealAlg { poly, lo, hi }
    }

    /// Add a rational constant.
    pub fn shift(&self, c: &Rat) -> RealAlg {
        if let Some(r) = self.to_rat() {
            return Self::from_rat(r + c);
        }
        // p(z - c)
        let poly = isolate::affine_substitute(&self.poly, &-c.clone(), &Rat::one()).primitive_part();
        RealAlg {
            poly,
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }
}

use num_traits::Pow;

/// `p(x0, y) = num(y) / den` with integer `num` and positive `den`.
pub(crate) fn specialize_x(p: &IntPoly2, x0: &Rat) -> (IntPoly1, BigInt) {
    let dx = p.deg_x();
    let (n, d) = (x0.numer(), x0.denom());
    let npow: Vec<BigInt> = (0..=dx).map(|i| Pow::pow(n, i)).collect();
    let dpow: Vec<BigInt> = (0..=dx).map(|i| Pow::pow(d, i)).collect();
    let num = Poly::new(
        p.coeffs()
            .iter()
            .map(|c| {
                c.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * &npow[i] * &dpow[dx - i])
                    .sum::<BigInt>()
            })
            .collect(),
    );
    (num, dpow[dx].clone())
}

impl PartialEq for RealAlg {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealAlg {}

impl PartialOrd for RealAlg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlg {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rat() {
            Some(r) => write!(f, "{}", r),
            None => write!(
                f,
                "alg({}, {}, {})",
                crate::syntax::format_poly1(&self.poly, "x"),
                self.lo,
                self.hi
            ),
        }
    }
}
