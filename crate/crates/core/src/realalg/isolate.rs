//! Real root isolation by Descartes' rule of signs with bisection.

use crate::error::{Error, Result};
use crate::poly::{IntPoly1, Poly};
use crate::rat::{eval_rat, int, Rat, RatInterval};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer polynomial proportional (by a positive factor) to `p(a + b t)`.
pub fn affine_substitute(p: &IntPoly1, a: &Rat, b: &Rat) -> IntPoly1 {
    let n = p.deg();
    // x = (u + v t) / w
    let w = a.denom() * b.denom();
    let u = a.numer() * b.denom();
    let v = b.numer() * a.denom();
    let lin = Poly::new(vec![u, v]);
    let mut acc = IntPoly1::zero();
    let mut wpow = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        wpow[i] = &wpow[i - 1] * &w;
    }
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        acc = acc
            .times(&lin)
            .plus(&IntPoly1::constant(c * &wpow[n - i]));
    }
    let c = acc.content();
    if c.is_zero() {
        acc
    } else {
        acc.div_scalar(&c).unwrap()
    }
}

/// In-place Taylor shift `p(t) -> p(t + 1)`.
fn taylor_shift_one(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let next = a[j + 1].clone();
            a[j] += next;
        }
    }
}

fn sign_variations(a: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for c in a {
        let s = c.lead_sign();
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Descartes bound on the number of roots in `(0, 1)`.
fn descartes_01(q: &IntPoly1) -> usize {
    let mut a: Vec<BigInt> = q.coeffs().iter().rev().cloned().collect();
    taylor_shift_one(&mut a);
    sign_variations(&a)
}

/// `2^n q(t/2)`.
fn halve_var(q: &IntPoly1) -> IntPoly1 {
    let n = q.deg();
    Poly::new(
        q.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c << (n - i))
            .collect(),
    )
}

/// Bisection on `(lo, hi)`; `q` is the polynomial pulled back to `(0, 1)`.
/// A dirty endpoint is a root of the original polynomial, so an interval
/// touching one is split further before it is reported.
fn vca(q: IntPoly1, lo: Rat, hi: Rat, dirty: (bool, bool), out: &mut Vec<RatInterval>) {
    if q.deg() == 0 {
        return;
    }
    match descartes_01(&q) {
        0 => {}
        1 if !dirty.0 && !dirty.1 => out.push(RatInterval::new(lo, hi)),
        _ => {
            let mid = (&lo + &hi) / int(2);
            let left = halve_var(&q);
            let mut right = left.coeffs().to_vec();
            taylor_shift_one(&mut right);
            let mut right = Poly::new(right);
            let mid_root = right.coeff(0).is_zero();
            if mid_root {
                right = Poly::new(right.coeffs()[1..].to_vec());
            }
            vca(left, lo, mid.clone(), (dirty.0, mid_root), out);
            if mid_root {
                out.push(RatInterval::point(mid.clone()));
            }
            vca(right, mid, hi, (mid_root, dirty.1), out);
        }
    }
}

/// Isolating intervals for the real roots of a square-free `p` inside the
/// closed interval `[lo, hi]`, ordered left to right. Non-degenerate
/// intervals have endpoints that are not roots of `p`.
pub fn isolate_in(p: &IntPoly1, lo: &Rat, hi: &Rat) -> Vec<RatInterval> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    if lo == hi {
        if eval_rat(p, lo).is_zero() {
            out.push(RatInterval::point(lo.clone()));
        }
        return out;
    }
    let lo_root = eval_rat(p, lo).is_zero();
    let hi_root = eval_rat(p, hi).is_zero();
    let mut q = affine_substitute(p, lo, &(hi - lo));
    if lo_root {
        q = q.div_poly(&Poly::var()).expect("t divides q");
    }
    if hi_root {
        q = q
            .div_poly(&Poly::new(vec![-BigInt::one(), BigInt::one()]))
            .expect("t - 1 divides q");
    }
    if lo_root {
        out.push(RatInterval::point(lo.clone()));
    }
    vca(q, lo.clone(), hi.clone(), (lo_root, hi_root), &mut out);
    if hi_root {
        out.push(RatInterval::point(hi.clone()));
    }
    out
}

/// Integer `B` with every real root of `p` in `(-B, B)`.
pub fn cauchy_bound(p: &IntPoly1) -> BigInt {
    let lc = p.lead().abs();
    let m = p.coeffs()[..p.deg()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    BigInt::one() + (m + &lc - BigInt::one()) / lc + BigInt::one()
}

/// One isolating interval per distinct real root of `p`, left to right.
pub fn isolate_real_roots(p: &IntPoly1) -> Result<Vec<RatInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.square_free();
    if sf.deg() == 0 {
        return Ok(Vec::new());
    }
    let b = Rat::from_integer(cauchy_bound(&sf));
    Ok(isolate_in(&sf, &-b.clone(), &b))
}

/// Smallest integer `n` with every real root of `p` at most `n`; `None`
/// when `p` has no real roots (or is a nonzero constant).
pub fn max_root_ceiling(p: &IntPoly1) -> Option<BigInt> {
    if p.is_zero() || p.deg() == 0 {
        return None;
    }
    let roots = isolate_real_roots(p).ok()?;
    let last = roots.last()?;
    // tighten the last interval so its ceiling is exact when possible
    let sf = p.square_free();
    let alpha = super::RealAlg::from_isolating(sf, last.clone());
    Some(alpha.ceil())
}
