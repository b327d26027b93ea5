//! Canonical enumerations of polynomials and rational maps.
//!
//! Height of a polynomial: total degree plus the sum of the absolute values
//! of its coefficients; the zero polynomial has height 0. Within one height,
//! lower total degree comes first, then coefficient vectors are compared
//! lexicographically, larger first, over the monomials in graded order
//! `x^d, x^(d-1) y, ..., y^d, x^(d-1), ..., 1`.
//!
//! Polynomials are listed in canonical form: integer content 1 and a
//! positive leading coefficient in `y` (recursively in `x`). Constants are
//! skipped.
//!
//! Maps are listed as displacements `(x + a1/b1, y + a2/b2)`, each fraction
//! in lowest terms with `b` canonical; the height of a fraction is
//! `height(a) + height(b)`, of a map the sum over both fractions. Within one
//! height the first fraction's height increases, then each fraction follows
//! its own order (numerator height, numerator, denominator).

use crate::maplemma::RationalMap2;
use crate::poly::{IntPoly1, IntPoly2};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Reverse;

pub fn height(p: &IntPoly2) -> usize {
    if p.is_zero() {
        return 0;
    }
    let mut s = BigInt::zero();
    for cy in p.coeffs() {
        for c in cy.coeffs() {
            s += c.abs();
        }
    }
    let s: usize = s.try_into().unwrap_or(usize::MAX / 2);
    p.total_degree() + s
}

/// `x^d, x^(d-1) y, ..., y^d, x^(d-1), ..., 1` as `(i, j)` exponent pairs.
fn monomials(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for t in (0..=d).rev() {
        for j in 0..=t {
            out.push((t - j, j));
        }
    }
    out
}

fn build(mons: &[(usize, usize)], cs: &[i64]) -> IntPoly2 {
    let d = mons.iter().map(|m| m.1).max().unwrap_or(0);
    let mut rows = vec![vec![BigInt::zero(); mons.len()]; d + 1];
    for (&(i, j), &c) in mons.iter().zip(cs) {
        rows[j][i] += c;
    }
    IntPoly2::new(rows.into_iter().map(IntPoly1::new).collect())
}

/// All polynomials of height `h` in enumeration order.
pub fn polys_of_height(h: usize) -> Vec<IntPoly2> {
    if h == 0 {
        return vec![IntPoly2::zero()];
    }
    let mut out = Vec::new();
    for d in 0..h {
        let s = (h - d) as i64;
        let mons = monomials(d);
        let top = d + 1; // monomials of degree exactly d come first
        let mut vecs = Vec::new();
        let mut cur = vec![0i64; mons.len()];
        distribute(&mut cur, 0, s, &mut vecs);
        vecs.retain(|v| v[..top].iter().any(|&c| c != 0));
        vecs.sort_by_key(|v| Reverse(v.clone()));
        out.extend(vecs.iter().map(|v| build(&mons, v)));
    }
    out
}

fn distribute(cur: &mut Vec<i64>, pos: usize, left: i64, out: &mut Vec<Vec<i64>>) {
    if pos == cur.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for m in 0..=left {
        for sign in if m == 0 { vec![1] } else { vec![1, -1] } {
            cur[pos] = sign * m;
            distribute(cur, pos + 1, left - m, out);
        }
    }
    cur[pos] = 0;
}

/// Gcd of the integer coefficients.
pub fn int_content(p: &IntPoly2) -> BigInt {
    let mut g = BigInt::zero();
    for cy in p.coeffs() {
        for c in cy.coeffs() {
            g = g.gcd(c);
        }
    }
    g
}

/// Integer content 1 and positive leading sign.
pub fn canonical(p: &IntPoly2) -> IntPoly2 {
    let c = int_content(p);
    if c.is_zero() {
        return p.clone();
    }
    p.map_coeffs(|cy| cy.div_scalar(&c).unwrap()).sign_normalized()
}

fn is_canonical(p: &IntPoly2) -> bool {
    p.lead_sign() > 0 && int_content(p).is_one()
}

/// `i`-th nonconstant canonical polynomial.
pub fn enum_polynomial(i: usize) -> IntPoly2 {
    let mut left = i;
    for h in 2.. {
        let level: Vec<IntPoly2> = polys_of_height(h)
            .into_iter()
            .filter(|p| p.total_degree() > 0 && is_canonical(p))
            .collect();
        if left < level.len() {
            return level[left].clone();
        }
        left -= level.len();
    }
    unreachable!()
}

/// Position of the canonical form of `p` in [`enum_polynomial`], `None`
/// for constants.
pub fn polynomial_index(p: &IntPoly2) -> Option<usize> {
    if p.total_degree() == 0 {
        return None;
    }
    let c = canonical(p);
    let h = height(&c);
    let mut before = 0;
    for k in 2..=h {
        let level = polys_of_height(k)
            .into_iter()
            .filter(|q| q.total_degree() > 0 && is_canonical(q));
        if k < h {
            before += level.count();
        } else {
            let pos = level.into_iter().position(|q| q == c)?;
            return Some(before + pos);
        }
    }
    None
}

/// Fractions `a / b` of height `h` in lowest terms with `b` canonical.
pub fn fractions_of_height(h: usize) -> Vec<(IntPoly2, IntPoly2)> {
    let mut out = Vec::new();
    for ha in 0..h {
        let nums = polys_of_height(ha);
        let dens: Vec<IntPoly2> = polys_of_height(h - ha).into_iter().filter(is_canonical).collect();
        for a in &nums {
            for b in &dens {
                if a.gcd(b).is_one() {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

fn displaced(a1: &IntPoly2, b1: &IntPoly2, a2: &IntPoly2, b2: &IntPoly2) -> RationalMap2 {
    let x = IntPoly2::constant(IntPoly1::var());
    let y = IntPoly2::var();
    RationalMap2::new(x.times(b1).plus(a1), b1.clone(), y.times(b2).plus(a2), b2.clone())
        .expect("canonical denominators are nonzero")
}

/// `i`-th rational map; `enum_map(0)` is the identity.
pub fn enum_map(i: usize) -> RationalMap2 {
    let mut left = i;
    let mut fracs: Vec<Vec<(IntPoly2, IntPoly2)>> = vec![Vec::new()];
    for total in 2.. {
        fracs.push(fractions_of_height(total - 1));
        for h1 in 1..total {
            let (f1, f2) = (&fracs[h1], &fracs[total - h1]);
            let n = f1.len() * f2.len();
            if left < n {
                let (a1, b1) = &f1[left / f2.len()];
                let (a2, b2) = &f2[left % f2.len()];
                return displaced(a1, b1, a2, b2);
            }
            left -= n;
        }
    }
    unreachable!()
}
