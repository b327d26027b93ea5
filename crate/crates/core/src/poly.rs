//! Dense univariate polynomials over a [`Ring`], nested to get several
//! variables.
//!
//! `Poly<BigInt>` is a polynomial in `x`; `Poly<Poly<BigInt>>` is a
//! polynomial in a second variable (`y`, or `z` for branch equations) whose
//! coefficients are polynomials in `x`. Deeper nesting adds auxiliary
//! variables for elimination. The outermost variable always comes first in
//! flattened exponent vectors.

use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

/// Integer polynomial in one variable.
pub type IntPoly1 = Poly<BigInt>;
/// Integer polynomial in `(x, y)`: outer variable `y`, coefficients in `Z[x]`.
pub type IntPoly2 = Poly<IntPoly1>;
/// Three variables: outer auxiliary variable over `Z[x][y]`.
pub type IntPoly3 = Poly<IntPoly2>;
/// Four variables.
pub type IntPoly4 = Poly<IntPoly3>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly::new(vec![R::zero(), R::one()])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if Zero::is_zero(self) {
            return self.clone();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval(&self, at: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(at).plus(c);
        }
        acc
    }

    /// Horner evaluation in an extension ring `S` via a coefficient embedding.
    pub fn eval_into<S: Ring>(&self, at: &S, embed: impl Fn(&R) -> S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(at).plus(&embed(c));
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    /// `p(-var)`.
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c.negate() } else { c.clone() })
                .collect(),
        )
    }

    /// `var^deg * p(1/var)`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(v)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return self.clone(),
        };
        let lcb = b.lead();
        let mut r = self.clone();
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            r = r.scale(&lcb).minus(&b.shift(dr - db).scale(&lr));
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&lcb.pow(e));
        }
        r
    }

    /// Sign-preserving pseudo-remainder: scales by `|lc(b)|^k` only.
    pub fn sprem(&self, b: &Self) -> Self {
        let r = self.prem(b);
        let (da, db) = (self.deg(), b.deg());
        if da < db {
            return r;
        }
        let e = da - db + 1;
        if b.lead().lead_sign() < 0 && e % 2 == 1 {
            r.negate()
        } else {
            r
        }
    }

    /// Divide every coefficient exactly by a scalar.
    pub fn div_scalar(&self, c: &R) -> Option<Self> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a.div_exact(c)?);
        }
        Some(Poly::new(v))
    }

    /// Exact quotient by another polynomial, `None` if not divisible.
    pub fn div_poly(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if Zero::is_zero(self) {
            return Some(self.clone());
        }
        let dn = self.deg();
        if dn < dd {
            return None;
        }
        let lcd = d.lead();
        let mut r = self.clone();
        let mut q = vec![R::zero(); dn - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let c = r.lead().div_exact(&lcd)?;
            r = r.minus(&d.shift(dr - dd).scale(&c));
            q[dr - dd] = c;
        }
        Some(Poly::new(q))
    }

    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd_with(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, with positive leading sign.
    pub fn primitive_part(&self) -> Self {
        if Zero::is_zero(self) {
            return self.clone();
        }
        let c = self.content();
        self.div_scalar(&c)
            .expect("content divides every coefficient")
            .sign_normalized()
    }

    /// Greatest common divisor via the subresultant remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if Zero::is_zero(self) {
            return other.sign_normalized();
        }
        if Zero::is_zero(other) {
            return self.sign_normalized();
        }
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        let ca = a.content();
        let cb = b.content();
        let d = ca.gcd_with(&cb);
        a = a.div_scalar(&ca).unwrap();
        b = b.div_scalar(&cb).unwrap();
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let delta = a.deg() - b.deg();
            let r = a.prem(&b);
            if Zero::is_zero(&r) {
                break;
            }
            if r.deg() == 0 {
                b = Poly::one();
                break;
            }
            a = b;
            b = r
                .div_scalar(&g.times(&h.pow(delta)))
                .expect("subresultant division is exact");
            g = a.lead();
            h = subres_h(&h, &g, delta);
        }
        b.primitive_part().scale(&d).sign_normalized()
    }

    /// Resultant via the subresultant algorithm.
    pub fn resultant(&self, other: &Self) -> R {
        if Zero::is_zero(self) || Zero::is_zero(other) {
            return R::zero();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut neg = false;
        if a.deg() < b.deg() {
            if (a.deg() * b.deg()) % 2 == 1 {
                neg = true;
            }
            std::mem::swap(&mut a, &mut b);
        }
        if b.deg() == 0 {
            let r = b.lead().pow(a.deg());
            return if neg { r.negate() } else { r };
        }
        let ca = a.content();
        let cb = b.content();
        let t = ca.pow(b.deg()).times(&cb.pow(a.deg()));
        a = a.div_scalar(&ca).unwrap();
        b = b.div_scalar(&cb).unwrap();
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            let delta = da - db;
            if da % 2 == 1 && db % 2 == 1 {
                neg = !neg;
            }
            let r = a.prem(&b);
            if Zero::is_zero(&r) {
                return R::zero();
            }
            a = b;
            b = r
                .div_scalar(&g.times(&h.pow(delta)))
                .expect("subresultant division is exact");
            g = a.lead();
            h = subres_h(&h, &g, delta);
            if b.deg() == 0 {
                break;
            }
        }
        let da = a.deg();
        let hf = if da <= 1 {
            b.lead().pow(da)
        } else {
            b.lead()
                .pow(da)
                .div_exact(&h.pow(da - 1))
                .expect("subresultant division is exact")
        };
        let r = t.times(&hf);
        if neg {
            r.negate()
        } else {
            r
        }
    }

    /// `self / gcd(self, self')`, primitive with positive leading sign.
    pub fn square_free(&self) -> Self {
        if self.deg() == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            return self.primitive_part();
        }
        self.div_poly(&g)
            .expect("gcd divides the polynomial")
            .primitive_part()
    }
}

fn subres_h<R: Ring>(h: &R, g: &R, delta: usize) -> R {
    match delta {
        0 => h.clone(),
        1 => g.clone(),
        _ => g
            .pow(delta)
            .div_exact(&h.pow(delta - 1))
            .expect("subresultant division is exact"),
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        self.plus(&rhs)
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        self.times(&rhs)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn from_i64(n: i64) -> Self {
        Poly::constant(R::from_i64(n))
    }
    fn plus(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).plus(&rhs.coeff(i))).collect())
    }
    fn minus(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).minus(&rhs.coeff(i))).collect())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].plus(&a.times(b));
                }
            }
        }
        Poly::new(v)
    }
    fn negate(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.negate()).collect())
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_poly(rhs)
    }
    fn gcd_with(&self, rhs: &Self) -> Self {
        self.gcd(rhs)
    }
    fn lead_sign(&self) -> i8 {
        self.coeffs.last().map_or(0, |c| c.lead_sign())
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        self.plus(rhs)
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        self.minus(rhs)
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        self.times(rhs)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.negate()
    }
}

/// Conversion to and from a sparse list of `(exponents, coefficient)` terms,
/// outermost variable first. Used to permute variables.
pub trait Flat: Ring {
    const VARS: usize;
    fn terms(&self) -> Vec<(Vec<u32>, BigInt)>;
    fn from_terms(terms: &[(Vec<u32>, BigInt)]) -> Self;
}

impl Flat for BigInt {
    const VARS: usize = 0;
    fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        if Zero::is_zero(self) {
            vec![]
        } else {
            vec![(vec![], self.clone())]
        }
    }
    fn from_terms(terms: &[(Vec<u32>, BigInt)]) -> Self {
        terms.iter().map(|(_, c)| c).sum()
    }
}

impl<R: Flat> Flat for Poly<R> {
    const VARS: usize = R::VARS + 1;
    fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            for (mut e, v) in c.terms() {
                e.insert(0, i as u32);
                out.push((e, v));
            }
        }
        out
    }
    fn from_terms(terms: &[(Vec<u32>, BigInt)]) -> Self {
        let mut groups: BTreeMap<u32, Vec<(Vec<u32>, BigInt)>> = BTreeMap::new();
        for (e, c) in terms {
            groups
                .entry(e[0])
                .or_default()
                .push((e[1..].to_vec(), c.clone()));
        }
        let n = groups.keys().next_back().map_or(0, |k| *k as usize + 1);
        let mut v = vec![R::zero(); n];
        for (k, g) in groups {
            v[k as usize] = R::from_terms(&g);
        }
        Poly::new(v)
    }
}

/// Rebuild `a` in another nesting; `perm[i]` is the position in the output
/// exponent vector of input variable `i`. Output variables not hit get
/// exponent 0.
pub fn permute<A: Flat, B: Flat>(a: &A, perm: &[usize]) -> B {
    assert_eq!(perm.len(), A::VARS);
    let terms: Vec<_> = a
        .terms()
        .into_iter()
        .map(|(e, c)| {
            let mut out = vec![0u32; B::VARS];
            for (i, &p) in perm.iter().enumerate() {
                out[p] += e[i];
            }
            (out, c)
        })
        .collect();
    B::from_terms(&terms)
}

/// Build an [`IntPoly2`] from `(x-exponent, y-exponent, coefficient)` triples.
pub fn poly2(terms: &[(u32, u32, i64)]) -> IntPoly2 {
    let t: Vec<_> = terms
        .iter()
        .map(|&(i, j, c)| (vec![j, i], BigInt::from(c)))
        .collect();
    IntPoly2::from_terms(&t)
}

/// Build an [`IntPoly1`] from small integer coefficients, constant first.
pub fn poly1(c: &[i64]) -> IntPoly1 {
    Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
}

impl IntPoly2 {
    /// Embed a polynomial in `x` as a constant in `y`.
    pub fn from_x(p: &IntPoly1) -> Self {
        Poly::constant(p.clone())
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff_xy(&self, i: usize, j: usize) -> BigInt {
        self.coeff(j).coeff(i)
    }

    /// Degree in `x` (maximum over the `y`-coefficients).
    pub fn deg_x(&self) -> usize {
        self.coeffs().iter().map(|c| c.deg()).max().unwrap_or(0)
    }

    /// Swap the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        permute(self, &[1, 0])
    }

    /// Coefficients of the powers of `x`, as polynomials in `y`.
    pub fn x_coefficients(&self) -> Vec<IntPoly1> {
        let swapped = self.swap_xy();
        swapped.coeffs().to_vec()
    }

    pub fn derivative_x(&self) -> Self {
        self.map_coeffs(|c| c.derivative())
    }

    pub fn derivative_y(&self) -> Self {
        self.derivative()
    }

    /// Total degree.
    pub fn total_degree(&self) -> usize {
        self.terms()
            .iter()
            .map(|(e, _)| (e[0] + e[1]) as usize)
            .max()
            .unwrap_or(0)
    }

    /// Content over `Z[x]` as a polynomial in `x`.
    pub fn x_content(&self) -> IntPoly1 {
        self.content()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_exact_division() {
        // (x-1)^2 (x+3) and (x-1)(x+2)
        let a = &(&poly1(&[-1, 1]) * &poly1(&[-1, 1])) * &poly1(&[3, 1]);
        let b = &poly1(&[-1, 1]) * &poly1(&[2, 1]);
        assert_eq!(a.gcd(&b), poly1(&[-1, 1]));
        assert_eq!(a.square_free(), &poly1(&[-1, 1]) * &poly1(&[3, 1]));
        assert!(a.div_poly(&poly1(&[2, 1])).is_none());
    }

    #[test]
    fn integer_resultants() {
        // Res(x^2 - 2, x - 1) = 1 - 2 = -1
        assert_eq!(
            poly1(&[-2, 0, 1]).resultant(&poly1(&[-1, 1])),
            BigInt::from(-1)
        );
        // common root
        assert_eq!(
            poly1(&[-4, 0, 1]).resultant(&poly1(&[-2, 1])),
            BigInt::from(0)
        );
        // Res(x^2+1, x^2-1) = 4 via Sylvester determinant
        assert_eq!(
            poly1(&[1, 0, 1]).resultant(&poly1(&[-1, 0, 1])),
            BigInt::from(4)
        );
    }

    #[test]
    fn bivariate_gcd_in_nested_ring() {
        // (y - x)(y + 1) and (y - x)(y - 2)
        let f = poly2(&[(0, 1, 1), (1, 0, -1)]);
        let a = &f * &poly2(&[(0, 1, 1), (0, 0, 1)]);
        let b = &f * &poly2(&[(0, 1, 1), (0, 0, -2)]);
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn permute_swaps_variables() {
        let p = poly2(&[(2, 1, 3), (0, 0, 1)]);
        let q = p.swap_xy();
        assert_eq!(q, poly2(&[(1, 2, 3), (0, 0, 1)]));
        assert_eq!(q.swap_xy(), p);
    }
}
