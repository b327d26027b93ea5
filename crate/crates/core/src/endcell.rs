//! End-cells `{x > alpha, lower(x) < y < upper(x)}` and their refinement.

use crate::branch::{compare_eventually_with_bound, past_roots, Branch};
use crate::error::{Error, Result};
use crate::poly::{IntPoly1, IntPoly2};
use crate::rat::{eval_rat2, int, sign_of, Rat};
use crate::realalg::RealAlg;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndCell {
    alpha: Rat,
    lower: Branch,
    upper: Branch,
}

impl EndCell {
    /// The cell with the given delimiters, `alpha` raised as needed so that
    /// both branches are valid and `lower < upper` holds past it.
    pub fn new(alpha: Rat, lower: Branch, upper: Branch) -> Result<EndCell> {
        let (ord, w) = compare_eventually_with_bound(&lower, &upper);
        if ord != Ordering::Less {
            return Err(Error::InvalidCell(format!(
                "lower {} is not eventually below upper {}",
                lower, upper
            )));
        }
        let floor = w.max(lower.bound().clone()).max(upper.bound().clone());
        Ok(EndCell {
            alpha: alpha.max(Rat::from_integer(floor)),
            lower,
            upper,
        })
    }

    /// `{x > 1, 0 < y < 1}`.
    pub fn initial() -> EndCell {
        EndCell::new(Rat::one(), Branch::from_int(0), Branch::from_int(1)).unwrap()
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn lower(&self) -> &Branch {
        &self.lower
    }

    pub fn upper(&self) -> &Branch {
        &self.upper
    }

    /// Smallest integer at or above `alpha`.
    pub fn alpha_ceil(&self) -> BigInt {
        crate::rat::ceil(&self.alpha)
    }

    pub fn contains(&self, x: &Rat, y: &Rat) -> bool {
        if x <= &self.alpha {
            return false;
        }
        self.lower.value_at(x).compare_rat(y) == Ordering::Less
            && self.upper.value_at(x).compare_rat(y) == Ordering::Greater
    }

    pub fn bump_x_bound(&self, n: &Rat) -> EndCell {
        let mut c = self.clone();
        if n > &c.alpha {
            c.alpha = n.clone();
        }
        c
    }

    /// `lower + r (upper - lower)`.
    pub fn midline(&self, r: &Rat) -> Branch {
        self.lower.mix(&self.upper, r)
    }

    /// `lower + psi (upper - lower)` with `psi(x) = 1 - (alpha / x)^k`.
    pub fn diagonal_curve(&self, k: u32) -> Branch {
        let (a, b) = (self.alpha.numer(), self.alpha.denom());
        let bk = num_traits::Pow::pow(b, k);
        let ak = num_traits::Pow::pow(a, k);
        // psi = (b^k x^k - a^k) / (b^k x^k)
        let den = IntPoly1::monomial(bk.clone(), k as usize);
        let num = &den - &IntPoly1::constant(ak);
        let psi = Branch::rational(&num, &den);
        self.lower.mix_with(&self.upper, &psi)
    }

    pub fn sample_point(&self) -> (Rat, RealAlg) {
        let x = &self.alpha + int(1);
        let y = self.midline(&crate::rat::rat(1, 2)).value_at(&x);
        (x, y)
    }

    /// A rational point strictly inside the cell at `x0 > alpha`.
    pub fn rational_sample_at(&self, x0: &Rat) -> Rat {
        let lo = self.lower.value_at(x0);
        let hi = self.upper.value_at(x0);
        lo.rational_between(&hi)
    }

    /// A sub-cell whose delimiters are rational functions, when one of
    /// them already is.
    pub fn rationalized(&self) -> EndCell {
        let (lo, hi) = match (self.lower.as_rational(), self.upper.as_rational()) {
            (Some(_), None) => (self.lower.clone(), self.lower.toward(&self.upper)),
            (None, Some(_)) => (self.upper.toward(&self.lower), self.upper.clone()),
            _ => return self.clone(),
        };
        EndCell::new(self.alpha.clone(), lo, hi).expect("toward stays strictly inside")
    }

    /// `n` rational interior points, reproducible from `seed`.
    pub fn sample_points(&self, n: usize, seed: u64) -> Vec<(Rat, Rat)> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let x = &self.alpha + Rat::new(rng.gen_range(1..2000).into(), rng.gen_range(1..8).into());
                let lo = self.lower.value_at(&x);
                let hi = self.upper.value_at(&x);
                let m = lo.rational_between(&hi);
                let a = lo.rational_between(&RealAlg::from_rat(m.clone()));
                let b = RealAlg::from_rat(m).rational_between(&hi);
                let t = Rat::new(rng.gen_range(0..=64).into(), 64.into());
                let y = &a + t * (&b - &a);
                (x, y)
            })
            .collect()
    }

    /// A sub-end-cell on which `p` has constant sign, and that sign.
    ///
    /// Delimiters are the branches of `p = 0` lying eventually strictly
    /// between `lower` and `upper`; the subcell is the lowest strip.
    pub fn refine_by_polynomial(&self, p: &IntPoly2) -> (EndCell, i8) {
        if p.is_zero() {
            return (self.clone(), 0);
        }
        let mut alpha = self.alpha.clone();
        let raise = |alpha: &mut Rat, b: BigInt| {
            let b = Rat::from_integer(b);
            if b > *alpha {
                *alpha = b;
            }
        };
        let content = p.x_content();
        raise(&mut alpha, past_roots([&content]));
        let pp = p.primitive_part();
        let mut upper = self.upper.clone();
        if pp.deg() > 0 {
            let (b, branches) = Branch::all(&pp).expect("positive degree in y");
            raise(&mut alpha, b);
            for br in branches {
                let (lo_ord, w1) = compare_eventually_with_bound(&self.lower, &br);
                raise(&mut alpha, w1);
                if lo_ord != Ordering::Less {
                    continue;
                }
                let (hi_ord, w2) = compare_eventually_with_bound(&br, &self.upper);
                raise(&mut alpha, w2);
                if hi_ord == Ordering::Less {
                    // branches come bottom to top: the first inside one
                    // bounds the lowest strip
                    upper = br;
                    break;
                }
            }
        }
        let cell = EndCell::new(alpha, self.lower.clone(), upper).expect("strip has positive width");
        let x0 = &cell.alpha + int(1);
        let y0 = cell.rational_sample_at(&x0);
        let s = sign_of(&eval_rat2(p, &x0, &y0));
        debug_assert!(s != 0);
        (cell, s)
    }
}

impl fmt::Display for EndCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cell({}, {}, {})", self.alpha, self.lower, self.upper)
    }
}

impl std::str::FromStr for EndCell {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        EndCell::from_expr(&crate::syntax::parse_expr(s)?)
    }
}

impl EndCell {
    pub fn from_expr(e: &crate::syntax::Expr) -> Result<Self> {
        let a = crate::syntax::expect_call(e, "cell", 3)?;
        let alpha = crate::syntax::rational(&a[0])?;
        let lower = Branch::from_expr(&a[1])?;
        let upper = Branch::from_expr(&a[2])?;
        EndCell::new(alpha, lower, upper)
    }
}

impl Default for EndCell {
    fn default() -> Self {
        EndCell::initial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::compare_eventually;
    use crate::poly::{poly1, poly2};
    use crate::rat::rat;

    fn sqrt_x() -> Branch {
        "branch(z^2 - x, 1, 0)".parse().unwrap()
    }

    #[test]
    fn initial_cell_membership() {
        let c = EndCell::initial();
        assert_eq!(c.alpha(), &int(1));
        assert!(c.contains(&int(2), &rat(1, 2)));
        assert!(!c.contains(&int(2), &int(3)));
    }

    #[test]
    fn refine_lowest_strip() {
        let c = EndCell::initial();
        let (sub, s) = c.refine_by_polynomial(&poly2(&[(0, 1, 2), (0, 0, -1)]));
        assert_eq!(s, -1);
        assert_eq!(sub.upper().as_constant(), Some(rat(1, 2)));
        let (x, y) = sub.sample_point();
        let v = y.to_rat().unwrap();
        assert_eq!(sign_of(&eval_rat2(&poly2(&[(0, 1, 2), (0, 0, -1)]), &x, &v)), -1);
    }

    #[test]
    fn refine_without_inside_branches() {
        let c = EndCell::initial();
        let (sub, s) = c.refine_by_polynomial(&poly2(&[(1, 0, 1)]));
        assert_eq!((sub.clone(), s), (c.clone(), 1));
        let (sub, s) = c.refine_by_polynomial(&poly2(&[(0, 2, 1), (1, 0, -1)]));
        assert_eq!(s, -1);
        assert_eq!(sub.upper(), c.upper());
        assert_eq!(c.refine_by_polynomial(&IntPoly2::zero()).1, 0);
    }

    #[test]
    fn midlines() {
        let c = EndCell::initial();
        assert_eq!(c.midline(&rat(1, 2)).as_constant(), Some(rat(1, 2)));
        assert_eq!(c.midline(&int(0)), *c.lower());
        let d = EndCell::new(int(4), sqrt_x(), Branch::identity()).unwrap();
        let m = d.midline(&rat(1, 2));
        assert_eq!(m.value_at(&int(9)).to_rat(), Some(int(6)));
    }

    #[test]
    fn diagonals() {
        let c = EndCell::initial();
        let d1 = c.diagonal_curve(1);
        assert_eq!(d1.as_rational(), Some((poly1(&[-1, 1]), poly1(&[0, 1]))));
        let d2 = c.diagonal_curve(2);
        assert_eq!(d2.as_rational(), Some((poly1(&[-1, 0, 1]), poly1(&[0, 0, 1]))));
        let e = EndCell::new(int(1), Branch::from_int(0), Branch::identity()).unwrap();
        assert_eq!(e.diagonal_curve(1).value_at(&int(10)).to_rat(), Some(int(9)));
    }

    #[test]
    fn bumping_and_samples() {
        let c = EndCell::initial();
        let b = c.bump_x_bound(&int(5));
        assert_eq!(b.alpha(), &int(5));
        assert_eq!(c.bump_x_bound(&int(0)), c);
        assert_eq!(b.sample_point(), (int(6), RealAlg::from_rat(rat(1, 2))));
        let d = EndCell::new(int(4), sqrt_x(), Branch::identity()).unwrap();
        let (x, y) = d.sample_point();
        assert_eq!(x, int(5));
        let expect = RealAlg::new(&poly1(&[-5, 0, 1]), int(2), int(3)).unwrap().add(&RealAlg::from_int(5));
        assert_eq!(y, expect.scale(&rat(1, 2)));
    }

    #[test]
    fn nesting() {
        let c = EndCell::initial();
        let p = poly2(&[(1, 2, 4), (0, 0, -1), (1, 1, -1)]);
        let (sub, _) = c.refine_by_polynomial(&p);
        assert!(sub.alpha() >= c.alpha());
        assert_ne!(compare_eventually(c.lower(), sub.lower()), Ordering::Greater);
        assert_ne!(compare_eventually(sub.upper(), c.upper()), Ordering::Greater);
    }

    #[test]
    fn text_round_trip() {
        let c = EndCell::initial();
        let s = c.to_string();
        assert_eq!(s, "cell(1, branch(z, 0, 0), branch(z - 1, 0, 0))");
        assert_eq!(s.parse::<EndCell>().unwrap(), c);
    }
}
