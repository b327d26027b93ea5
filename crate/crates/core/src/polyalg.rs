//! Elimination and root counting for integer polynomials in `x, y`.

use crate::error::{Error, Result};
use crate::poly::{IntPoly1, IntPoly2};
use crate::rat::{eval_rat, sign_of, Rat};
use crate::ring::Ring;
use num_traits::Zero;

pub use crate::realalg::eval2;

/// The variable being eliminated or differentiated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    /// The second variable, also written `z`.
    Y,
}

fn in_y(p: &IntPoly2, v: Var) -> IntPoly2 {
    match v {
        Var::Y => p.clone(),
        Var::X => p.swap_xy(),
    }
}

/// Resultant with respect to `v`, a polynomial in the other variable.
pub fn resultant(p: &IntPoly2, q: &IntPoly2, v: Var) -> Result<IntPoly1> {
    let (p, q) = (in_y(p, v), in_y(q, v));
    if p.is_zero() || q.is_zero() || (p.deg() == 0 && q.deg() == 0) {
        return Err(Error::ConstantInVariable);
    }
    Ok(p.resultant(&q))
}

/// `Res(p, dp/dv)`, without the leading-coefficient normalization.
pub fn discriminant(p: &IntPoly2, v: Var) -> Result<IntPoly1> {
    let p = in_y(p, v);
    if p.is_zero() || p.deg() == 0 {
        return Err(Error::ConstantInVariable);
    }
    Ok(p.resultant(&p.derivative()))
}

/// Negative-remainder sequence of the square-free part, each element made
/// primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain(pub Vec<IntPoly1>);

pub fn sturm_chain(p: &IntPoly1) -> SturmChain {
    if p.is_zero() {
        return SturmChain(Vec::new());
    }
    let p0 = p.square_free();
    let mut chain = vec![p0.clone()];
    if p0.deg() == 0 {
        return SturmChain(chain);
    }
    let mut a = p0;
    let mut b = a.derivative().primitive_part();
    while !b.is_zero() {
        chain.push(b.clone());
        // sprem keeps the sign of the true remainder
        let r = a.sprem(&b).negate();
        a = b;
        b = if r.is_zero() {
            r
        } else {
            let c = r.content();
            r.div_scalar(&c).unwrap()
        };
    }
    SturmChain(chain)
}

impl SturmChain {
    fn variations_at(&self, x: &Rat) -> usize {
        let signs = self.0.iter().map(|q| sign_of(&eval_rat(q, x)));
        count_changes(signs)
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        let signs = self.0.iter().map(|q| {
            let s = q.lead().lead_sign();
            if !positive && q.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        });
        count_changes(signs)
    }

    /// Distinct real roots in `(lo, hi]`; when `lo == hi`, whether `lo`
    /// itself is a root.
    pub fn count(&self, lo: &Rat, hi: &Rat) -> usize {
        if self.0.is_empty() {
            return 0;
        }
        if lo == hi {
            return usize::from(eval_rat(&self.0[0], lo).is_zero());
        }
        let (a, b) = (self.variations_at(lo), self.variations_at(hi));
        a.saturating_sub(b)
    }

    /// Total number of distinct real roots.
    pub fn count_all(&self) -> usize {
        if self.0.is_empty() {
            return 0;
        }
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

pub fn sturm_count(chain: &SturmChain, lo: &Rat, hi: &Rat) -> usize {
    chain.count(lo, hi)
}
