//! Shrinking an end-cell so that a rational map either is the identity on
//! it or moves it off itself.

use crate::branch::{
    compare_eventually, compare_eventually_with_bound, limit_at_infinity, past_roots, Branch,
    Limit,
};
use crate::endcell::EndCell;
use crate::error::{Error, Result};
use crate::poly::{Flat, IntPoly1, IntPoly2, IntPoly3};
use crate::rat::{rat, Rat};
use crate::ring::Ring;
use crate::syntax::{expect_call, format_poly2, frac2, parse_expr, Expr};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `F = (p1 / q1, p2 / q2)`, each quotient in lowest terms with a
/// denominator of positive leading sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap2 {
    pub p1: IntPoly2,
    pub q1: IntPoly2,
    pub p2: IntPoly2,
    pub q2: IntPoly2,
}

fn lowest_terms(p: &IntPoly2, q: &IntPoly2) -> (IntPoly2, IntPoly2) {
    let g = p.gcd(q);
    let (p, q) = (p.div_poly(&g).unwrap(), q.div_poly(&g).unwrap());
    if q.lead_sign() < 0 {
        (p.negate(), q.negate())
    } else {
        (p, q)
    }
}

impl RationalMap2 {
    pub fn new(p1: IntPoly2, q1: IntPoly2, p2: IntPoly2, q2: IntPoly2) -> Result<Self> {
        if q1.is_zero() || q2.is_zero() {
            return Err(Error::InvalidMap("zero denominator".into()));
        }
        let (p1, q1) = lowest_terms(&p1, &q1);
        let (p2, q2) = lowest_terms(&p2, &q2);
        Ok(RationalMap2 { p1, q1, p2, q2 })
    }

    pub fn identity() -> Self {
        let one = IntPoly2::one();
        RationalMap2::new(crate::poly::poly2(&[(1, 0, 1)]), one.clone(), IntPoly2::var(), one).unwrap()
    }

    /// `p1 - x q1` and `p2 - y q2`.
    pub fn fixed_point_curves(&self) -> (IntPoly2, IntPoly2) {
        let x = IntPoly2::constant(IntPoly1::var());
        let y = IntPoly2::var();
        (self.p1.minus(&x.times(&self.q1)), self.p2.minus(&y.times(&self.q2)))
    }

    pub fn from_expr(e: &Expr) -> Result<Self> {
        let a = expect_call(e, "map", 4)?;
        let f: Vec<(IntPoly2, IntPoly2)> = a.iter().map(frac2).collect::<Result<_>>()?;
        // (n0/d0) / (n1/d1)
        let div = |a: &(IntPoly2, IntPoly2), b: &(IntPoly2, IntPoly2)| {
            (a.0.times(&b.1), a.1.times(&b.0))
        };
        let (p1, q1) = div(&f[0], &f[1]);
        let (p2, q2) = div(&f[2], &f[3]);
        RationalMap2::new(p1, q1, p2, q2)
    }

    /// Exact value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Rat, y: &Rat) -> Option<(Rat, Rat)> {
        use crate::rat::eval_rat2;
        let d1 = eval_rat2(&self.q1, x, y);
        let d2 = eval_rat2(&self.q2, x, y);
        if d1.is_zero() || d2.is_zero() {
            return None;
        }
        Some((eval_rat2(&self.p1, x, y) / d1, eval_rat2(&self.p2, x, y) / d2))
    }
}

impl fmt::Display for RationalMap2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = ("x", "y");
        write!(
            f,
            "map({}, {}, {}, {})",
            format_poly2(&self.p1, v),
            format_poly2(&self.q1, v),
            format_poly2(&self.p2, v),
            format_poly2(&self.q2, v)
        )
    }
}

impl std::str::FromStr for RationalMap2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RationalMap2::from_expr(&parse_expr(s)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Identity,
    Disjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaCase {
    /// The image is contained in a curve.
    Case1,
    /// The map is the identity.
    Case2,
    /// The first coordinate of the image stays bounded along a curve.
    Case3,
    /// Disjoint tubes around a curve and its image.
    Case4,
}

impl LemmaCase {
    pub fn tag(&self) -> &'static str {
        match self {
            LemmaCase::Case1 => "case1",
            LemmaCase::Case2 => "case2",
            LemmaCase::Case3 => "case3",
            LemmaCase::Case4 => "case4",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Some(match s {
            "case1" => LemmaCase::Case1,
            "case2" => LemmaCase::Case2,
            "case3" => LemmaCase::Case3,
            "case4" => LemmaCase::Case4,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaVerdict {
    pub kind: VerdictKind,
    pub case: LemmaCase,
    pub cell: EndCell,
    /// The curve whose image certified the verdict (cases 3 and 4).
    pub witness: Option<Branch>,
}

pub fn is_identity_map(f: &RationalMap2) -> bool {
    let (d1, d2) = f.fixed_point_curves();
    d1.is_zero() && d2.is_zero()
}

fn jacobian_numerator(f: &RationalMap2) -> IntPoly2 {
    // numerators of the partial derivatives of p/q
    let dx = |p: &IntPoly2, q: &IntPoly2| p.derivative_x().times(q).minus(&p.times(&q.derivative_x()));
    let dy = |p: &IntPoly2, q: &IntPoly2| p.derivative_y().times(q).minus(&p.times(&q.derivative_y()));
    dx(&f.p1, &f.q1)
        .times(&dy(&f.p2, &f.q2))
        .minus(&dy(&f.p1, &f.q1).times(&dx(&f.p2, &f.q2)))
}

/// `q1^a q2^b g(p1/q1, p2/q2)` with `a, b` the degrees of `g` in its two
/// variables.
pub fn compose_numerator(g: &IntPoly2, f: &RationalMap2) -> IntPoly2 {
    let a = g.deg_x();
    let b = g.deg();
    let pw = |p: &IntPoly2, n: usize| -> Vec<IntPoly2> {
        let mut v = vec![IntPoly2::one()];
        for i in 0..n {
            let next = v[i].times(p);
            v.push(next);
        }
        v
    };
    let (p1, q1, p2, q2) = (pw(&f.p1, a), pw(&f.q1, a), pw(&f.p2, b), pw(&f.q2, b));
    let mut acc = IntPoly2::zero();
    for (j, cy) in g.coeffs().iter().enumerate() {
        let yj = p2[j].times(&q2[b - j]);
        for (i, c) in cy.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = p1[i].times(&q1[a - i]).times(&yj);
            acc = acc.plus(&t.scale(&IntPoly1::constant(c.clone())));
        }
    }
    acc
}

/// Restriction of `w q(x, y) - p(x, y)` to a line, as a polynomial in
/// `Z[z1][z2][t]` (`t` the line parameter). `slot` selects `w`: 0 for `z1`,
/// 1 for `z2`.
fn on_line(p: &IntPoly2, q: &IntPoly2, horizontal: bool, c: i64, slot: usize) -> IntPoly3 {
    let c = BigInt::from(c);
    let restrict = |h: &IntPoly2| -> IntPoly1 {
        if horizontal {
            // h(t, c)
            h.eval_into(&IntPoly1::constant(c.clone()), |a| a.clone())
        } else {
            // h(c, t)
            IntPoly1::new(h.coeffs().iter().map(|a| a.eval(&c)).collect())
        }
    };
    let (pl, ql) = (restrict(p), restrict(q));
    let mut terms = Vec::new();
    for (k, a) in ql.coeffs().iter().enumerate() {
        let e = if slot == 0 { vec![k as u32, 0, 1] } else { vec![k as u32, 1, 0] };
        terms.push((e, a.clone()));
    }
    for (k, a) in pl.coeffs().iter().enumerate() {
        terms.push((vec![k as u32, 0, 0], -a.clone()));
    }
    IntPoly3::from_terms(&terms)
}

/// A nonzero `G` with `G(F1, F2) = 0` identically, when the Jacobian of
/// `F` vanishes. The variables of `G` are written `x, y`.
pub fn image_dimension_deficient(f: &RationalMap2) -> Option<IntPoly2> {
    if !jacobian_numerator(f).is_zero() {
        return None;
    }
    for horizontal in [true, false] {
        for c in [0, 1, 2, 3, -1, 5] {
            let e1 = on_line(&f.p1, &f.q1, horizontal, c, 0);
            let e2 = on_line(&f.p2, &f.q2, horizontal, c, 1);
            if e1.deg() == 0 && e2.deg() == 0 {
                continue;
            }
            let g: IntPoly2 = if e1.deg() == 0 {
                e1.coeff(0)
            } else if e2.deg() == 0 {
                e2.coeff(0)
            } else {
                e1.resultant(&e2)
            };
            if g.is_zero() || (g.deg() == 0 && g.coeff(0).deg() == 0) {
                continue;
            }
            let g = if g.deg() > 0 { g.primitive_part().square_free() } else { g.primitive_part() };
            if compose_numerator(&g, f).is_zero() {
                return Some(g);
            }
        }
    }
    None
}

/// A sub-end-cell on which `curve` has no zeros.
pub fn avoid_curve(cell: &EndCell, curve: &IntPoly2) -> EndCell {
    cell.refine_by_polynomial(curve).0
}

/// `F(x, f(x)) = (mu(x), nu(x))`.
pub fn mu_nu(f: &Branch, map: &RationalMap2) -> Result<(Branch, Branch)> {
    Ok((f.apply_rational(&map.p1, &map.q1)?, f.apply_rational(&map.p2, &map.q2)?))
}

/// `nu ∘ mu⁻¹`, the curve traced by the image of the graph of `f`.
pub fn pushforward_curve(mu: &Branch, nu: &Branch) -> Result<Branch> {
    nu.compose(&mu.invert()?)
}

/// The element of `bs` that is eventually extreme in direction `want`,
/// with a bound past which every other element stays on its side.
fn extreme(bs: &[Branch], want: Ordering) -> (Branch, BigInt) {
    let mut best = bs[0].clone();
    for b in &bs[1..] {
        if compare_eventually(b, &best) == want {
            best = b.clone();
        }
    }
    let w = bs
        .iter()
        .map(|b| compare_eventually_with_bound(b, &best).1)
        .fold(BigInt::zero(), |a, b| a.max(b));
    (best, w)
}

/// Bound past which `chain` is strictly increasing, if it eventually is.
fn strict_chain(chain: &[&Branch]) -> Option<BigInt> {
    let mut w = BigInt::zero();
    for pair in chain.windows(2) {
        let (o, b) = compare_eventually_with_bound(pair[0], pair[1]);
        if o != Ordering::Less {
            return None;
        }
        w = w.max(b);
    }
    Some(w)
}

/// The nearest zero branches of `polys` below and above `f` inside the
/// cell; none of the polynomials may vanish along `f`.
fn nearest_delimiters(cell: &EndCell, f: &Branch, polys: &[IntPoly2]) -> Option<(Branch, Branch, BigInt)> {
    let mut w = BigInt::zero();
    let mut below = vec![cell.lower().clone()];
    let mut above = vec![cell.upper().clone()];
    for p in polys {
        let (s, b) = crate::branch::sign_along(p, f);
        if s == 0 {
            return None;
        }
        w = w.max(b).max(past_roots([&p.x_content()]));
        let pp = p.primitive_part();
        if pp.deg() == 0 {
            continue;
        }
        let (b, bs) = Branch::all(&pp).ok()?;
        w = w.max(b);
        for br in bs {
            let (o, wb) = compare_eventually_with_bound(&br, f);
            w = w.max(wb);
            match o {
                Ordering::Less => below.push(br),
                Ordering::Greater => above.push(br),
                Ordering::Equal => return None,
            }
        }
    }
    let (lo, w1) = extreme(&below, Ordering::Greater);
    let (hi, w2) = extreme(&above, Ordering::Less);
    Some((lo, hi, w.max(w1).max(w2)))
}

fn raise(alpha: &Rat, b: &BigInt) -> Rat {
    alpha.clone().max(Rat::from_integer(b.clone()))
}

/// Case 3: `mu` has a limit below `+∞`. Returns a tube around `f` whose
/// image has first coordinate below the new `alpha`.
pub fn case3_escape(cell: &EndCell, f: &Branch, map: &RationalMap2, mu: &Branch) -> Option<EndCell> {
    let beta = match limit_at_infinity(mu) {
        Limit::PosInf => return None,
        Limit::NegInf => BigInt::zero(),
        Limit::Finite(l) => l.floor() + 1,
    };
    let beta_q = IntPoly2::constant(IntPoly1::constant(beta.clone()));
    let p = map.p1.minus(&beta_q.times(&map.q1));
    let (sp, _) = crate::branch::sign_along(&p, f);
    let (sq, _) = crate::branch::sign_along(&map.q1, f);
    if sp * sq != -1 {
        return None;
    }
    let (lo, hi, w) = nearest_delimiters(cell, f, &[p])?;
    let g0 = f.toward(&lo);
    let g1 = f.toward(&hi);
    let wc = strict_chain(&[&lo, &g0, f, &g1, &hi])?;
    let alpha = raise(&raise(&raise(cell.alpha(), &beta), &w), &wc);
    EndCell::new(alpha, g0, g1).ok()
}

/// Case 4: `f* != f`. Returns a tube around `f` mapped into a tube around
/// `f*` that misses it.
pub fn case4_tube(cell: &EndCell, f: &Branch, fstar: &Branch, map: &RationalMap2) -> Option<EndCell> {
    let above = match compare_eventually(f, fstar) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => return None,
    };
    let half = rat(1, 2);
    let sigma = f.mix(fstar, &half);
    let far = f.mix(fstar, &rat(3, 2));
    let (phi0, phi1) = if above { (sigma.clone(), far) } else { (far, sigma.clone()) };
    let tube = strict_chain(&[&phi0, fstar, &phi1])?;
    let big = tube
        .max(phi0.bound().clone())
        .max(phi1.bound().clone())
        .max(fstar.bound().clone());
    // F1 > big, phi0(F1) < F2 < phi1(F1) near the graph of f
    let big_q = IntPoly2::constant(IntPoly1::constant(big.clone()));
    let polys = [
        map.p1.minus(&big_q.times(&map.q1)),
        compose_numerator(phi0.defining(), map),
        compose_numerator(phi1.defining(), map),
    ];
    let (lo, hi, w) = nearest_delimiters(cell, f, &polys)?;
    let (g0, g1, wc) = if above {
        let (top, wt) = extreme(&[hi.clone(), sigma.clone()], Ordering::Less);
        let g0 = f.toward(&lo);
        let g1 = f.toward(&top);
        let wc = strict_chain(&[&lo, &g0, f, &g1, &top])?;
        (g0, g1, wc.max(wt))
    } else {
        let (bot, wb) = extreme(&[lo.clone(), sigma.clone()], Ordering::Greater);
        let g0 = f.toward(&bot);
        let g1 = f.toward(&hi);
        let wc = strict_chain(&[&bot, &g0, f, &g1, &hi])?;
        (g0, g1, wc.max(wb))
    };
    let alpha = raise(&raise(&raise(cell.alpha(), &big), &w), &wc);
    EndCell::new(alpha, g0, g1).ok()
}

/// Either `F` is the identity, or a sub-end-cell of `cell` that `F` maps
/// off itself.
pub fn classify(cell: &EndCell, map: &RationalMap2) -> Result<LemmaVerdict> {
    if is_identity_map(map) {
        return Ok(LemmaVerdict {
            kind: VerdictKind::Identity,
            case: LemmaCase::Case2,
            cell: cell.clone(),
            witness: None,
        });
    }
    let mut c = avoid_curve(cell, &map.q1.times(&map.q2));
    if let Some(g) = image_dimension_deficient(map) {
        return Ok(LemmaVerdict {
            kind: VerdictKind::Disjoint,
            case: LemmaCase::Case1,
            cell: avoid_curve(&c, &g),
            witness: None,
        });
    }
    let (d1, d2) = map.fixed_point_curves();
    for d in [d1, d2] {
        if !d.is_zero() {
            c = avoid_curve(&c, &d);
        }
    }
    let half = rat(1, 2);
    let mut curves: Vec<Branch> = [half.clone(), rat(1, 4), rat(3, 4)]
        .iter()
        .map(|r| c.midline(r))
        .collect();
    curves.extend((1..=3).map(|k| c.diagonal_curve(k)));
    for f in curves {
        let Ok((mu, nu)) = mu_nu(&f, map) else { continue };
        if let Some(cell) = case3_escape(&c, &f, map, &mu) {
            return Ok(LemmaVerdict {
                kind: VerdictKind::Disjoint,
                case: LemmaCase::Case3,
                cell,
                witness: Some(f),
            });
        }
        if limit_at_infinity(&mu) != Limit::PosInf {
            continue;
        }
        let Ok(fstar) = pushforward_curve(&mu, &nu) else { continue };
        if let Some(cell) = case4_tube(&c, &f, &fstar, map) {
            return Ok(LemmaVerdict {
                kind: VerdictKind::Disjoint,
                case: LemmaCase::Case4,
                cell,
                witness: Some(f),
            });
        }
    }
    Err(Error::CurveSearchExhausted {
        map: map.to_string(),
        cell: c.to_string(),
    })
}

#[cfg(test)]
mod tests;
