//! The ordered field `Q(a, b)` realized by a tower, and roots of
//! polynomials over it.
//!
//! Every sign decision goes through [`sign_of`](crate::typebuilder::sign_of)
//! and may extend the tower, so each operation returns the tower it ended
//! with.

use crate::error::{Error, Result};
use crate::poly::{IntPoly1, IntPoly2};
use crate::rat::{eval_rat, sign_of as rat_sign, Rat};
use crate::ring::Ring;
use crate::syntax::{expect_call, format_frac2, frac2, index, parse_expr, poly_over_k, Expr};
use crate::typebuilder::{sign_of, Caps, Tower};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `num / den` in lowest terms, `den` with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KElement {
    num: IntPoly2,
    den: IntPoly2,
}

impl KElement {
    pub fn new(num: IntPoly2, den: IntPoly2) -> Result<KElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(KElement::zero());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_poly(&g).unwrap(), den.div_poly(&g).unwrap());
        if d.lead_sign() < 0 {
            n = n.negate();
            d = d.negate();
        }
        Ok(KElement { num: n, den: d })
    }

    pub fn from_poly(p: IntPoly2) -> KElement {
        KElement::new(p, IntPoly2::one()).unwrap()
    }

    pub fn from_int(n: i64) -> KElement {
        KElement::from_poly(IntPoly2::constant(IntPoly1::constant(n.into())))
    }

    pub fn from_rat(r: &Rat) -> KElement {
        let c = |v: &BigInt| IntPoly2::constant(IntPoly1::constant(v.clone()));
        KElement::new(c(r.numer()), c(r.denom())).unwrap()
    }

    /// The generator `a`.
    pub fn x() -> KElement {
        KElement::from_poly(IntPoly2::constant(IntPoly1::var()))
    }

    /// The generator `b`.
    pub fn y() -> KElement {
        KElement::from_poly(IntPoly2::var())
    }

    pub fn zero() -> KElement {
        KElement {
            num: IntPoly2::zero(),
            den: IntPoly2::one(),
        }
    }

    pub fn one() -> KElement {
        KElement::from_int(1)
    }

    pub fn num(&self) -> &IntPoly2 {
        &self.num
    }

    pub fn den(&self) -> &IntPoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &KElement) -> KElement {
        KElement::new(self.num.times(&o.den).plus(&o.num.times(&self.den)), self.den.times(&o.den)).unwrap()
    }

    pub fn sub(&self, o: &KElement) -> KElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> KElement {
        KElement {
            num: self.num.negate(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &KElement) -> KElement {
        KElement::new(self.num.times(&o.num), self.den.times(&o.den)).unwrap()
    }

    pub fn div(&self, o: &KElement) -> Result<KElement> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        KElement::new(self.num.times(&o.den), self.den.times(&o.num))
    }

    pub fn from_expr(e: &Expr) -> Result<KElement> {
        let (n, d) = frac2(e)?;
        KElement::new(n, d)
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_frac2(&self.num, &self.den))
    }
}

impl std::str::FromStr for KElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KElement::from_expr(&parse_expr(s)?)
    }
}

/// A tower together with the caps used to extend it.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub tower: Tower,
    pub caps: Caps,
}

impl Oracle {
    pub fn new(tower: Tower, caps: Caps) -> Oracle {
        Oracle { tower, caps }
    }

    fn poly_sign(&mut self, p: &IntPoly2) -> Result<i8> {
        let (s, t) = sign_of(&self.tower, p, &self.caps)?;
        self.tower = t;
        Ok(s)
    }

    pub fn sign(&mut self, u: &KElement) -> Result<i8> {
        if u.is_zero() {
            return Ok(0);
        }
        Ok(self.poly_sign(&u.num)? * self.poly_sign(&u.den)?)
    }

    pub fn compare(&mut self, u: &KElement, v: &KElement) -> Result<Ordering> {
        Ok(self.sign(&u.sub(v))?.cmp(&0))
    }
}

pub fn k_sign(t: &Tower, u: &KElement, caps: &Caps) -> Result<(i8, Tower)> {
    let mut o = Oracle::new(t.clone(), caps.clone());
    let s = o.sign(u)?;
    Ok((s, o.tower))
}

pub fn k_compare(t: &Tower, u: &KElement, v: &KElement, caps: &Caps) -> Result<(Ordering, Tower)> {
    let mut o = Oracle::new(t.clone(), caps.clone());
    let c = o.compare(u, v)?;
    Ok((c, o.tower))
}

/// Polynomial in `z` over `Q(a, b)`, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KPoly(Vec<KElement>);

impl KPoly {
    pub fn new(mut c: Vec<KElement>) -> KPoly {
        while c.last().is_some_and(|e| e.is_zero()) {
            c.pop();
        }
        KPoly(c)
    }

    pub fn one() -> KPoly {
        KPoly(vec![KElement::one()])
    }

    pub fn mul(&self, o: &KPoly) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return KPoly(Vec::new());
        }
        let mut c = vec![KElement::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        KPoly::new(c)
    }

    pub fn coeffs(&self) -> &[KElement] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> KElement {
        self.0.last().cloned().unwrap_or_else(KElement::zero)
    }

    pub fn eval(&self, at: &KElement) -> KElement {
        let mut acc = KElement::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> KPoly {
        KPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&KElement::from_int(i as i64)))
                .collect(),
        )
    }

    fn monic(&self) -> KPoly {
        let l = self.lead();
        KPoly(self.0.iter().map(|c| c.div(&l).unwrap()).collect())
    }

    /// `(quotient, remainder)` of division by nonzero `d`.
    pub fn div_rem(&self, d: &KPoly) -> (KPoly, KPoly) {
        let mut r = self.0.clone();
        let dl = d.lead();
        let mut q = vec![KElement::zero(); self.0.len().saturating_sub(d.deg())];
        while r.len() >= d.0.len() && !r.is_empty() {
            let shift = r.len() - d.0.len();
            let c = r.last().unwrap().div(&dl).unwrap();
            for (i, dc) in d.0.iter().enumerate() {
                r[shift + i] = r[shift + i].sub(&c.mul(dc));
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|e| e.is_zero()) {
                r.pop();
            }
        }
        (KPoly::new(q), KPoly::new(r))
    }

    pub fn gcd(&self, o: &KPoly) -> KPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn square_free(&self) -> KPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    pub fn from_expr(e: &Expr) -> Result<KPoly> {
        let cs = poly_over_k(e)?;
        Ok(KPoly::new(cs.into_iter().map(|(n, d)| KElement::new(n, d)).collect::<Result<_>>()?))
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("({})", c);
            parts.push(match i {
                0 => cs,
                1 => format!("{}*z", cs),
                _ => format!("{}*z^{}", cs, i),
            });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

impl std::str::FromStr for KPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KPoly::from_expr(&parse_expr(s)?)
    }
}

/// Sturm sequence of a square-free polynomial.
fn sturm(p: &KPoly) -> Vec<KPoly> {
    remainders(p, &p.derivative())
}

/// Signed remainder sequence of `p` and `q`.
fn remainders(p: &KPoly, q: &KPoly) -> Vec<KPoly> {
    let mut chain = vec![p.clone()];
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        chain.push(b.clone());
        let r = a.div_rem(&b).1;
        a = b;
        b = KPoly::new(r.0.iter().map(|c| c.neg()).collect());
    }
    chain
}

fn changes(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

impl Oracle {
    fn variations_at(&mut self, chain: &[KPoly], at: &KElement) -> Result<usize> {
        let mut s = Vec::with_capacity(chain.len());
        for q in chain {
            s.push(self.sign(&q.eval(at))?);
        }
        Ok(changes(&s))
    }

    fn variations_at_infinity(&mut self, chain: &[KPoly], positive: bool) -> Result<usize> {
        let mut s = Vec::with_capacity(chain.len());
        for q in chain {
            let l = self.sign(&q.lead())?;
            s.push(if !positive && q.deg() % 2 == 1 { -l } else { l });
        }
        Ok(changes(&s))
    }

    /// Distinct real roots in the real closure.
    pub fn count_real_roots(&mut self, p: &KPoly) -> Result<usize> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let chain = sturm(&p.square_free());
        Ok(self.variations_at_infinity(&chain, false)? - self.variations_at_infinity(&chain, true)?)
    }

    /// Distinct roots at or below `c`.
    fn roots_up_to(&mut self, chain: &[KPoly], c: &KElement) -> Result<usize> {
        Ok(self.variations_at_infinity(chain, false)? - self.variations_at(chain, c)?)
    }
}

pub fn count_real_roots_over_k(t: &Tower, p: &KPoly, caps: &Caps) -> Result<(usize, Tower)> {
    let mut o = Oracle::new(t.clone(), caps.clone());
    let n = o.count_real_roots(p)?;
    Ok((n, o.tower))
}

/// The `index`-th real root of `poly`, counting from below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootElement {
    poly: KPoly,
    index: usize,
}

impl RootElement {
    pub fn poly(&self) -> &KPoly {
        &self.poly
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// The root as an element of `Q(a, b)` when the polynomial is linear.
    pub fn as_k(&self) -> Option<KElement> {
        (self.poly.deg() == 1).then(|| self.poly.0[0].neg().div(&self.poly.0[1]).unwrap())
    }

    pub fn from_expr(e: &Expr) -> Result<(KPoly, usize)> {
        let a = expect_call(e, "root", 2)?;
        Ok((KPoly::from_expr(&a[0])?, index(&a[1])?))
    }
}

impl fmt::Display for RootElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root({}, {})", self.poly, self.index)
    }
}

impl Oracle {
    pub fn root_element(&mut self, p: &KPoly, index: usize) -> Result<RootElement> {
        let sf = p.square_free();
        let count = self.count_real_roots(&sf)?;
        if index >= count {
            return Err(Error::RootIndexOutOfRange { index, count });
        }
        Ok(RootElement {
            poly: KPoly(sf.monic().0),
            index,
        })
    }

    /// `r` compared with `c`.
    pub fn compare_root(&mut self, r: &RootElement, c: &KElement) -> Result<Ordering> {
        let chain = sturm(&r.poly);
        let le = self.roots_up_to(&chain, c)?;
        let at = self.sign(&r.poly.eval(c))? == 0;
        let lt = if at { le - 1 } else { le };
        Ok(if r.index < lt {
            Ordering::Less
        } else if at && r.index == lt {
            Ordering::Equal
        } else {
            Ordering::Greater
        })
    }

    /// Sign of `q` at `r`.
    pub fn sign_at_root(&mut self, r: &RootElement, q: &KPoly) -> Result<i8> {
        let p = &r.poly;
        let mut qs = derivatives(p);
        let d = qs.len();
        qs.push(q.clone());
        let mut conds = self.sign_conditions(p, &qs)?;
        conds.sort_by(|a, b| thom_cmp(&a[..d], &b[..d]));
        Ok(conds[r.index][d])
    }

    pub fn compare_roots(&mut self, r: &RootElement, s: &RootElement) -> Result<Ordering> {
        if r == s {
            return Ok(Ordering::Equal);
        }
        let p = r.poly.mul(&s.poly).square_free().monic();
        let mut qs = derivatives(&p);
        let d = qs.len();
        qs.push(r.poly.clone());
        qs.push(s.poly.clone());
        let mut conds = self.sign_conditions(&p, &qs)?;
        conds.sort_by(|a, b| thom_cmp(&a[..d], &b[..d]));
        let position = |col: usize, k: usize| {
            conds
                .iter()
                .enumerate()
                .filter(|(_, c)| c[col] == 0)
                .nth(k)
                .map(|(i, _)| i)
                .expect("root of a factor is a root of the product")
        };
        Ok(position(d, r.index).cmp(&position(d + 1, s.index)))
    }

    /// Tarski query: roots of `p` where `q > 0` minus roots where `q < 0`.
    fn taq(&mut self, q: &KPoly, p: &KPoly) -> Result<i64> {
        let r = p.derivative().mul(q).div_rem(p).1;
        let chain = remainders(p, &r);
        let lo = self.variations_at_infinity(&chain, false)? as i64;
        Ok(lo - self.variations_at_infinity(&chain, true)? as i64)
    }

    /// The sign vectors of `qs` realized at roots of square-free `p`.
    fn sign_conditions(&mut self, p: &KPoly, qs: &[KPoly]) -> Result<Vec<Vec<i8>>> {
        let n = self.taq(&KPoly::one(), p)?;
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut sigma: Vec<Vec<i8>> = vec![vec![]];
        let mut alpha: Vec<Vec<u8>> = vec![vec![]];
        let mut t: Vec<Rat> = vec![Rat::from_integer(n.into())];
        for _ in qs {
            let mut s2 = Vec::with_capacity(sigma.len() * 3);
            for s in &sigma {
                for v in [0i8, 1, -1] {
                    let mut s = s.clone();
                    s.push(v);
                    s2.push(s);
                }
            }
            let mut a2 = Vec::with_capacity(alpha.len() * 3);
            let mut t2 = Vec::with_capacity(alpha.len() * 3);
            for (a, ta) in alpha.iter().zip(&t) {
                for e in [0u8, 1, 2] {
                    let mut a = a.clone();
                    a.push(e);
                    t2.push(if e == 0 {
                        ta.clone()
                    } else {
                        let m = monomial(qs, &a, p);
                        Rat::from_integer(self.taq(&m, p)?.into())
                    });
                    a2.push(a);
                }
            }
            let m = sign_matrix(&a2, &s2);
            let c = solve(m, t2.clone());
            let keep: Vec<usize> = (0..s2.len()).filter(|&i| !c[i].is_zero()).collect();
            let sub: Vec<Vec<Rat>> = a2
                .iter()
                .map(|a| keep.iter().map(|&i| Rat::from_integer(sign_power(a, &s2[i]).into())).collect())
                .collect();
            let rows = independent_rows(&sub);
            sigma = keep.iter().map(|&i| s2[i].clone()).collect();
            alpha = rows.iter().map(|&i| a2[i].clone()).collect();
            t = rows.iter().map(|&i| t2[i].clone()).collect();
        }
        Ok(sigma)
    }
}

fn derivatives(p: &KPoly) -> Vec<KPoly> {
    let mut out = Vec::new();
    let mut d = p.derivative();
    while d.deg() > 0 {
        out.push(d.clone());
        d = d.derivative();
    }
    out
}

/// Thom order on encodings by the signs of `p', p'', ...`, for monic `p`.
fn thom_cmp(a: &[i8], b: &[i8]) -> Ordering {
    for k in (0..a.len()).rev() {
        if a[k] != b[k] {
            let next = if k + 1 < a.len() { a[k + 1] } else { 1 };
            let o = a[k].cmp(&b[k]);
            return if next < 0 { o.reverse() } else { o };
        }
    }
    Ordering::Equal
}

/// `prod qs[j]^a[j]` reduced modulo `p`.
fn monomial(qs: &[KPoly], a: &[u8], p: &KPoly) -> KPoly {
    let mut m = KPoly::one();
    for (q, &e) in qs.iter().zip(a) {
        for _ in 0..e {
            m = m.mul(q).div_rem(p).1;
        }
    }
    m
}

fn sign_power(a: &[u8], s: &[i8]) -> i64 {
    a.iter()
        .zip(s)
        .map(|(&e, &v)| if e == 0 { 1 } else if e % 2 == 0 { (v * v) as i64 } else { v as i64 })
        .product()
}

fn sign_matrix(a: &[Vec<u8>], s: &[Vec<i8>]) -> Vec<Vec<Rat>> {
    a.iter()
        .map(|a| s.iter().map(|s| Rat::from_integer(sign_power(a, s).into())).collect())
        .collect()
}

/// Solves the square nonsingular system `m c = b`.
fn solve(mut m: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Vec<Rat> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("nonsingular");
        m.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let pivot = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * p;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    (0..n).map(|i| &b[i] / &m[i][i]).collect()
}

/// First rows, in order, spanning the row space.
fn independent_rows(m: &[Vec<Rat>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut out = Vec::new();
    for (i, row) in m.iter().enumerate() {
        let mut v = row.clone();
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = &v[*p] / &b[*p];
                for k in 0..v.len() {
                    let t = &f * &b[k];
                    v[k] -= t;
                }
            }
        }
        if let Some(p) = v.iter().position(|c| !c.is_zero()) {
            basis.push((p, v));
            out.push(i);
        }
    }
    out
}

pub fn root_element(t: &Tower, p: &KPoly, index: usize, caps: &Caps) -> Result<(RootElement, Tower)> {
    let mut o = Oracle::new(t.clone(), caps.clone());
    let r = o.root_element(p, index)?;
    Ok((r, o.tower))
}

/// Outcome of [`prop21_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop21Report {
    pub m: u32,
    pub height_cap: usize,
    pub polynomials: usize,
    pub pairs: usize,
    pub counterexamples: Vec<String>,
}

impl Prop21Report {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Sign of `p(x)` for all large `x`, read off past the largest root.
fn eventual_sign(p: &IntPoly1) -> i8 {
    if p.is_zero() {
        return 0;
    }
    let past = crate::realalg::isolate::max_root_ceiling(p).unwrap_or_else(BigInt::zero) + 1;
    rat_sign(&eval_rat(p, &Rat::from_integer(past)))
}

fn compose_power(p: &IntPoly1, m: u32) -> IntPoly1 {
    let mut c = vec![BigInt::zero(); p.deg() * m as usize + 1];
    for (i, a) in p.coeffs().iter().enumerate() {
        c[i * m as usize] = a.clone();
    }
    IntPoly1::new(c)
}

/// Univariate integer polynomials of height `deg + sum |c|` at most `cap`,
/// constants excluded.
fn univariate_up_to(cap: usize) -> Vec<IntPoly1> {
    let mut out = Vec::new();
    for d in 1..cap {
        let mass = cap - d;
        let mut cur = vec![0i64; d + 1];
        fill(&mut cur, 0, mass as i64, &mut |v| {
            if v[d] != 0 {
                out.push(IntPoly1::new(v.iter().map(|&c| c.into()).collect()));
            }
        });
    }
    out
}

fn fill(cur: &mut Vec<i64>, pos: usize, left: i64, f: &mut impl FnMut(&[i64])) {
    if pos == cur.len() {
        if cur.iter().any(|&c| c != 0) {
            f(cur);
        }
        return;
    }
    for m in 0..=left {
        for s in if m == 0 { &[1][..] } else { &[1, -1][..] } {
            cur[pos] = s * m;
            fill(cur, pos + 1, left - m, f);
        }
    }
    cur[pos] = 0;
}

/// Checks that `x ↦ x^m` preserves eventual signs of polynomials up to
/// `height_cap` and the eventual order of 50 random pairs of rational
/// functions: `a` and `a^m` lie in the same cut over the algebraic numbers.
pub fn prop21_check(m: u32, height_cap: usize) -> Prop21Report {
    use rand::{Rng, SeedableRng};
    assert!(m >= 2, "exponent must be at least 2");
    let mut bad = Vec::new();
    let polys = univariate_up_to(height_cap);
    for p in &polys {
        let (s0, s1) = (eventual_sign(p), eventual_sign(&compose_power(p, m)));
        if s0 != s1 || s0 != p.lead_sign() {
            bad.push(format!("{}: {} vs {}", crate::syntax::format_poly1(p, "x"), s0, s1));
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(u64::from(m));
    let random_poly = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let d = rng.gen_range(0..=3);
        let p = IntPoly1::new((0..=d).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect());
        if !p.is_zero() {
            return p;
        }
    };
    let pairs = 50;
    for _ in 0..pairs {
        let (n1, d1, n2, d2) = (
            random_poly(&mut rng),
            random_poly(&mut rng),
            random_poly(&mut rng),
            random_poly(&mut rng),
        );
        // n1/d1 - n2/d2 has the sign of (n1 d2 - n2 d1) d1 d2
        let diff = |n1: &IntPoly1, d1: &IntPoly1, n2: &IntPoly1, d2: &IntPoly1| {
            eventual_sign(&n1.times(d2).minus(&n2.times(d1))) * eventual_sign(d1) * eventual_sign(d2)
        };
        let before = diff(&n1, &d1, &n2, &d2);
        let sub = |p: &IntPoly1| compose_power(p, m);
        let after = diff(&sub(&n1), &sub(&d1), &sub(&n2), &sub(&d2));
        if before != after {
            bad.push(format!("pair ({:?}, {:?}) / ({:?}, {:?}): {} vs {}", n1, d1, n2, d2, before, after));
        }
    }
    Prop21Report {
        m,
        height_cap,
        polynomials: polys.len(),
        pairs,
        counterexamples: bad,
    }
}
