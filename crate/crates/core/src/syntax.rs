//! The textual grammar shared by the CLI and the tower document.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Names are `x`, `y` and `z`. In bivariate contexts `z` is an alias for
//! the second variable. Calls build structured values:
//! `alg(p, lo, hi)`, `branch(q, index, bound)`, `cell(alpha, lower, upper)`,
//! `map(p1, q1, p2, q2)` and `root(p, index)`.
//!
//! Printing is canonical: terms in descending degree of the second variable,
//! then of `x`, written `c*x^i*y^j` and joined by ` + ` / ` - `.

use crate::error::{Error, Result};
use crate::poly::{Flat, IntPoly1, IntPoly2, IntPoly3, Poly};
use crate::rat::Rat;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Int(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Name(s[st..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else if c == '\u{2212}' {
            // unicode minus sign
            out.push((i, Tok::Sym('-')));
            i += c.len_utf8();
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {:?}", s[i..].chars().next().unwrap()),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.at), Some((_, Tok::Sym(d))) if *d == c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.at).cloned() {
                Some((_, Tok::Int(n))) => {
                    self.at += 1;
                    let e = n.to_u32().filter(|&e| e <= 4096);
                    match e {
                        Some(e) => Ok(Expr::Pow(Box::new(base), e)),
                        None => self.err("exponent too large"),
                    }
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Int(n))) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some((_, Tok::Name(name))) => {
                self.at += 1;
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some((_, Tok::Sym('('))) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(s)?,
        at: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Split a call `name(args..)` with the given arity.
pub fn expect_call<'a>(e: &'a Expr, name: &str, arity: usize) -> Result<&'a [Expr]> {
    match e {
        Expr::Call(n, args) if n == name && args.len() == arity => Ok(args),
        Expr::Call(n, args) if n == name => Err(Error::Parse {
            pos: 0,
            msg: format!("{} takes {} arguments, got {}", name, arity, args.len()),
        }),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("expected {}(...)", name),
        }),
    }
}

/// Numerator and denominator in `Z[x][y][z]` (z outermost).
pub type Frac3 = (IntPoly3, IntPoly3);

fn var3(k: usize) -> IntPoly3 {
    let mut e = vec![0u32; 3];
    e[2 - k] = 1;
    IntPoly3::from_terms(&[(e, BigInt::one())])
}

fn reduce(f: Frac3) -> Frac3 {
    let g = f.0.gcd_with(&f.1);
    let (mut n, mut d) = if g.is_zero() || g.is_one() {
        f
    } else {
        (f.0.div_exact(&g).unwrap(), f.1.div_exact(&g).unwrap())
    };
    if d.lead_sign() < 0 {
        n = n.negate();
        d = d.negate();
    }
    (n, d)
}

/// Evaluate an expression as a rational function. `names[k]` lists the
/// spellings of variable `k` (0 = x, 1 = y, 2 = z).
pub fn to_frac3(e: &Expr, names: &[&[&str]]) -> Result<Frac3> {
    let bad = |m: String| Error::Parse { pos: 0, msg: m };
    Ok(match e {
        Expr::Int(n) => (poly3_const(n.clone()), IntPoly3::one()),
        Expr::Var(v) => {
            let k = names
                .iter()
                .position(|ns| ns.contains(&v.as_str()))
                .ok_or_else(|| bad(format!("unknown variable {}", v)))?;
            (var3(k), IntPoly3::one())
        }
        Expr::Neg(a) => {
            let (n, d) = to_frac3(a, names)?;
            (n.negate(), d)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (an, ad) = to_frac3(a, names)?;
            let (bn, bd) = to_frac3(b, names)?;
            let l = an.times(&bd);
            let r = bn.times(&ad);
            let n = if matches!(e, Expr::Add(..)) { l.plus(&r) } else { l.minus(&r) };
            reduce((n, ad.times(&bd)))
        }
        Expr::Mul(a, b) => {
            let (an, ad) = to_frac3(a, names)?;
            let (bn, bd) = to_frac3(b, names)?;
            reduce((an.times(&bn), ad.times(&bd)))
        }
        Expr::Div(a, b) => {
            let (an, ad) = to_frac3(a, names)?;
            let (bn, bd) = to_frac3(b, names)?;
            if bn.is_zero() {
                return Err(bad("division by zero".into()));
            }
            reduce((an.times(&bd), ad.times(&bn)))
        }
        Expr::Pow(a, k) => {
            let (n, d) = to_frac3(a, names)?;
            (n.pow(*k as usize), d.pow(*k as usize))
        }
        Expr::Call(n, _) => return Err(bad(format!("unexpected {}(...) in an expression", n))),
    })
}

fn poly3_const(n: BigInt) -> IntPoly3 {
    IntPoly3::constant(IntPoly2::constant(IntPoly1::constant(n)))
}

const XY: &[&[&str]] = &[&["x"], &["y", "z"]];

fn drop_outer(p: &IntPoly3) -> Result<IntPoly2> {
    if p.deg() > 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "unexpected third variable".into(),
        });
    }
    Ok(p.coeff(0))
}

/// A rational function of `x, y` in lowest terms, denominator with
/// positive leading coefficient.
pub fn frac2(e: &Expr) -> Result<(IntPoly2, IntPoly2)> {
    let (n, d) = to_frac3(e, XY)?;
    Ok((drop_outer(&n)?, drop_outer(&d)?))
}

/// An integer polynomial in `x, y`. Rational coefficients are cleared by a
/// positive integer factor, which preserves signs and zero sets.
pub fn poly2(e: &Expr) -> Result<IntPoly2> {
    let (n, d) = frac2(e)?;
    if d.total_degree() > 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a polynomial, found a rational function".into(),
        });
    }
    Ok(n)
}

/// An integer polynomial in one variable (`x`, or `z` / `y`).
pub fn poly1(e: &Expr) -> Result<IntPoly1> {
    let (n, d) = to_frac3(e, &[&["x", "y", "z"]])?;
    let (n, d) = (drop_outer(&n)?.coeff(0), drop_outer(&d)?.coeff(0));
    if d.deg() > 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a polynomial, found a rational function".into(),
        });
    }
    Ok(n)
}

pub fn rational(e: &Expr) -> Result<Rat> {
    let (n, d) = frac2(e)?;
    if n.total_degree() > 0 || d.total_degree() > 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a rational number".into(),
        });
    }
    Ok(Rat::new(n.coeff_xy(0, 0), d.coeff_xy(0, 0)))
}

pub fn integer(e: &Expr) -> Result<BigInt> {
    let r = rational(e)?;
    if !r.is_integer() {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected an integer".into(),
        });
    }
    Ok(r.to_integer())
}

pub fn index(e: &Expr) -> Result<usize> {
    integer(e)?.to_usize().ok_or(Error::Parse {
        pos: 0,
        msg: "expected a non-negative index".into(),
    })
}

fn push_term(out: &mut String, c: &BigInt, mono: &str) {
    let neg = c.is_negative();
    let a = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&format!("{}*{}", a, mono));
    }
}

fn mono(name: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{}^{}", name, k),
    }
}

pub fn format_poly1(p: &IntPoly1, var: &str) -> String {
    let mut s = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if !c.is_zero() {
            push_term(&mut s, c, &mono(var, k));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn format_poly2(p: &IntPoly2, vars: (&str, &str)) -> String {
    let mut s = String::new();
    for (j, cy) in p.coeffs().iter().enumerate().rev() {
        for (i, c) in cy.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let m = match (mono(vars.0, i), mono(vars.1, j)) {
                (a, b) if a.is_empty() => b,
                (a, b) if b.is_empty() => a,
                (a, b) => format!("{}*{}", a, b),
            };
            push_term(&mut s, c, &m);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Parenthesized when it is a sum, so it can be used as a factor.
pub fn format_factor2(p: &IntPoly2, vars: (&str, &str)) -> String {
    let s = format_poly2(p, vars);
    if s.contains(' ') {
        format!("({})", s)
    } else {
        s
    }
}

pub fn format_frac2(n: &IntPoly2, d: &IntPoly2) -> String {
    if d.is_one() {
        format_poly2(n, ("x", "y"))
    } else {
        let den = format_poly2(d, ("x", "y"));
        let den = if den.contains([' ', '*']) { format!("({})", den) } else { den };
        format!("{}/{}", format_factor2(n, ("x", "y")), den)
    }
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Coefficients in `z` of a polynomial over `Q(x, y)`, each in lowest terms.
pub fn frac3_coeffs(f: &Frac3) -> Result<Vec<(IntPoly2, IntPoly2)>> {
    let d = drop_outer(&f.1).map_err(|_| Error::Parse {
        pos: 0,
        msg: "denominator depends on z".into(),
    })?;
    Ok(f.0
        .coeffs()
        .iter()
        .map(|c| {
            let r = reduce((IntPoly3::constant(c.clone()), IntPoly3::constant(d.clone())));
            (r.0.coeff(0), r.1.coeff(0))
        })
        .collect())
}

/// Parse a polynomial in `z` whose coefficients are rational functions of
/// `x, y`.
pub fn poly_over_k(e: &Expr) -> Result<Vec<(IntPoly2, IntPoly2)>> {
    let f = to_frac3(e, &[&["x"], &["y"], &["z"]])?;
    frac3_coeffs(&f)
}

impl Poly<BigInt> {
    /// Parse a univariate integer polynomial.
    pub fn parse(s: &str) -> Result<Self> {
        poly1(&parse_expr(s)?)
    }
}

impl Poly<IntPoly1> {
    /// Parse an integer polynomial in `x, y`.
    pub fn parse(s: &str) -> Result<Self> {
        poly2(&parse_expr(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly;

    #[test]
    fn parse_and_print_round_trip() {
        let p = IntPoly2::parse("y^2 - x*(x + 1) + 3").unwrap();
        assert_eq!(p, poly::poly2(&[(0, 2, 1), (2, 0, -1), (1, 0, -1), (0, 0, 3)]));
        let s = format_poly2(&p, ("x", "y"));
        assert_eq!(s, "y^2 - x^2 - x + 3");
        assert_eq!(IntPoly2::parse(&s).unwrap(), p);
    }

    #[test]
    fn z_is_an_alias_for_y() {
        assert_eq!(IntPoly2::parse("z - x").unwrap(), IntPoly2::parse("y - x").unwrap());
    }

    #[test]
    fn rational_coefficients_cleared_positively() {
        assert_eq!(IntPoly2::parse("y - 1/2").unwrap(), IntPoly2::parse("2*y - 1").unwrap());
        assert!(IntPoly2::parse("1/y").is_err());
    }

    #[test]
    fn rationals_and_errors() {
        assert_eq!(rational(&parse_expr("-7/5").unwrap()).unwrap(), crate::rat::rat(-7, 5));
        let e = parse_expr("x +* 1").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 3, .. }));
        assert!(parse_expr("x $").is_err());
    }

    #[test]
    fn fractions_reduce() {
        let (n, d) = frac2(&parse_expr("(x^2 - 1)/(x - 1)").unwrap()).unwrap();
        assert_eq!(n, IntPoly2::parse("x + 1").unwrap());
        assert!(d.is_one());
    }
}
