use super::*;
use crate::poly::poly2;
use crate::rat::int;

fn map(s: &str) -> RationalMap2 {
    s.parse().unwrap()
}

/// Rational points of `cell` at several abscissae.
fn samples(cell: &EndCell) -> Vec<(Rat, Rat)> {
    let a = cell.alpha().clone();
    let mut out = Vec::new();
    for x in [&a + int(1), &a + rat(1, 3), &a * int(2) + int(17), &a * int(10) + int(1000)] {
        let lo = cell.lower().value_at(&x);
        let hi = cell.upper().value_at(&x);
        let m = lo.rational_between(&hi);
        out.push((x.clone(), m.clone()));
        let near_lo = lo.rational_between(&RealAlg::from_rat(m.clone()));
        let near_hi = RealAlg::from_rat(m).rational_between(&hi);
        out.push((x.clone(), near_lo));
        out.push((x, near_hi));
    }
    out
}

use crate::realalg::RealAlg;

fn check_disjoint(f: &RationalMap2, v: &LemmaVerdict) {
    assert_eq!(v.kind, VerdictKind::Disjoint);
    for (x, y) in samples(&v.cell) {
        assert!(v.cell.contains(&x, &y));
        let (fx, fy) = f.eval(&x, &y).expect("no pole inside the cell");
        assert!(!v.cell.contains(&fx, &fy), "{} maps ({}, {}) into {}", f, x, y, v.cell);
    }
}

fn nested(outer: &EndCell, inner: &EndCell) {
    assert!(inner.alpha() >= outer.alpha());
    assert_ne!(compare_eventually(outer.lower(), inner.lower()), Ordering::Greater);
    assert_ne!(compare_eventually(inner.upper(), outer.upper()), Ordering::Greater);
}

#[test]
fn parse_and_print() {
    let f = map("map(x + 1, 1, y, 1)");
    assert_eq!(f.to_string(), "map(x + 1, 1, y, 1)");
    let g = map("map(x^2 - x, x, 2*y, 4)");
    assert_eq!(g.p1, poly2(&[(1, 0, 1), (0, 0, -1)]));
    assert_eq!(g.q1, IntPoly2::one());
    assert_eq!(g.p2, poly2(&[(0, 1, 1)]));
    assert_eq!(g.q2, poly2(&[(0, 0, 2)]));
    assert_eq!(g.to_string().parse::<RationalMap2>().unwrap(), g);
    assert!("map(x, 0, y, 1)".parse::<RationalMap2>().is_err());
}

#[test]
fn identity_verdict() {
    let f = map("map(x, 1, y, 1)");
    assert!(is_identity_map(&f));
    assert_eq!(f, RationalMap2::identity());
    let v = classify(&EndCell::initial(), &f).unwrap();
    assert_eq!((v.kind, v.case), (VerdictKind::Identity, LemmaCase::Case2));
    assert_eq!(v.cell, EndCell::initial());
    assert!(!is_identity_map(&map("map(x, 1, y + 1, 1)")));
}

#[test]
fn image_curves() {
    let g = image_dimension_deficient(&map("map(x^2, 1, x^4, 1)")).unwrap();
    assert!(g == poly2(&[(0, 1, 1), (2, 0, -1)]) || g == poly2(&[(0, 1, -1), (2, 0, 1)]));
    let h = image_dimension_deficient(&map("map(x, 1, 1, x)")).unwrap();
    assert_eq!(compose_numerator(&h, &map("map(x, 1, 1, x)")), IntPoly2::zero());
    assert!(image_dimension_deficient(&map("map(y, 1, x, 1)")).is_none());
    let c = image_dimension_deficient(&map("map(x + y, 1, (x + y)^2, 1)")).unwrap();
    assert_eq!(c.deg(), 1);
}

#[test]
fn case1_low_dimension() {
    let f = map("map(x, 1, 1, x)");
    let v = classify(&EndCell::initial(), &f).unwrap();
    assert_eq!(v.case, LemmaCase::Case1);
    check_disjoint(&f, &v);
    let f = map("map(x^2, 1, x^4, 1)");
    let v = classify(&EndCell::initial(), &f).unwrap();
    assert_eq!(v.case, LemmaCase::Case1);
    check_disjoint(&f, &v);
}

#[test]
fn case3_swap() {
    let f = map("map(y, 1, x, 1)");
    let v = classify(&EndCell::initial(), &f).unwrap();
    assert_eq!(v.case, LemmaCase::Case3);
    nested(&EndCell::initial(), &v.cell);
    check_disjoint(&f, &v);
}

#[test]
fn case4_examples() {
    for s in [
        "map(x + 1, 1, y, 1)",
        "map(x, 1, y*x + 1, x)",
        "map(x, 1, y, 2)",
        "map(2*x, 1, y, 1)",
        "map(x^2, 1, y, 1)",
    ] {
        let f = map(s);
        let v = classify(&EndCell::initial(), &f).unwrap();
        assert_eq!(v.case, LemmaCase::Case4, "{}", s);
        assert!(v.witness.is_some());
        nested(&EndCell::initial(), &v.cell);
        check_disjoint(&f, &v);
    }
}

#[test]
fn pushforward_of_translation() {
    let f = map("map(x + 1, 1, y, 1)");
    let c = EndCell::initial();
    let d = c.diagonal_curve(1);
    let (mu, nu) = mu_nu(&d, &f).unwrap();
    let fs = pushforward_curve(&mu, &nu).unwrap();
    // f*(x) = 1 - 1/(x - 1)
    assert_eq!(fs.value_at(&int(3)).to_rat(), Some(rat(1, 2)));
    assert_eq!(compare_eventually(&fs, &d), Ordering::Less);
}

#[test]
fn poles_are_avoided() {
    let f = map("map(x, 1, 1, 4*y - 1)");
    let v = classify(&EndCell::initial(), &f).unwrap();
    check_disjoint(&f, &v);
}

#[test]
fn nontrivial_start_cell() {
    let c: EndCell = "cell(4, branch(z^2 - x, 1, 0), branch(z - x, 0, 0))".parse().unwrap();
    let f = map("map(x + 1, 1, y + 1, 1)");
    let v = classify(&c, &f).unwrap();
    nested(&c, &v.cell);
    check_disjoint(&f, &v);
}
