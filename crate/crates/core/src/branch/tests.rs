use super::*;
use crate::poly::{poly1, poly2};
use crate::rat::rat;

fn br(s: &str) -> Branch {
    s.parse().unwrap()
}

fn sqrt_x() -> Branch {
    Branch::new(&poly2(&[(0, 2, 1), (1, 0, -1)]), 1, BigInt::zero()).unwrap()
}

#[test]
fn square_root_pair() {
    let (b, bs) = Branch::all(&poly2(&[(0, 2, 1), (1, 0, -1)])).unwrap();
    assert!(b >= BigInt::zero());
    assert_eq!(bs.len(), 2);
    let v = bs[1].value_at(&int(9));
    assert_eq!(v.to_rat(), Some(int(3)));
    assert_eq!(bs[0].value_at(&int(9)).to_rat(), Some(int(-3)));
}

#[test]
fn reciprocal_square_roots() {
    // x z^2 - 1: values near +-0.001 at x = 10^6
    let (b, bs) = Branch::all(&poly2(&[(1, 2, 1), (0, 0, -1)])).unwrap();
    assert!(b >= BigInt::zero());
    assert_eq!(bs.len(), 2);
    let x0 = int(1_000_000);
    assert_eq!(bs[1].value_at(&x0).to_rat(), Some(rat(1, 1000)));
    assert_eq!(bs[0].value_at(&x0).to_rat(), Some(rat(-1, 1000)));
}

#[test]
fn constant_in_z_rejected() {
    assert_eq!(Branch::all(&poly2(&[(1, 0, 1)])).unwrap_err(), Error::ConstantInVariable);
}

#[test]
fn eventual_comparisons() {
    let half_x = Branch::rational(&poly1(&[0, 1]), &poly1(&[2]));
    let (o, b) = compare_eventually_with_bound(&sqrt_x(), &half_x);
    assert_eq!(o, Ordering::Less);
    assert!(b >= BigInt::from(4));
    assert_eq!(compare_eventually(&Branch::identity(), &Branch::identity()), Ordering::Equal);
    let inv = Branch::rational(&poly1(&[1]), &poly1(&[0, 1]));
    let inv2 = Branch::rational(&poly1(&[2]), &poly1(&[0, 1]));
    assert_eq!(compare_eventually(&inv, &inv2), Ordering::Less);
}

#[test]
fn limits() {
    let b = Branch::rational(&poly1(&[0, 1]), &poly1(&[1, 1]));
    assert_eq!(limit_at_infinity(&b), Limit::Finite(RealAlg::from_int(1)));
    assert_eq!(limit_at_infinity(&sqrt_x()), Limit::PosInf);
    let inv = Branch::rational(&poly1(&[1]), &poly1(&[0, 1]));
    assert_eq!(limit_at_infinity(&inv), Limit::Finite(RealAlg::from_int(0)));
    // nonlinear branch with finite irrational limit: (x+1) z^2 - 2x
    let s = Branch::new(&poly2(&[(1, 2, 1), (0, 2, 1), (1, 0, -2)]), 1, BigInt::zero()).unwrap();
    match limit_at_infinity(&s) {
        Limit::Finite(l) => assert_eq!(l.sign_at(&poly1(&[-2, 0, 1])), 0),
        other => panic!("{:?}", other),
    }
}

#[test]
fn monotonicity() {
    assert_eq!(monotone_eventually(&sqrt_x()), Monotone::Increasing);
    let inv = Branch::rational(&poly1(&[1]), &poly1(&[0, 1]));
    assert_eq!(monotone_eventually(&inv), Monotone::Decreasing);
    assert_eq!(monotone_eventually(&Branch::from_int(3)), Monotone::Constant);
}

#[test]
fn combinations() {
    let m = Branch::from_int(0).mix(&Branch::from_int(1), &rat(1, 2));
    assert_eq!(m.as_constant(), Some(rat(1, 2)));
    let z = sqrt_x().add(&sqrt_x().neg());
    assert_eq!(compare_eventually(&z, &Branch::from_int(0)), Ordering::Equal);
    let sq = sqrt_x().mul(&sqrt_x());
    assert_eq!(compare_eventually(&sq, &Branch::identity()), Ordering::Equal);
    assert_eq!(sq.value_at(&int(9)).to_rat(), Some(int(9)));
    assert_eq!(Branch::from_int(0).inv(), Err(Error::BranchDivisionByZero));
}

#[test]
fn minimum() {
    let x = Branch::identity();
    let x2 = Branch::poly_x(&poly1(&[0, 0, 1]));
    assert_eq!(compare_eventually(&branch_min(&[x.clone(), x2]), &x), Ordering::Equal);
    let half_x = Branch::rational(&poly1(&[0, 1]), &poly1(&[2]));
    let m = branch_min(&[sqrt_x(), half_x]);
    assert_eq!(compare_eventually(&m, &sqrt_x()), Ordering::Equal);
}

#[test]
fn inversion() {
    let x2 = Branch::poly_x(&poly1(&[0, 0, 1]));
    assert_eq!(compare_eventually(&x2.invert().unwrap(), &sqrt_x()), Ordering::Equal);
    let s = Branch::poly_x(&poly1(&[1, 1])).invert().unwrap();
    assert_eq!(s.as_rational(), Some((poly1(&[-1, 1]), poly1(&[1]))));
    let cube_root = Branch::new(&poly2(&[(0, 3, 1), (1, 0, -1)]), 0, BigInt::zero()).unwrap();
    let cube = cube_root.invert().unwrap();
    assert_eq!(cube.value_at(&int(2)).to_rat(), Some(int(8)));
    assert_eq!(cube_root.value_at(&int(8)).to_rat(), Some(int(2)));
    let inv = Branch::rational(&poly1(&[1]), &poly1(&[0, 1]));
    assert_eq!(inv.invert(), Err(Error::NotIncreasingToInfinity));
}

#[test]
fn double_inversion() {
    let b = Branch::new(&poly2(&[(0, 3, 1), (0, 1, 1), (1, 0, -1)]), 0, BigInt::zero()).unwrap();
    let back = b.invert().unwrap().invert().unwrap();
    assert_eq!(compare_eventually(&back, &b), Ordering::Equal);
}

#[test]
fn composition() {
    let x2 = Branch::poly_x(&poly1(&[0, 0, 1]));
    let c = sqrt_x().compose(&x2).unwrap();
    assert_eq!(compare_eventually(&c, &Branch::identity()), Ordering::Equal);
    let s = Branch::poly_x(&poly1(&[1, 1]));
    let c = s.compose(&s).unwrap();
    assert_eq!(c.as_rational(), Some((poly1(&[2, 1]), poly1(&[1]))));
    let inv = Branch::rational(&poly1(&[1]), &poly1(&[0, 1]));
    let c = inv.compose(&x2).unwrap();
    assert_eq!(c.value_at(&int(10)).to_rat(), Some(rat(1, 100)));
    let neg = Branch::from_int(-5);
    assert!(matches!(sqrt_x().compose(&neg), Err(Error::CompositionDomain(_))));
}

#[test]
fn text_round_trip() {
    let b = br("branch(z^2 - x, 1, 0)");
    assert_eq!(b, sqrt_x());
    assert_eq!(b.to_string(), "branch(z^2 - x, 1, 0)");
    assert!("branch(z^2 + 1, 0, 0)".parse::<Branch>().is_err());
}

