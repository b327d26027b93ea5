//! One line per acceptance criterion, then a nonzero exit if any failed.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidfield::branch::{compare_eventually, compare_eventually_with_bound, Branch};
use rigidfield::endcell::EndCell;
use rigidfield::field::{KElement, KPoly, Oracle};
use rigidfield::maplemma::{classify, LemmaCase, RationalMap2, VerdictKind};
use rigidfield::poly::{poly1, poly2, IntPoly1, IntPoly2};
use rigidfield::polyalg::sturm_chain;
use rigidfield::rat::{eval_interval, eval_rat2, int, sign_of, Rat};
use rigidfield::typebuilder::{build_tower, load_tower, save_tower, verify_tower, Caps, Mode, Tower};
use rigidfield::RealAlg;
use std::cmp::Ordering;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($c:expr, $($fmt:tt)+) => {
        if !$c {
            return Err(format!($($fmt)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn to_f64(a: &RealAlg) -> f64 {
    a.refine_to(&Rat::new(1.into(), BigInt::from(10).pow(20))).interval().mid().to_f64().unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6 * (1.0 + a.abs().max(b.abs()))
}

fn random_poly1(r: &mut ChaCha8Rng, max_deg: usize, max_c: i64) -> IntPoly1 {
    loop {
        let d = r.gen_range(1..=max_deg);
        let c: Vec<i64> = (0..=d).map(|_| r.gen_range(-max_c..=max_c)).collect();
        let p = poly1(&c);
        if p.deg() >= 1 {
            return p;
        }
    }
}

/// A random real algebraic number of degree at most `max_deg`.
fn random_alg(r: &mut ChaCha8Rng, max_deg: usize) -> RealAlg {
    loop {
        let p = random_poly1(r, max_deg, 50);
        let roots = RealAlg::roots_of(&p).unwrap();
        if !roots.is_empty() {
            let i = r.gen_range(0..roots.len());
            return roots[i].clone();
        }
    }
}

fn random_poly2(r: &mut ChaCha8Rng, max_deg: u32, need_y: bool) -> IntPoly2 {
    loop {
        let n = r.gen_range(2..=5);
        let terms: Vec<(u32, u32, i64)> = (0..n)
            .map(|_| {
                let d = r.gen_range(0..=max_deg);
                let j = r.gen_range(0..=d);
                (d - j, j, r.gen_range(-5..=5))
            })
            .collect();
        let p = poly2(&terms);
        if !p.is_zero() && (!need_y || p.deg() >= 1) {
            return p;
        }
    }
}

fn criterion_realalg() -> Check {
    let mut r = rng(1);
    let vals: Vec<RealAlg> = (0..200).map(|i| random_alg(&mut r, if i % 4 == 0 { 6 } else { 3 })).collect();
    let approx: Vec<f64> = vals.iter().map(to_f64).collect();
    let mut checks = 0;
    for i in 0..vals.len() {
        let (a, b) = (&vals[i], &vals[(i + 1) % vals.len()]);
        let (fa, fb) = (approx[i], approx[(i + 1) % vals.len()]);
        // keep the composed degree moderate
        if a.defining().deg() * b.defining().deg() <= 12 {
            let s = a.add(b);
            ensure!(s.compare(&b.add(a)) == Ordering::Equal, "a + b != b + a at {}", i);
            ensure!(close(to_f64(&s), fa + fb), "sum off at {}", i);
            let p = a.mul(b);
            ensure!(close(to_f64(&p), fa * fb), "product off at {}", i);
            ensure!(p.compare(&b.mul(a)) == Ordering::Equal, "ab != ba at {}", i);
            checks += 4;
            if a.defining().deg() * b.defining().deg() <= 6 {
                ensure!(s.sub(b).compare(a) == Ordering::Equal, "(a + b) - b != a at {}", i);
                if b.sign() != 0 {
                    ensure!(p.div(b).unwrap().compare(a) == Ordering::Equal, "ab / b != a at {}", i);
                }
                checks += 2;
            }
        }
        ensure!(a.sub(a).sign() == 0, "a - a != 0 at {}", i);
        if a.sign() != 0 {
            ensure!(a.mul(&a.inv().unwrap()).compare(&RealAlg::from_int(1)) == Ordering::Equal, "a / a at {}", i);
        }
        let c = a.compare(b);
        ensure!(b.compare(a) == c.reverse(), "antisymmetry at {}", i);
        if (fa - fb).abs() > 1e-9 {
            ensure!(c == fa.partial_cmp(&fb).unwrap(), "order disagrees with approximation at {}", i);
        }
        checks += 3;
    }
    // associativity and distributivity on quadratic values
    let small: Vec<&RealAlg> = vals.iter().filter(|v| v.defining().deg() <= 2).take(30).collect();
    for w in small.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        ensure!(a.add(b).add(c).compare(&a.add(&b.add(c))) == Ordering::Equal, "associativity");
        ensure!(a.mul(&b.add(c)).compare(&a.mul(b).add(&a.mul(c))) == Ordering::Equal, "distributivity");
        checks += 2;
    }
    // transitivity on the sorted list
    let mut sorted = vals.clone();
    sorted.sort_by(|a, b| a.compare(b));
    for w in sorted.windows(2) {
        ensure!(w[0].compare(&w[1]) != Ordering::Greater, "sort is not monotone");
    }
    // sign_at against interval evaluation at width 1e-30
    let width = Rat::new(1.into(), BigInt::from(10).pow(30));
    for (i, a) in vals.iter().enumerate() {
        let q = random_poly1(&mut r, 3, 10);
        let s = a.sign_at(&q);
        let iv = a.refine_to(&width);
        ensure!(iv.width() <= width, "refinement too wide at {}", i);
        let e = eval_interval(&q, &iv.interval());
        if e.contains_zero() {
            ensure!(s == 0 || a.defining().gcd(&q).deg() == 0, "undecided sign at {}", i);
        } else {
            ensure!(s == sign_of(&e.mid()), "sign_at disagrees at {}", i);
        }
        ensure!(s != 0 || a.defining().gcd(&q).deg() > 0, "zero sign without a common factor at {}", i);
        checks += 1;
    }
    let r2 = RealAlg::roots_of(&poly1(&[-2, 0, 1])).unwrap()[1].clone();
    let r3 = RealAlg::roots_of(&poly1(&[-3, 0, 1])).unwrap()[1].clone();
    let s = r2.add(&r3);
    let id = poly1(&[1, 0, -10, 0, 1]);
    ensure!(s.eval_poly(&id).to_rat() == Some(Rat::zero()), "sqrt2 + sqrt3 is not a root");
    ensure!(s.sign_at(&id) == 0, "sign_at is not 0 for sqrt2 + sqrt3");
    Ok(format!("{} checks on 200 values", checks))
}

/// `q(x0, y)` for integer `x0`.
fn at_x(q: &IntPoly2, x0: &BigInt) -> IntPoly1 {
    IntPoly1::new(q.coeffs().iter().map(|c| c.eval(x0)).collect())
}

fn criterion_branches() -> Check {
    let mut r = rng(2);
    let mut pairs = Vec::new();
    let mut sampled = 0;
    for i in 0..100 {
        let q = random_poly2(&mut r, 4, true);
        let (bound, bs) = Branch::all(&q).map_err(|e| format!("{}: {}", i, e))?;
        for k in 0..20 {
            let x0 = &bound + 1 + BigInt::from(k * k * 37 + r.gen_range(0..50));
            let n = sturm_chain(&at_x(&q, &x0)).count_all();
            ensure!(n == bs.len(), "poly {}: {} roots at {} but {} branches", i, n, x0, bs.len());
            let x = Rat::from_integer(x0.clone());
            let vs: Vec<RealAlg> = bs.iter().map(|b| b.value_at(&x)).collect();
            for w in vs.windows(2) {
                ensure!(w[0].compare(&w[1]) == Ordering::Less, "poly {}: branches cross at {}", i, x0);
            }
            for v in &vs {
                ensure!(v.sign_at(&at_x(&q, &x0)) == 0, "poly {}: value off the curve", i);
            }
            sampled += 1;
        }
        pairs.extend(bs);
    }
    let mut compared = 0;
    let million = BigInt::from(1_000_000);
    while compared < 100 {
        let a = &pairs[r.gen_range(0..pairs.len())];
        let b = &pairs[r.gen_range(0..pairs.len())];
        let (c, w) = compare_eventually_with_bound(a, b);
        let x = Rat::from_integer(w.max(a.bound().clone()).max(b.bound().clone()) + &million);
        let exact = a.value_at(&x).compare(&b.value_at(&x));
        ensure!(c == exact, "{} vs {}: {:?} but {:?} at {}", a, b, c, exact, x);
        ensure!(compare_eventually(a, b) == c, "bound-free comparison differs");
        compared += 1;
    }
    Ok(format!("{} samples on 100 polynomials, {} pairs", sampled, compared))
}

fn nested(outer: &EndCell, inner: &EndCell) -> bool {
    inner.alpha() >= outer.alpha()
        && compare_eventually(outer.lower(), inner.lower()) != Ordering::Greater
        && compare_eventually(inner.upper(), outer.upper()) != Ordering::Greater
}

fn criterion_endcell() -> Check {
    let mut r = rng(3);
    let start = EndCell::initial();
    let mut points = 0;
    for i in 0..100 {
        let p = random_poly2(&mut r, 3, false);
        let (sub, s) = start.refine_by_polynomial(&p);
        ensure!(s != 0, "poly {} got sign 0", i);
        ensure!(nested(&start, &sub), "poly {}: not nested", i);
        for (x, y) in sub.sample_points(10, i) {
            ensure!(start.contains(&x, &y) && sub.contains(&x, &y), "poly {}: sample outside", i);
            ensure!(sign_of(&eval_rat2(&p, &x, &y)) == s, "poly {}: sign differs at ({}, {})", i, x, y);
            points += 1;
        }
    }
    Ok(format!("100 polynomials, {} samples", points))
}

fn criterion_maplemma() -> Check {
    let suite = [
        ("map(x, 1, y, 1)", VerdictKind::Identity, LemmaCase::Case2),
        ("map(x + 1, 1, y, 1)", VerdictKind::Disjoint, LemmaCase::Case4),
        ("map(y, 1, x, 1)", VerdictKind::Disjoint, LemmaCase::Case3),
        ("map(x, 1, 1, x)", VerdictKind::Disjoint, LemmaCase::Case1),
        ("map(x, 1, x*y + 1, x)", VerdictKind::Disjoint, LemmaCase::Case4),
        ("map(2*x, 1, y, 1)", VerdictKind::Disjoint, LemmaCase::Case4),
        ("map(x^2, 1, y, 1)", VerdictKind::Disjoint, LemmaCase::Case4),
        ("map(x, 1, y, 2)", VerdictKind::Disjoint, LemmaCase::Case4),
    ];
    let start = EndCell::initial();
    let mut tags = Vec::new();
    for (k, (s, kind, case)) in suite.iter().enumerate() {
        let f: RationalMap2 = s.parse().map_err(|e| format!("{}: {}", s, e))?;
        let v = classify(&start, &f).map_err(|e| format!("{}: {}", s, e))?;
        ensure!(v.kind == *kind && v.case == *case, "{}: got {:?} {:?}", s, v.kind, v.case);
        ensure!(nested(&start, &v.cell), "{}: verdict cell not nested", s);
        if v.kind == VerdictKind::Disjoint {
            for (x, y) in v.cell.sample_points(10, k as u64) {
                ensure!(v.cell.contains(&x, &y), "{}: sample outside", s);
                let (fx, fy) = f.eval(&x, &y).ok_or_else(|| format!("{}: pole at a sample", s))?;
                ensure!(!v.cell.contains(&fx, &fy), "{}: ({}, {}) maps back into the cell", s, x, y);
            }
        }
        tags.push(v.case.tag());
    }
    Ok(tags.join(" "))
}

fn criterion_tower(out: &mut Vec<Tower>) -> Check {
    let caps = Caps::default();
    let t0 = Instant::now();
    let t = build_tower(30, Mode::Canonical, &caps);
    let took = t0.elapsed();
    ensure!(took < Duration::from_secs(600), "30 stages took {:?}", took);
    ensure!(t.stages.len() == 31, "{} stages", t.stages.len() - 1);
    for (i, s) in t.stages.iter().enumerate() {
        ensure!(s.index == i, "stage {} has index {}", i, s.index);
        ensure!(s.cell.alpha() >= &int(i as i64), "stage {}: alpha below index", i);
    }
    for w in t.stages.windows(2) {
        ensure!(nested(&w[0].cell, &w[1].cell), "stage {} not nested", w[1].index);
    }
    let audit = verify_tower(&t, 5, 30);
    ensure!(audit.ok(), "audit failures: {:?}", audit.failures);
    ensure!(audit.signs_checked == 30, "{} signs checked", audit.signs_checked);
    let msg = format!(
        "30 stages in {:.1}s, {} maps separated, {} skipped",
        took.as_secs_f64(),
        audit.maps_checked,
        audit.skipped
    );
    for s in &t.stages {
        if let Some(n) = &s.note {
            eprintln!("stage {}: {}", s.index, n);
        }
    }
    out.push(t);
    Ok(msg)
}

fn random_k(r: &mut ChaCha8Rng) -> KElement {
    loop {
        let n = random_poly2(r, 2, false);
        let d = random_poly2(r, 1, false);
        if let Ok(e) = KElement::new(n, d) {
            return e;
        }
    }
}

fn e<T>(r: rigidfield::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_field(out: &mut Vec<Tower>) -> Check {
    let mut r = rng(6);
    let mut o = Oracle::new(Tower::new(Mode::Session), Caps::default());
    for _ in 0..100 {
        let (u, v, w) = (random_k(&mut r), random_k(&mut r), random_k(&mut r));
        let (su, sv) = (e(o.sign(&u))?, e(o.sign(&v))?);
        ensure!(e(o.sign(&u.mul(&v)))? == su * sv, "sign({} * {})", u, v);
        let c = e(o.compare(&u, &v))?;
        ensure!(e(o.compare(&u.add(&w), &v.add(&w)))? == c, "translation by {} moves {} vs {}", w, u, v);
        ensure!(e(o.compare(&v, &u))? == c.reverse(), "antisymmetry");
    }
    for n in ["10", "1000", "1000000"] {
        let k: KElement = format!("x - {}", n).parse().unwrap();
        ensure!(e(o.sign(&k))? == 1, "x - {} is not positive", n);
    }
    for (p, want) in [("z^2 - x", 2), ("z^2 + 1", 0), ("z^2 - y*(y - 1)", 0)] {
        let kp: KPoly = p.parse().unwrap();
        let n = e(o.count_real_roots(&kp))?;
        ensure!(n == want, "{} has {} roots, expected {}", p, n, want);
    }
    let msg = format!("100 triples, session tower of {} stages", o.tower.len() - 1);
    out.push(o.tower);
    Ok(msg)
}

fn criterion_prop21() -> Check {
    let t0 = Instant::now();
    let mut parts = Vec::new();
    for m in [2, 3] {
        let r = rigidfield::field::prop21_check(m, 5);
        ensure!(r.passed(), "m = {}: {:?}", m, r.counterexamples);
        ensure!(r.pairs == 50, "m = {}: {} pairs", m, r.pairs);
        parts.push(format!("m={}: {} polynomials", m, r.polynomials));
    }
    ensure!(t0.elapsed() < Duration::from_secs(30), "took {:?}", t0.elapsed());
    Ok(parts.join(", "))
}

const SCRIPT: &[&[&str]] = &[
    &["tower-build", "--stages", "8", "--out", "c.json"],
    &["tower-extend", "--tower", "c.json", "--stages", "2"],
    &["sign", "--tower", "c.json", "--poly", "x - 3"],
    &["sign", "--tower", "c.json", "--poly", "y^2 - x*y + 1"],
    &["tower-build", "--stages", "1", "--out", "s.json", "--mode", "session"],
    &["sign", "--tower", "s.json", "--poly", "x*y - 2"],
    &["compare", "--tower", "s.json", "--a", "1/x", "--b", "y^2"],
    &["roots", "--tower", "s.json", "--poly", "z^2 - x*y"],
    &["verify", "--tower", "c.json"],
];

fn run_script(dir: &std::path::Path) -> std::result::Result<Vec<String>, String> {
    let mut outs = Vec::new();
    for args in SCRIPT {
        let o = std::process::Command::new(env!("CARGO_BIN_EXE_rigidfield"))
            .args(*args)
            .current_dir(dir)
            .env_remove("RIGIDFIELD_STAGE_SECS")
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8_lossy(&o.stdout).to_string();
        ensure!(o.status.success(), "{:?} failed: {}", args, text);
        outs.push(text);
    }
    Ok(outs)
}

fn criterion_reproducibility(towers: &[Tower]) -> Check {
    let d1 = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d2 = tempfile::tempdir().map_err(|e| e.to_string())?;
    let o1 = run_script(d1.path())?;
    let o2 = run_script(d2.path())?;
    ensure!(o1 == o2, "command outputs differ");
    for f in ["c.json", "s.json"] {
        let a = std::fs::read(d1.path().join(f)).map_err(|e| e.to_string())?;
        let b = std::fs::read(d2.path().join(f)).map_err(|e| e.to_string())?;
        ensure!(a == b, "{} differs between runs", f);
        let t = load_tower(std::str::from_utf8(&a).unwrap()).map_err(|e| e.to_string())?;
        ensure!(save_tower(&t).as_bytes() == a.as_slice(), "{} does not re-save identically", f);
    }
    for t in towers {
        let back = load_tower(&save_tower(t)).map_err(|e| e.to_string())?;
        ensure!(&back == t, "load(save(t)) differs for a {}-stage tower", t.len());
    }
    Ok(format!("{} commands twice, {} suite towers round-tripped", SCRIPT.len(), towers.len()))
}

fn report(n: usize, name: &str, f: impl FnOnce() -> Check) -> bool {
    let t0 = Instant::now();
    let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
    let secs = t0.elapsed().as_secs_f64();
    match r {
        Ok(m) => {
            println!("criterion {} {}: PASS ({:.1}s) {}", n, name, secs, m);
            true
        }
        Err(m) => {
            println!("criterion {} {}: FAIL ({:.1}s) {}", n, name, secs, m);
            false
        }
    }
}

fn main() {
    let mut towers = Vec::new();
    let mut ok = true;
    ok &= report(1, "realalg", criterion_realalg);
    ok &= report(2, "branches", criterion_branches);
    ok &= report(3, "endcell", criterion_endcell);
    ok &= report(4, "maplemma", criterion_maplemma);
    ok &= report(5, "tower", || criterion_tower(&mut towers));
    ok &= report(6, "field", || criterion_field(&mut towers));
    ok &= report(7, "prop21", criterion_prop21);
    ok &= report(8, "reproducibility", || criterion_reproducibility(&towers));
    if !ok {
        std::process::exit(1);
    }
}
