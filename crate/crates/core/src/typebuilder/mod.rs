//! Towers of nested end-cells approximating a rigid 2-type.
//!
//! Stage `n + 1` handles `enum_map(n)` with [`classify`], refines by
//! `enum_polynomial(n)` and pushes `alpha` past `n + 1`.

mod doc;
mod enumerate;

pub use doc::{load_tower, save_tower, FORMAT_VERSION};
pub use enumerate::{
    canonical, enum_map, enum_polynomial, fractions_of_height, height, int_content, polynomial_index,
    polys_of_height,
};

use crate::endcell::EndCell;
use crate::error::{Error, Result};
use crate::maplemma::{classify, LemmaVerdict, RationalMap2, VerdictKind};
use crate::poly::IntPoly2;
use crate::rat::{int, sign_of as rat_sign, Rat};
use crate::ring::Ring;
use crate::syntax::format_poly2;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::mpsc;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Signs are decided only in enumeration order.
    Canonical,
    /// Signs are decided in query order.
    Session,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Canonical => "canonical",
            Mode::Session => "session",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub index: usize,
    pub cell: EndCell,
    pub decided_map: Option<(RationalMap2, LemmaVerdict)>,
    pub decided_formula: Option<(IntPoly2, i8)>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub stages: Vec<Stage>,
    pub mode: Mode,
    /// Canonical polynomial text to sign.
    pub decided: BTreeMap<String, i8>,
}

/// Limits on a single stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Wall-clock limit for the map step; unset means no limit.
    pub stage_time: Option<Duration>,
    /// Largest coefficient size, in bits, accepted in a map verdict cell.
    pub max_coeff_bits: u64,
    /// Most stages a canonical sign query may build.
    pub max_stages: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            stage_time: None,
            max_coeff_bits: 4096,
            max_stages: 256,
        }
    }
}

impl Caps {
    /// Defaults overridden by `RIGIDFIELD_STAGE_SECS`,
    /// `RIGIDFIELD_MAX_BITS` and `RIGIDFIELD_MAX_STAGES`.
    pub fn from_env() -> Caps {
        let var = |k: &str| std::env::var(k).ok().and_then(|v| v.trim().parse::<u64>().ok());
        let mut c = Caps::default();
        if let Some(s) = var("RIGIDFIELD_STAGE_SECS") {
            c.stage_time = Some(Duration::from_secs(s));
        }
        if let Some(b) = var("RIGIDFIELD_MAX_BITS") {
            c.max_coeff_bits = b;
        }
        if let Some(n) = var("RIGIDFIELD_MAX_STAGES") {
            c.max_stages = n as usize;
        }
        c
    }
}

pub fn poly_key(p: &IntPoly2) -> String {
    format_poly2(p, ("x", "y"))
}

fn coeff_bits(cell: &EndCell) -> u64 {
    let mut m = 0;
    for b in [cell.lower(), cell.upper()] {
        for cy in b.defining().coeffs() {
            for c in cy.coeffs() {
                m = m.max(c.bits());
            }
        }
    }
    m
}

fn run_classify(cell: &EndCell, map: &RationalMap2, caps: &Caps) -> Result<LemmaVerdict> {
    let Some(limit) = caps.stage_time else {
        return classify(cell, map);
    };
    let (tx, rx) = mpsc::channel();
    let (c, m) = (cell.clone(), map.clone());
    std::thread::spawn(move || {
        let _ = tx.send(classify(&c, &m));
    });
    rx.recv_timeout(limit)
        .unwrap_or_else(|_| Err(Error::ResourceCap(format!("map step exceeded {}s", limit.as_secs()))))
}

impl Tower {
    pub fn new(mode: Mode) -> Tower {
        Tower {
            stages: vec![Stage {
                index: 0,
                cell: EndCell::initial(),
                decided_map: None,
                decided_formula: None,
                note: None,
            }],
            mode,
            decided: BTreeMap::new(),
        }
    }

    pub fn cell(&self) -> &EndCell {
        &self.stages.last().expect("towers are never empty").cell
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Stages whose map step was skipped.
    pub fn skipped(&self) -> usize {
        self.stages.iter().filter(|s| s.note.is_some()).count()
    }

    fn record(&mut self, p: &IntPoly2, s: i8) {
        self.decided.entry(poly_key(p)).or_insert(s);
    }
}

/// Appends the next enumeration stage.
pub fn build_stage(t: &Tower, caps: &Caps) -> Tower {
    let n = t.stages.len() - 1;
    let cell = t.cell();
    let map = enum_map(n);
    let (hat, decided_map, note) = match run_classify(cell, &map, caps) {
        Ok(v) if coeff_bits(&v.cell) > caps.max_coeff_bits => (
            cell.clone(),
            None,
            Some(format!("map {} skipped: coefficients exceed {} bits", map, caps.max_coeff_bits)),
        ),
        Ok(v) => (v.cell.clone(), Some((map, v)), None),
        Err(e) => (cell.clone(), None, Some(format!("map {} skipped: {}", map, e))),
    };
    let p = enum_polynomial(n);
    let (refined, s) = hat.refine_by_polynomial(&p);
    let cell = refined.rationalized().bump_x_bound(&int(n as i64 + 1));
    let mut out = t.clone();
    out.record(&p, s);
    out.stages.push(Stage {
        index: n + 1,
        cell,
        decided_map,
        decided_formula: Some((p, s)),
        note,
    });
    out
}

pub fn build_tower(stages: usize, mode: Mode, caps: &Caps) -> Tower {
    let mut t = Tower::new(mode);
    for _ in 0..stages {
        t = build_stage(&t, caps);
    }
    t
}

/// Sign of `p` at the type the tower approximates.
///
/// Queries never change a canonical tower except by building enumeration
/// stages; when the current cell already fixes the sign of `p`, no stage is
/// needed.
pub fn sign_of(t: &Tower, p: &IntPoly2, caps: &Caps) -> Result<(i8, Tower)> {
    if p.is_zero() {
        return Ok((0, t.clone()));
    }
    if p.total_degree() == 0 {
        return Ok((p.lead_sign(), t.clone()));
    }
    let c = canonical(p);
    let flip = if c.lead_sign() == p.lead_sign() { 1 } else { -1 };
    if let Some(&s) = t.decided.get(&poly_key(&c)) {
        return Ok((flip * s, t.clone()));
    }
    match t.mode {
        Mode::Canonical => {
            let (sub, s) = t.cell().refine_by_polynomial(&c);
            if sub.lower() == t.cell().lower() && sub.upper() == t.cell().upper() {
                return Ok((flip * s, t.clone()));
            }
            let idx = polynomial_index(&c).expect("nonconstant");
            let built = t.stages.len() - 1;
            if idx + 1 > built + caps.max_stages {
                return Err(Error::EnumerationCap { index: idx });
            }
            let mut out = t.clone();
            while out.stages.len() - 1 <= idx {
                out = build_stage(&out, caps);
            }
            let s = out.decided[&poly_key(&c)];
            Ok((flip * s, out))
        }
        Mode::Session => {
            let (sub, s) = t.cell().refine_by_polynomial(&c);
            let index = t.stages.len();
            let mut out = t.clone();
            out.record(&c, s);
            out.stages.push(Stage {
                index,
                cell: sub.rationalized().bump_x_bound(&int(index as i64)),
                decided_map: None,
                decided_formula: Some((c, s)),
                note: None,
            });
            Ok((flip * s, out))
        }
    }
}

/// Outcome of [`verify_tower`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Audit {
    pub stages: usize,
    pub signs_checked: usize,
    pub maps_checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl Audit {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Replays the certificates of a tower: nesting, `alpha >= index`, the
/// recorded signs at samples of the final cell and, for every disjoint
/// verdict, that samples of the final cell are mapped off the verdict cell.
pub fn verify_tower(t: &Tower, samples: usize, seed: u64) -> Audit {
    use crate::branch::compare_eventually;
    use std::cmp::Ordering;
    let mut a = Audit {
        stages: t.stages.len(),
        skipped: t.skipped(),
        ..Audit::default()
    };
    for w in t.stages.windows(2) {
        let (c0, c1) = (&w[0].cell, &w[1].cell);
        if c1.alpha() < c0.alpha()
            || compare_eventually(c0.lower(), c1.lower()) == Ordering::Greater
            || compare_eventually(c1.upper(), c0.upper()) == Ordering::Greater
        {
            a.failures.push(format!("stage {} is not nested in stage {}", w[1].index, w[0].index));
        }
    }
    for s in &t.stages {
        if s.cell.alpha() < &Rat::from_integer(s.index.into()) {
            a.failures.push(format!("stage {} has alpha below its index", s.index));
        }
    }
    let last = t.cell();
    let pts = last.sample_points(samples, seed);
    for s in &t.stages {
        if let Some((p, sg)) = &s.decided_formula {
            a.signs_checked += 1;
            for (x, y) in &pts {
                let v = rat_sign(&crate::rat::eval_rat2(p, x, y));
                if v != *sg {
                    a.failures.push(format!("stage {}: {} has sign {} at ({}, {})", s.index, poly_key(p), v, x, y));
                }
            }
        }
        if let Some((f, v)) = &s.decided_map {
            if v.kind != VerdictKind::Disjoint {
                continue;
            }
            a.maps_checked += 1;
            for (x, y) in &pts {
                match f.eval(x, y) {
                    Some((fx, fy)) if !v.cell.contains(&fx, &fy) => {}
                    _ => a.failures.push(format!("stage {}: {} does not move ({}, {}) off its cell", s.index, f, x, y)),
                }
            }
        }
    }
    a
}
