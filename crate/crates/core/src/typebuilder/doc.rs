//! JSON form of a tower. Every polynomial, branch and cell is written in the
//! expression grammar.

use super::{Mode, Stage, Tower};
use crate::branch::Branch;
use crate::endcell::EndCell;
use crate::error::{Error, Result};
use crate::maplemma::{LemmaCase, LemmaVerdict, RationalMap2, VerdictKind};
use crate::poly::IntPoly2;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerDoc {
    version: u32,
    mode: String,
    stages: Vec<StageDoc>,
    decided: BTreeMap<String, i8>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageDoc {
    index: usize,
    cell: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    verdict: Option<VerdictDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerdictDoc {
    kind: String,
    case: String,
    cell: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn stage_doc(s: &Stage) -> StageDoc {
    let (map, verdict) = match &s.decided_map {
        Some((f, v)) => (
            Some(f.to_string()),
            Some(VerdictDoc {
                kind: match v.kind {
                    VerdictKind::Identity => "identity",
                    VerdictKind::Disjoint => "disjoint",
                }
                .into(),
                case: v.case.tag().into(),
                cell: v.cell.to_string(),
                witness: v.witness.as_ref().map(|w| w.to_string()),
            }),
        ),
        None => (None, None),
    };
    StageDoc {
        index: s.index,
        cell: s.cell.to_string(),
        map,
        verdict,
        formula: s.decided_formula.as_ref().map(|(p, _)| super::poly_key(p)),
        sign: s.decided_formula.as_ref().map(|(_, s)| *s),
        note: s.note.clone(),
    }
}

/// Pretty-printed JSON, identical for identical towers.
pub fn save_tower(t: &Tower) -> String {
    let doc = TowerDoc {
        version: FORMAT_VERSION,
        mode: t.mode.name().into(),
        stages: t.stages.iter().map(stage_doc).collect(),
        decided: t.decided.clone(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

fn field<T>(stage: usize, what: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Document(format!("stages[{}].{}: {}", stage, what, e)))
}

fn load_stage(d: StageDoc) -> Result<Stage> {
    let i = d.index;
    let cell: EndCell = field(i, "cell", d.cell.parse())?;
    let decided_map = match (d.map, d.verdict) {
        (Some(m), Some(v)) => {
            let f: RationalMap2 = field(i, "map", m.parse())?;
            let kind = match v.kind.as_str() {
                "identity" => VerdictKind::Identity,
                "disjoint" => VerdictKind::Disjoint,
                k => return Err(Error::Document(format!("stages[{}].verdict.kind: unknown {:?}", i, k))),
            };
            let case = LemmaCase::from_tag(&v.case)
                .ok_or_else(|| Error::Document(format!("stages[{}].verdict.case: unknown {:?}", i, v.case)))?;
            let vcell: EndCell = field(i, "verdict.cell", v.cell.parse())?;
            let witness = match v.witness {
                Some(w) => Some(field::<Branch>(i, "verdict.witness", w.parse())?),
                None => None,
            };
            Some((f, LemmaVerdict { kind, case, cell: vcell, witness }))
        }
        (None, None) => None,
        _ => return Err(Error::Document(format!("stages[{}]: map and verdict must appear together", i))),
    };
    let decided_formula = match (d.formula, d.sign) {
        (Some(p), Some(s)) => Some((field::<IntPoly2>(i, "formula", IntPoly2::parse(&p))?, s)),
        (None, None) => None,
        _ => return Err(Error::Document(format!("stages[{}]: formula and sign must appear together", i))),
    };
    Ok(Stage {
        index: i,
        cell,
        decided_map,
        decided_formula,
        note: d.note,
    })
}

pub fn load_tower(text: &str) -> Result<Tower> {
    let doc: TowerDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::Document(format!(
            "format version {} is not supported (expected {})",
            doc.version, FORMAT_VERSION
        )));
    }
    let mode = match doc.mode.as_str() {
        "canonical" => Mode::Canonical,
        "session" => Mode::Session,
        m => return Err(Error::Document(format!("mode: unknown {:?}", m))),
    };
    let stages: Vec<Stage> = doc.stages.into_iter().map(load_stage).collect::<Result<_>>()?;
    if stages.is_empty() {
        return Err(Error::Document("stages: empty".into()));
    }
    for (k, s) in stages.iter().enumerate() {
        if s.index != k {
            return Err(Error::Document(format!("stages[{}].index: found {}", k, s.index)));
        }
    }
    Ok(Tower {
        stages,
        mode,
        decided: doc.decided,
    })
}
