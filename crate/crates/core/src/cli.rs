//! The `rigidfield` command line.
//!
//! Every run ends with one line, `RESULT: <value>` on success or
//! `ERROR: <message>` on failure. Verbs that extend a tower rewrite the
//! file through a temporary and a rename, holding `<file>.lock` meanwhile.

use crate::endcell::EndCell;
use crate::error::{Error, Result};
use crate::field::{KElement, KPoly, Oracle, RootElement};
use crate::maplemma::{classify, RationalMap2, VerdictKind};
use crate::syntax::parse_expr;
use crate::typebuilder::{build_stage, build_tower, load_tower, save_tower, verify_tower, Caps, Mode, Tower};
use clap::{Parser, Subcommand, ValueEnum};
use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "rigidfield", version, about = "Towers of end-cells and the ordered field they realize")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Canonical,
    Session,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a fresh tower and write it to a file.
    TowerBuild {
        #[arg(long)]
        stages: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "canonical")]
        mode: ModeArg,
    },
    /// Append stages to a tower file.
    TowerExtend {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long)]
        stages: usize,
    },
    /// Sign of an element of the field, e.g. `x*y - 1` or `1/(y - x)`.
    Sign {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Order of two elements; either may be `root(p, i)`.
    Compare {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Run the map classifier on a cell.
    Classify {
        /// `default` or `cell(alpha, lower, upper)`.
        #[arg(long, default_value = "default")]
        cell: String,
        #[arg(long)]
        map: String,
    },
    /// Real roots of a polynomial in `z` over the field.
    Roots {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Check that `x -> x^m` preserves eventual signs and order.
    Prop21 {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 5)]
        height_cap: usize,
    },
    /// Re-check the certificates recorded in a tower file.
    Verify {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status and the text to print.
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli.command, &Caps::from_env()),
        Err(e) if !e.use_stderr() => Outcome {
            code: 0,
            text: e.to_string(),
        },
        Err(e) => Outcome {
            code: 2,
            text: format!("{}ERROR: invalid arguments\n", e),
        },
    }
}

pub fn run(cmd: Command, caps: &Caps) -> Outcome {
    let mut out = String::new();
    match execute(cmd, caps, &mut out) {
        Ok(v) => {
            out.push_str(&format!("RESULT: {}\n", v));
            Outcome { code: 0, text: out }
        }
        Err(e) => {
            out.push_str(&format!("ERROR: {}\n", e));
            Outcome { code: 1, text: out }
        }
    }
}

fn execute(cmd: Command, caps: &Caps, out: &mut String) -> Result<String> {
    match cmd {
        Command::TowerBuild { stages, out: path, mode } => {
            let mode = match mode {
                ModeArg::Canonical => Mode::Canonical,
                ModeArg::Session => Mode::Session,
            };
            with_lock(&path, || {
                let t = build_tower(stages, mode, caps);
                write_atomic(&path, &save_tower(&t))?;
                Ok(summary(&t, out))
            })
        }
        Command::TowerExtend { tower, stages } => with_lock(&tower, || {
            let mut t = read(&tower)?;
            for _ in 0..stages {
                t = build_stage(&t, caps);
            }
            write_atomic(&tower, &save_tower(&t))?;
            Ok(summary(&t, out))
        }),
        Command::Sign { tower, poly } => {
            let u = KElement::from_expr(&parse_expr(&poly)?)?;
            with_oracle(&tower, caps, |o| {
                let s = o.sign(&u)?;
                Ok(match s {
                    1 => "+1".to_string(),
                    s => s.to_string(),
                })
            })
        }
        Command::Compare { tower, a, b } => {
            let (a, b) = (operand(&a)?, operand(&b)?);
            with_oracle(&tower, caps, |o| {
                let c = compare(o, &a, &b)?;
                Ok(match c {
                    Ordering::Less => "less",
                    Ordering::Equal => "equal",
                    Ordering::Greater => "greater",
                }
                .to_string())
            })
        }
        Command::Classify { cell, map } => {
            let cell = if cell.trim() == "default" {
                EndCell::initial()
            } else {
                cell.parse()?
            };
            let map: RationalMap2 = map.parse()?;
            let v = classify(&cell, &map)?;
            out.push_str(&format!("cell: {}\n", v.cell));
            if let Some(w) = &v.witness {
                out.push_str(&format!("witness: {}\n", w));
            }
            let kind = match v.kind {
                VerdictKind::Identity => "identity",
                VerdictKind::Disjoint => "disjoint",
            };
            Ok(format!("{} {}", kind, v.case.tag()))
        }
        Command::Roots { tower, poly } => {
            let p: KPoly = poly.parse()?;
            with_oracle(&tower, caps, |o| {
                let n = o.count_real_roots(&p)?;
                for i in 0..n {
                    out.push_str(&format!("{}\n", o.root_element(&p, i)?));
                }
                Ok(n.to_string())
            })
        }
        Command::Prop21 { m, height_cap } => {
            if m < 2 {
                return Err(Error::InvalidMap("exponent must be at least 2".into()));
            }
            let r = crate::field::prop21_check(m, height_cap);
            for c in &r.counterexamples {
                out.push_str(&format!("counterexample: {}\n", c));
            }
            if !r.passed() {
                return Err(Error::Document(format!("{} counterexamples", r.counterexamples.len())));
            }
            Ok(format!("pass m={} polynomials={} pairs={}", m, r.polynomials, r.pairs))
        }
        Command::Verify { tower, samples, seed } => {
            let t = read(&tower)?;
            let a = verify_tower(&t, samples, seed);
            for f in &a.failures {
                out.push_str(&format!("failure: {}\n", f));
            }
            if !a.ok() {
                return Err(Error::Document(format!("{} failed checks", a.failures.len())));
            }
            Ok(format!(
                "ok stages={} signs={} maps={} skipped={}",
                a.stages, a.signs_checked, a.maps_checked, a.skipped
            ))
        }
    }
}

enum Operand {
    K(KElement),
    Root(KPoly, usize),
}

fn operand(s: &str) -> Result<Operand> {
    let e = parse_expr(s)?;
    if let crate::syntax::Expr::Call(name, _) = &e {
        if name == "root" {
            let (p, i) = RootElement::from_expr(&e)?;
            return Ok(Operand::Root(p, i));
        }
    }
    Ok(Operand::K(KElement::from_expr(&e)?))
}

fn compare(o: &mut Oracle, a: &Operand, b: &Operand) -> Result<Ordering> {
    match (a, b) {
        (Operand::K(u), Operand::K(v)) => o.compare(u, v),
        (Operand::Root(p, i), Operand::K(v)) => {
            let r = o.root_element(p, *i)?;
            o.compare_root(&r, v)
        }
        (Operand::K(_), Operand::Root(..)) => Ok(compare(o, b, a)?.reverse()),
        (Operand::Root(p, i), Operand::Root(q, j)) => {
            let r = o.root_element(p, *i)?;
            let s = o.root_element(q, *j)?;
            o.compare_roots(&r, &s)
        }
    }
}

fn summary(t: &Tower, out: &mut String) -> String {
    out.push_str(&format!("cell: {}\n", t.cell()));
    if t.skipped() > 0 {
        out.push_str(&format!("skipped: {}\n", t.skipped()));
    }
    format!("{} stages", t.len() - 1)
}

fn read(path: &Path) -> Result<Tower> {
    load_tower(&fs::read_to_string(path)?)
}

/// Runs a query against the tower in `path`, saving it if the query
/// extended it.
fn with_oracle(path: &Path, caps: &Caps, f: impl FnOnce(&mut Oracle) -> Result<String>) -> Result<String> {
    with_lock(path, || {
        let t = read(path)?;
        let mut o = Oracle::new(t.clone(), caps.clone());
        let v = f(&mut o)?;
        if o.tower != t {
            write_atomic(path, &save_tower(&o.tower))?;
        }
        Ok(v)
    })
}

fn lock_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".lock");
    PathBuf::from(s)
}

fn with_lock<T>(path: &Path, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let lock = lock_path(path);
    fs::OpenOptions::new()
        .write(true)
        .create_new(true)
        .open(&lock)
        .map_err(|e| Error::Io(format!("cannot lock {}: {}", path.display(), e)))?;
    let r = f();
    let _ = fs::remove_file(&lock);
    r
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}
