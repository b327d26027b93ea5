use std::path::Path;
use std::process::Command;

fn run(dir: &Path, args: &[&str]) -> (bool, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_rigidfield"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    (o.status.success(), String::from_utf8(o.stdout).unwrap())
}

fn last_line(s: &str) -> &str {
    s.lines().last().unwrap_or("")
}

#[test]
fn build_then_query() {
    let d = tempfile::tempdir().unwrap();
    let (ok, out) = run(d.path(), &["tower-build", "--stages", "5", "--out", "t.json"]);
    assert!(ok, "{}", out);
    assert_eq!(last_line(&out), "RESULT: 5 stages");
    let before = std::fs::read(d.path().join("t.json")).unwrap();
    assert_eq!(last_line(&run(d.path(), &["sign", "--tower", "t.json", "--poly", "x - 3"]).1), "RESULT: +1");
    assert_eq!(last_line(&run(d.path(), &["sign", "--tower", "t.json", "--poly", "0"]).1), "RESULT: 0");
    assert_eq!(last_line(&run(d.path(), &["sign", "--tower", "t.json", "--poly", "1 - x"]).1), "RESULT: -1");
    // answered from the current cell, so the file is untouched
    assert_eq!(std::fs::read(d.path().join("t.json")).unwrap(), before);
    assert!(!d.path().join("t.json.lock").exists());
}

#[test]
fn classify_default_cell() {
    let d = tempfile::tempdir().unwrap();
    let (ok, out) = run(d.path(), &["classify", "--cell", "default", "--map", "map(x+1, 1, y, 1)"]);
    assert!(ok);
    assert_eq!(last_line(&out), "RESULT: disjoint case4");
    let (_, out) = run(d.path(), &["classify", "--map", "map(x, 1, y, 1)"]);
    assert_eq!(last_line(&out), "RESULT: identity case2");
}

#[test]
fn errors_end_with_error_line() {
    let d = tempfile::tempdir().unwrap();
    let (ok, out) = run(d.path(), &["sign", "--tower", "missing.json", "--poly", "x"]);
    assert!(!ok);
    assert!(last_line(&out).starts_with("ERROR: "), "{}", out);
    run(d.path(), &["tower-build", "--stages", "1", "--out", "t.json"]);
    let (ok, out) = run(d.path(), &["sign", "--tower", "t.json", "--poly", "x +"]);
    assert!(!ok);
    assert!(last_line(&out).starts_with("ERROR: parse error"), "{}", out);
    std::fs::write(d.path().join("bad.json"), "{\"version\": 9}").unwrap();
    let (ok, _) = run(d.path(), &["verify", "--tower", "bad.json"]);
    assert!(!ok);
    let (ok, out) = run(d.path(), &["prop21", "--m", "1"]);
    assert!(!ok && last_line(&out).starts_with("ERROR: "));
}

#[test]
fn held_lock_refuses_writes() {
    let d = tempfile::tempdir().unwrap();
    run(d.path(), &["tower-build", "--stages", "2", "--out", "t.json"]);
    let before = std::fs::read(d.path().join("t.json")).unwrap();
    std::fs::write(d.path().join("t.json.lock"), "").unwrap();
    let (ok, out) = run(d.path(), &["tower-extend", "--tower", "t.json", "--stages", "1"]);
    assert!(!ok, "{}", out);
    assert_eq!(std::fs::read(d.path().join("t.json")).unwrap(), before);
}

#[test]
fn extend_matches_longer_build() {
    let d = tempfile::tempdir().unwrap();
    run(d.path(), &["tower-build", "--stages", "3", "--out", "a.json"]);
    run(d.path(), &["tower-extend", "--tower", "a.json", "--stages", "2"]);
    run(d.path(), &["tower-build", "--stages", "5", "--out", "b.json"]);
    assert_eq!(
        std::fs::read(d.path().join("a.json")).unwrap(),
        std::fs::read(d.path().join("b.json")).unwrap()
    );
    let (ok, out) = run(d.path(), &["verify", "--tower", "a.json"]);
    assert!(ok && last_line(&out).starts_with("RESULT: ok"), "{}", out);
}

#[test]
fn roots_and_comparisons() {
    let d = tempfile::tempdir().unwrap();
    run(d.path(), &["tower-build", "--stages", "0", "--out", "s.json", "--mode", "session"]);
    let (_, out) = run(d.path(), &["roots", "--tower", "s.json", "--poly", "z^3 - x*z"]);
    assert_eq!(last_line(&out), "RESULT: 3");
    let (_, out) = run(d.path(), &["compare", "--tower", "s.json", "--a", "root(z^2 - x, 0)", "--b", "-1"]);
    assert_eq!(last_line(&out), "RESULT: less");
    let (_, out) = run(d.path(), &["compare", "--tower", "s.json", "--a", "x", "--b", "x^2"]);
    assert_eq!(last_line(&out), "RESULT: less");
    let (_, out) = run(d.path(), &["compare", "--tower", "s.json", "--a", "root(z - y, 0)", "--b", "y"]);
    assert_eq!(last_line(&out), "RESULT: equal");
}

#[test]
fn prop21_verb() {
    let d = tempfile::tempdir().unwrap();
    let (ok, out) = run(d.path(), &["prop21", "--m", "2", "--height-cap", "4"]);
    assert!(ok);
    assert!(last_line(&out).starts_with("RESULT: pass m=2"));
}
