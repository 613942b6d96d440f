use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use hopfkit::catalog::{dual_numbers_trivial, graded_yd, h4_rform, make_h4};
use hopfkit::hopfspec::{parse, write_hopf, Document};
use hopfkit::scalar::Field;
use hopfkit::yd::{end_algebra, EndSide};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn h4_file(dir: &TempDir) -> PathBuf {
    write(
        dir,
        "h4.hopfspec",
        &write_hopf("H4", &make_h4(Field::Rational).unwrap()).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_passes_on_h4() {
    let dir = TempDir::new().unwrap();
    let o = run(&["check", s(&h4_file(&dir))]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("hopf H4: pass"));
}

#[test]
fn check_fails_with_witness_on_corrupted_coproduct() {
    let dir = TempDir::new().unwrap();
    let text = write_hopf("H4", &make_h4(Field::Rational).unwrap()).unwrap();
    // Δ(h) = h⊗1 + 1⊗h instead of h⊗g + 1⊗h.
    let bad = text.replace("comult h g h 1", "comult h 1 h 1");
    assert_ne!(bad, text);
    let o = run(&["check", s(&write(&dir, "bad.hopfspec", &bad))]);
    assert_eq!(code(&o), 1);
    assert!(
        stdout(&o).contains("FAIL") && stdout(&o).contains(" at ["),
        "{}",
        stdout(&o)
    );
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "bad.hopfspec",
        "hopfspec 1\nfield rationals\nhopf A\n  basis x\n  unit y 1\nend\n",
    );
    let o = run(&["check", s(&p)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains(":5:8:"));
    assert_eq!(code(&run(&["check", "/nonexistent/file"])), 2);
    assert_eq!(code(&run(&["variant", s(&p)])), 2);
}

#[test]
fn twist_by_sigma_reproduces_h4() {
    let dir = TempDir::new().unwrap();
    let o = run(&["twist", s(&h4_file(&dir)), "--cocycle", "sigma:t=1"]);
    assert_eq!(code(&o), 0);
    let tw = parse(&stdout(&o)).unwrap();
    assert!(tw.primary().unwrap().structure_eq(&make_h4(Field::Rational).unwrap()));
}

#[test]
fn twist_by_a_cocycle_file() {
    let dir = TempDir::new().unwrap();
    let h4 = h4_file(&dir);
    let text = std::fs::read_to_string(&h4).unwrap();
    let with_r0 =
        format!("{text}functional r0 arity 2\n  entry 1 1 1\n  entry 1 g 1\n  entry g 1 1\n  entry g g -1\nend\n");
    let p = write(&dir, "h4r.hopfspec", &with_r0);
    let o = run(&["twist", s(&p), "--cocycle", "r0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let op = make_h4(Field::Rational)
        .unwrap()
        .variant(hopfkit::hopf::Variant::Op)
        .unwrap();
    assert!(parse(&stdout(&o)).unwrap().primary().unwrap().structure_eq(&op));
    let o = run(&["twist", s(&h4), "--cocycle", s(&p)]);
    assert_eq!(code(&o), 0);
}

#[test]
fn dual_variant_and_double_outputs_are_valid() {
    let dir = TempDir::new().unwrap();
    let h4 = h4_file(&dir);
    for args in [
        vec!["dual"],
        vec!["variant", "--op"],
        vec!["variant", "--cop"],
        vec!["variant", "--opcop"],
        vec!["double"],
    ] {
        let mut full = args.clone();
        full.push(s(&h4));
        let o = run(&full);
        assert_eq!(code(&o), 0, "{args:?}");
        let out = write(&dir, "out.hopfspec", &stdout(&o));
        assert_eq!(code(&run(&["check", s(&out)])), 0, "{args:?}");
    }
    let o = run(&["double", s(&h4)]);
    let doc = parse(&stdout(&o)).unwrap();
    assert_eq!(doc.primary().unwrap().dim(), 16);
    assert!(doc.rmatrix("R").is_some());
}

#[test]
fn rform_check() {
    let dir = TempDir::new().unwrap();
    let h4 = h4_file(&dir);
    let o = run(&["rform-check", s(&h4), "--form", "r:t=2", "--cotriangular"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = std::fs::read_to_string(&h4).unwrap();
    let bad = format!("{text}functional r arity 2\n  entry 1 1 1\n  entry g g 1\nend\n");
    let p = write(&dir, "bad_r.hopfspec", &bad);
    assert_eq!(code(&run(&["rform-check", s(&p), "--form", "r"])), 1);
    assert_eq!(code(&run(&["rform-check", s(&h4), "--form", "missing"])), 2);
}

fn yd_file(dir: &TempDir) -> PathBuf {
    let f = Field::Rational;
    let h = Arc::new(make_h4(f).unwrap());
    let r = h4_rform(&h, &f.from_int(2)).unwrap();
    let v = graded_yd(&r).unwrap();
    let mut doc = Document::new(f);
    doc.add_hopf("H4", h.clone());
    doc.add_algebra("EndV", end_algebra(&v, EndSide::Standard).unwrap());
    doc.add_algebra("dual_numbers", dual_numbers_trivial(h).unwrap());
    doc.add_module("V", v);
    write(dir, "yd.hopfspec", &doc.to_text().unwrap())
}

#[test]
fn yd_check_and_azumaya() {
    let dir = TempDir::new().unwrap();
    let p = yd_file(&dir);
    let o = run(&["yd-check", s(&p)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["azumaya", s(&p), "--algebra", "EndV"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("EndV: Azumaya"));
    let o = run(&["azumaya", s(&p), "--algebra", "dual_numbers"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not Azumaya"));
    assert_eq!(code(&run(&["yd-check", s(&h4_file(&dir))])), 2);
}

fn json_without_timing(o: &Output) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("report is JSON");
    for c in v["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

#[test]
fn report_json_is_deterministic() {
    let a = run(&["report", "--field", "gf:7", "--t", "2", "--json"]);
    let b = run(&["report", "--field", "gf:7", "--t", "2", "--json"]);
    let (ja, jb) = (json_without_timing(&a), json_without_timing(&b));
    assert_eq!(ja, jb);
    let ids: Vec<_> = ja["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, (1..=12).map(|i| format!("P{i}")).collect::<Vec<_>>());
    assert_eq!(ja["field"], "gf 7");
    assert_eq!(code(&a), if ja["passed"].as_bool().unwrap() { 0 } else { 1 });
    let text_a = run(&["report", "--field", "gf:7", "--t", "2"]);
    let text_b = run(&["report", "--field", "gf:7", "--t", "2"]);
    assert_eq!(text_a.stdout, text_b.stdout);
}

#[test]
fn report_over_gf2_skips_h4_checks() {
    let o = run(&["report", "--field", "gf:2", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_without_timing(&o);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks[0]["status"], "pass");
    assert!(checks[1..].iter().all(|c| c["status"] == "skipped"));
}

#[test]
fn report_rejects_bad_fields() {
    assert_eq!(code(&run(&["report", "--field", "gf:4"])), 2);
    assert_eq!(code(&run(&["report", "--field", "reals"])), 2);
    assert_eq!(code(&run(&["report", "--field", "q", "--t", "1/0"])), 2);
}

/// The stated outcome for the full report over Q(t).
#[test]
fn report_over_ratfun_passes() {
    let o = run(&["report", "--field", "ratfun"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
