use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcx"))
        .args(args)
        .env("QCX_THREADS", "2")
        .output()
        .expect("failed to launch qcx")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn number(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing number {key} in {v}"))
}

const QUICK: &str = "24,128,2";

#[test]
fn check_passes_with_margin() {
    let out = qcx(&["check", "--criterion", "main", "--f", "poly 0.1", "--s", "1,0", "--c", "-1,0", "--k", "0.1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    assert!((number(&v, "margin") - 0.0127256).abs() < 1e-5);
}

#[test]
fn check_fails_with_exit_one() {
    let out = qcx(&["check", "--f", "halfplane", "--s", "1", "--c", "-1", "--k", "0.5", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn infeasible_spec_exits_two() {
    let out = qcx(&["check", "--criterion", "main", "--f", "identity", "--s", "0.5,0", "--c", "-0.25,0", "--k", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["feasible"], false);
    assert_eq!(number(&v, "M"), 0.0);
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 5] = [
        &["check", "--criterion", "nope", "--f", "identity"],
        &["check", "--f", "identity", "--c", "-1", "--k", "0.1"],
        &["check", "--f", "poly 0.1 x", "--s", "1", "--c", "-1", "--k", "0.1"],
        &["check", "--criterion", "exterior", "--f", "koebe", "--s", "1", "--k", "0.1"],
        &["l-const", "--s", "1,1", "--k", "1.5"],
    ];
    for args in cases {
        let out = qcx(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = qcx(&["check", "--f", "poly 0.1 x", "--s", "1", "--c", "-1", "--k", "0.1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 9"));
}

#[test]
fn l_const_reports_oracle_delta() {
    let out = qcx(&["l-const", "--s", "1,1", "--k", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((number(&v, "l") - 0.414_213_562_373_095_1).abs() < 1e-12);
    assert!(number(&v, "oracle_delta") < 1e-9);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["check", "--f", "poly 0.1 0.02", "--s", "1,0.1", "--c", "-1", "--k", "0.3", "--grid", QUICK];
    let a = qcx(&args);
    let b = qcx(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("e-"));
}

#[test]
fn csv_report_has_header_and_lf() {
    let out = qcx(&["check", "--f", "identity", "--s", "1", "--c", "-0.7", "--k", "0.3", "--format", "csv", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("criterion,passed,feasible,M,sup"));
    assert!(lines[1].starts_with("main,true,true,"));
}

#[test]
fn sweep_k_increases_l() {
    let out = qcx(&["sweep", "--f", "identity", "--s", "1,1", "--c", "-1,-1", "--vary", "k=0:0.9:10", "--grid", "8,16,0"]);
    assert!(out.status.success() || out.status.code() == Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["k", "M", "sup", "margin", "l", "passed", "feasible"]);
    let ls: Vec<f64> = rdr.records().map(|r| r.unwrap()[4].parse().unwrap()).collect();
    assert_eq!(ls.len(), 10);
    assert!((ls[0] - 0.414_214).abs() < 1e-6);
    assert!(ls.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sweep_b_minimizes_l_at_zero() {
    let out = qcx(&["sweep", "--f", "identity", "--s", "1,0", "--c", "-1", "--k", "0.3", "--vary", "b=-2:2:9", "--grid", "8,16,0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<(f64, f64)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[4].parse().unwrap())
        })
        .collect();
    let (b_min, l_min) = rows.iter().copied().min_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
    assert_eq!(b_min, 0.0);
    assert!((l_min - 0.3).abs() < 1e-15);
}

#[test]
fn sweep_dilation_keeps_passing() {
    let out = qcx(&["sweep", "--f", "poly 0.1", "--s", "1", "--c", "-1", "--k", "0.1", "--vary", "r=0.3:0.9:3", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,true")));
}

#[test]
fn sweep_rejects_three_ranges() {
    let out = qcx(&["sweep", "--f", "identity", "--s", "1", "--c", "-1", "--k", "0.1", "--vary", "k=0:0.5:2", "--vary", "a=1:2:2", "--vary", "b=0:1:2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extend_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ext.csv");
    let out = qcx(&[
        "extend", "--f", "identity", "--s", "1", "--c", "-0.7", "--k", "0.3", "--radii", "4", "--angles", "8",
        "--out", path.to_str().unwrap(), "--grid", QUICK,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("w_re,w_im,f_re,f_im\n"));
    assert_eq!(text.lines().count(), 33);
}

#[test]
fn extend_refuses_failing_criterion() {
    let out = qcx(&["extend", "--f", "halfplane", "--s", "1", "--c", "-1", "--k", "0.5", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(1));
}

fn dilatation(args: &[&str], csv: Option<&Path>) -> Output {
    let mut all = vec!["dilatation"];
    all.extend_from_slice(args);
    let p;
    if let Some(path) = csv {
        p = path.to_str().unwrap().to_string();
        all.extend(["--out", &p]);
    }
    qcx(&all)
}

#[test]
fn dilatation_summary_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.csv");
    let out = dilatation(
        &["--f", "identity", "--s", "1", "--c", "-0.7", "--k", "0.3", "--radii", "8", "--angles", "16", "--grid", QUICK, "--richardson"],
        Some(&path),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!((number(&v, "max_abs_mu") - 0.3 / 1.01f64.powi(2)).abs() < 1e-4);
    assert_eq!(number(&v, "fd_step"), 1e-5);
    assert!(number(&v, "richardson_delta") < 1e-6);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("w_re,w_im,abs_mu\n"));
    assert_eq!(text.lines().count(), 129);
}

#[test]
fn dilatation_exterior() {
    let out = dilatation(&["--criterion", "exterior", "--f", "laurent 0.1", "--s", "1", "--k", "0.25", "--radii", "8", "--angles", "32"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(number(&json(&out), "max_abs_mu") <= 0.251);
}

#[test]
fn verify_reports_lemma_margins() {
    let out = qcx(&["verify", "--f", "poly 0.1", "--s", "1", "--c", "-1", "--k", "0.1", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(number(&v, "lemma_margin") >= -1e-9);
    assert!(number(&v, "transition_margin") >= -1e-8);
    assert!(number(&v, "herglotz_min_re") > 0.0);
    let out = qcx(&["verify", "--criterion", "exterior", "--f", "laurent 0.1", "--s", "1", "--k", "0.25", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(0));
    let out = qcx(&["verify", "--criterion", "ab", "--f", "identity", "--c", "0", "--k", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn other_criteria_dispatch() {
    let out = qcx(&["check", "--criterion", "bazilevic", "--f", "identity", "--alpha", "1", "--beta", "0", "--k", "0.3", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(0));
    let out = qcx(&["check", "--criterion", "cor-exterior", "--f", "laurent 0.1", "--k", "0.5", "--R", "3", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["auxiliary"]["R"].as_f64(), Some(3.0));
    let out = qcx(&["check", "--criterion", "cor-interior", "--f", "poly 0 0.05", "--k", "0.1", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(0));
    let out = qcx(&["check", "--criterion", "ab", "--f", "koebe", "--c", "0", "--k", "0.5", "--grid", QUICK]);
    assert_eq!(out.status.code(), Some(1));
}
