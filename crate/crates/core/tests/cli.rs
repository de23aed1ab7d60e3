use std::fs;
use std::process::{Command, Output};

use sumfree_core::harness::VerificationReport;

fn sumfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumfree"))
        .args(args)
        .env("SUMFREE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sf_prints_value_psi_and_witness() {
    let o = sumfree(&["sf", "--p", "13", "--set", "1,3,4,9,10,12", "--k", "2", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("value=4"));
    assert!(out.contains("psi=2"));
    assert!(out.contains("witness="));
    assert!(out.contains("exact=true"));
}

#[test]
fn zero_in_set_is_a_usage_error() {
    let o = sumfree(&["sf", "--p", "13", "--set", "0,1,2", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("0 is not allowed"));
}

#[test]
fn verify_exit_codes() {
    let ok = sumfree(&["verify", "--suite", "prop41", "--pmin", "5", "--pmax", "13", "--index", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let out = stdout(&ok);
    assert_eq!(out.lines().next().unwrap(), "suite,case_id,p,n,lhs,rhs,abs_err,tol,pass");
    assert_eq!(out.lines().count(), 5);

    // a zero tolerance cannot absorb floating error in the L-value sums
    let strict = sumfree(&["verify", "--suite", "prop41", "--pmin", "5", "--pmax", "13", "--index", "2", "--tol", "0"]);
    assert_eq!(strict.status.code(), Some(1));

    assert_eq!(sumfree(&["verify", "--suite", "nope", "--pmin", "5", "--pmax", "13"]).status.code(), Some(2));
    assert_eq!(sumfree(&["verify", "--suite", "lemma31", "--pmin", "5", "--pmax", "2000000"]).status.code(), Some(2));
    assert_eq!(sumfree(&["verify", "--pmin", "5"]).status.code(), Some(2));
    assert_eq!(sumfree(&["bogus"]).status.code(), Some(2));
}

#[test]
fn empty_range_passes() {
    let o = sumfree(&["verify", "--suite", "lemma31", "--pmin", "24", "--pmax", "28"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn discrepancy_csv() {
    let o = sumfree(&["discrepancy", "--p", "13", "--index", "2", "--interval", "thirds"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "p,n,coset_rep,delta_num,delta_den\n13,2,1,-2,1\n13,2,2,2,1\n");
    let bad = sumfree(&["discrepancy", "--p", "13", "--index", "5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn lvalue_matches_closed_form() {
    let o = sumfree(&["lvalue", "--p", "7", "--char-exp", "3", "--small", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let re: f64 = stdout(&o).lines().next().unwrap().trim_start_matches("re=").parse().unwrap();
    assert!((re - 2.0 * std::f64::consts::PI / 14f64.sqrt()).abs() < 1e-9);
}

#[test]
fn json_reports_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_sumfree"))
            .args(["verify", "--suite", "thm43", "--pmin", "5", "--pmax", "40", "--seed", "7", "--format", "json"])
            .arg("--out")
            .arg(&path)
            .env("SUMFREE_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        fs::read_to_string(path).unwrap()
    };
    let a = run("a.json", "1");
    let b = run("b.json", "3");
    assert_eq!(a, b);
    let report = VerificationReport::from_json(&a).unwrap();
    assert_eq!(report.summary.total, report.cases.len());
    assert_eq!(report.summary.failed, report.summary.total - report.summary.passed);
    assert_eq!(report.to_json().unwrap(), a);
}

#[test]
fn sweep_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = dir.path().join("sweep.cfg");
    fs::write(
        &cfg,
        format!(
            "# lemma sweep\np_min = 5\np_max = 200\nsuites = lemma31, wiener\nsamples = 2\noutput = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let o = sumfree(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("lemma31.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 44);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(out.join("wiener.json").exists());

    fs::write(&cfg, "p_max = 2000000\n").unwrap();
    assert_eq!(sumfree(&["sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.cfg");
    assert_eq!(sumfree(&["sweep", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}
