mod common;

use std::path::PathBuf;

use common::run;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against the stored artifact; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, args: &[&str]) {
    let r = run(args);
    assert!(r.code == 0 || r.code == 3, "{}", r.stderr);
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &r.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(r.stdout == expected, "{name} drifted from its golden file");
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "theorem-3.4.i", "--seed", "42", "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn report_all_is_reproducible() {
    let first = run(&["report-all", "--json"]);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, run(&["report-all", "--json"]).stdout);
}

#[test]
fn golden_siegel_report() {
    check_golden("theorem-3.4.i.json", &["verify", "theorem-3.4.i", "--seed", "42", "--json"]);
}

#[test]
fn golden_disjointness_report() {
    check_golden("lemma-3.5.json", &["verify", "lemma-3.5", "--json"]);
}

#[test]
fn golden_classification() {
    check_golden("classify-7-3-7.json", &["classify", "--p", "7", "--n", "3", "--a", "7", "--precision", "12", "--json"]);
}

#[test]
fn golden_orbit() {
    check_golden(
        "orbit-7-3-7.txt",
        &["orbit", "--p", "7", "--n", "3", "--a", "7", "--start", "1/2", "--iters", "12"],
    );
}
