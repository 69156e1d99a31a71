use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pcarr::classifier::Status;
use pcarr::store::{parse_records, read_codes};

fn pcarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcarr")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// The number in `row` of a stats table with one `n` column.
fn stat(table: &str, row: &str) -> usize {
    table
        .lines()
        .find(|l| l.split_whitespace().next() == Some(row))
        .and_then(|l| l.split_whitespace().last())
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("row {row} missing in\n{table}"))
}

#[test]
fn stats_of_four_circle_connected_db() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("c4.arrs");
    let out = pcarr(&["enumerate", "--n", "4", "--class", "connected", "--out", p(&db)]);
    assert!(out.status.success());
    assert_eq!(read_codes(&db).unwrap().len(), 21);
    let out = pcarr(&["stats", "--db", p(&db)]);
    assert!(out.status.success());
    let table = stdout(&out);
    assert_eq!(stat(&table, "connected"), 21);
    assert_eq!(stat(&table, "connected+digon-free"), 3);
    assert_eq!(stat(&table, "connected+cylindrical"), 20);
    assert_eq!(stat(&table, "intersecting"), 8);
}

#[test]
fn stats_of_empty_db_is_all_zero() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("empty.arrs");
    fs::write(&db, "# nothing\n").unwrap();
    let out = pcarr(&["stats", "--db", p(&db)]);
    assert!(out.status.success());
    let table = stdout(&out);
    for line in table.lines().skip(1) {
        assert_eq!(line.split_whitespace().last(), Some("0"), "{line}");
    }
}

#[test]
fn stats_reports_the_bad_line() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("bad.arrs");
    fs::write(&db, "# header\n\nPC1:n=2:oops\n").unwrap();
    let out = pcarr(&["stats", "--db", p(&db)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn verify_mismatch_exits_with_contract_violation() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("c.certs");
    // The code of two crossing circles annotated on three circles.
    fs::write(&certs, "PC1:n=2:2.1.4.3.0.5.7.6.1.2.6.7.5.0.3.4 ; 0 0 2 ; 9 0 2\n").unwrap();
    let out = pcarr(&["verify", "--certs", p(&certs)]);
    assert_eq!(out.status.code(), Some(1));
    fs::write(&certs, "PC1:n=2:2.1.4.3.0.5.7.6.1.2.6.7.5.0.3.4 ; 0 0 2 ; 2 0 2\n").unwrap();
    let out = pcarr(&["verify", "--certs", p(&certs)]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn pipeline_three_circles_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("c.certs");
    let records = dir.path().join("r.tsv");
    let args = [
        "--seed",
        "3",
        "pipeline",
        "--n",
        "3",
        "--class",
        "connected",
        "--budget-secs",
        "60",
        "--fresh",
        "--certs",
        p(&certs),
        "--out",
        p(&records),
    ];
    let out = pcarr(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = parse_records(&fs::read_to_string(&records).unwrap()).unwrap();
    assert_eq!(recs.len(), 3);
    assert!(recs.iter().all(|r| r.status == Status::Realized));
    let cached = fs::read_to_string(&certs).unwrap();
    assert_eq!(cached.lines().count(), 3);

    // A rerun finds everything in the cache and adds nothing.
    let out = pcarr(&args);
    assert!(out.status.success());
    assert_eq!(parse_records(&fs::read_to_string(&records).unwrap()).unwrap(), recs);
    assert_eq!(fs::read_to_string(&certs).unwrap(), cached);

    let svg = dir.path().join("a.svg");
    let out = pcarr(&["export-svg", "--certs", p(&certs), "--out", p(&svg)]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&svg).unwrap().matches("<circle").count(), 3);
}

#[test]
fn classify_five_circle_intersecting_with_shipped_data() {
    let dir = tempfile::tempdir().unwrap();
    let codes = dir.path().join("i5.arrs");
    let certs = dir.path().join("c.certs");
    let records = dir.path().join("r.tsv");
    assert!(pcarr(&["enumerate", "--n", "5", "--class", "intersecting", "--out", p(&codes)]).status.success());
    fs::write(&certs, pcarr::store::format_certs(&pcarr::fixtures::certificates_connected_le5())).unwrap();
    let out = pcarr(&["classify", "--in", p(&codes), "--certs", p(&certs), "--out", p(&records)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "REALIZED 277\nNONCIRC 1\nOPEN 0\n");
}

#[test]
fn budget_exhaustion_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let codes = dir.path().join("i5.arrs");
    let certs = dir.path().join("c.certs");
    assert!(pcarr(&["enumerate", "--n", "5", "--class", "intersecting-digonfree", "--out", p(&codes)])
        .status
        .success());
    let out = pcarr(&["realize", "--in", p(&codes), "--certs", p(&certs), "--budget-secs", "0", "--fresh"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flipgraph_reports_connectivity() {
    let out = pcarr(&["flipgraph", "--n", "4", "--class", "intersecting-digonfree", "--check-connected"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("nodes 2"), "{text}");
    assert!(text.contains("connected true"), "{text}");
}
