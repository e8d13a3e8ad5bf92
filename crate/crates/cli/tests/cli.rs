use std::process::{Command, Output};

use cycle_census_cli::records::{
    from_csv, from_json, to_csv, to_json, BalanceRow, EvalRecord, RootRecord, TableRow,
};
use proptest::prelude::*;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycle-census"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

#[test]
fn table_contains_known_row() {
    let out = bin(&["table", "--a", "1", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,k,count\n"));
    assert!(text.lines().any(|l| l == "4,2,3"));
    assert!(!text.contains('\r'));
}

#[test]
fn eval_at_minus_one() {
    let out = bin(&["eval", "--a", "1", "--n", "6", "--at", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let rec: EvalRecord = from_json(&stdout(&out)).unwrap();
    assert_eq!(rec.value, "-5");
    assert_eq!(rec.at, "-1");

    let out = bin(&["eval", "--a", "1", "--n", "4", "--at", "-3/2"]);
    let rec: EvalRecord = from_json(&stdout(&out)).unwrap();
    assert_eq!(rec.value, "-9/4");
}

#[test]
fn roots_found_and_absent() {
    let out = bin(&[
        "roots",
        "--a",
        "1",
        "--n",
        "4",
        "--t",
        "2",
        "--epsilon",
        "1/100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec: RootRecord = from_json(&stdout(&out)).unwrap();
    assert!(rec.found);
    let w = rec.witness.unwrap();
    assert_eq!(w.sturm_count, 1);
    let lo: num_rational::BigRational = w.lo.parse().unwrap();
    let hi: num_rational::BigRational = w.hi.parse().unwrap();
    let target = num_rational::BigRational::from_integer((-2).into());
    assert!(lo < target && target <= hi);

    let out = bin(&[
        "roots",
        "--a",
        "1",
        "--n",
        "4",
        "--t",
        "5",
        "--epsilon",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).replace(char::is_whitespace, ""),
        r#"{"found":false}"#
    );
}

#[test]
fn balance_rows() {
    let out = bin(&["balance", "--a", "0", "--q", "2", "--n-grid", "2:6:2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<BalanceRow> = from_csv(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows
        .iter()
        .all(|r| r.ratio == "1/2" && r.max_deviation == "0"));
    assert_eq!(rows[4].count, "360");
}

#[test]
fn exit_statuses() {
    assert_eq!(bin(&["table", "--a", "1"]).status.code(), Some(2));
    assert_eq!(
        bin(&["eval", "--a", "1", "--n", "3", "--at", "one"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(&["balance", "--a", "0", "--q", "2", "--n-grid", "5:1:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        bin(&["table", "--a", "9", "--n-max", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(
        bin(&["table", "--a", "1", "--n-max", "50", "--max-n", "20"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bin(&[
            "roots",
            "--a",
            "1",
            "--n",
            "150",
            "--t",
            "1",
            "--epsilon",
            "1/10"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        bin(&["table", "--a", "1", "--n-max", "3", "--max-n", "0"])
            .status
            .code(),
        Some(2)
    );
    // modulus out of range is a bad argument, not a failure
    assert_eq!(
        bin(&["balance", "--a", "0", "--q", "0", "--n-grid", "2:3:1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = bin(&[
        "table",
        "--a",
        "0",
        "--n-max",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "3,1,2"));
}

#[test]
fn emitted_documents_round_trip() {
    let text = stdout(&bin(&["table", "--a", "2", "--n-max", "25"]));
    let rows: Vec<TableRow> = from_csv(&text).unwrap();
    assert_eq!(to_csv(&rows).unwrap(), text);

    let text = stdout(&bin(&[
        "table", "--a", "1", "--n-max", "8", "--format", "json",
    ]));
    let rows: Vec<TableRow> = from_json(&text).unwrap();
    assert_eq!(to_json(&rows).unwrap(), text);

    let text = stdout(&bin(&[
        "balance", "--a", "1", "--q", "3", "--n-grid", "3:40:7",
    ]));
    let rows: Vec<BalanceRow> = from_csv(&text).unwrap();
    assert_eq!(to_csv(&rows).unwrap(), text);

    let text = stdout(&bin(&[
        "roots",
        "--a",
        "1",
        "--n",
        "12",
        "--t",
        "1",
        "--epsilon",
        "1/4",
    ]));
    let rec: RootRecord = from_json(&text).unwrap();
    assert_eq!(to_json(&rec).unwrap(), text);
}

#[test]
fn verify_tables_passes() {
    let out = bin(&["verify", "--suite", "tables"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().count() >= 5);
    assert!(text.lines().all(|l| l.starts_with("PASS tables/")));
    assert_eq!(
        bin(&["verify", "--suite", "nonsense"]).status.code(),
        Some(2)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_rows_round_trip(rows in prop::collection::vec((0usize..500, 0usize..500, "[0-9]{1,40}"), 0..20)) {
        let rows: Vec<TableRow> = rows
            .into_iter()
            .map(|(n, k, count)| TableRow { n, k, count })
            .collect();
        let text = to_csv(&rows).unwrap();
        let back: Vec<TableRow> = from_csv(&text).unwrap();
        prop_assert_eq!(&back, &rows);
        prop_assert_eq!(to_csv(&back).unwrap(), text);
    }
}
