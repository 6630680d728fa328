use std::path::PathBuf;

use crg_cli::render::Table;
use crg_cli::run_from_args;

fn data(sub: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(sub)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> crg_cli::Output {
    let data_dir = data("exceptional");
    let fixtures_dir = data("fixtures");
    let mut full = vec![
        "crg",
        "--data-dir",
        &data_dir,
        "--fixtures-dir",
        &fixtures_dir,
    ];
    full.extend_from_slice(args);
    run_from_args(full).expect("command runs")
}

fn json(args: &[&str]) -> Table {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    Table::from_json(&run(&full).text).unwrap()
}

fn column(t: &Table, name: &str) -> usize {
    t.columns.iter().position(|c| c == name).unwrap()
}

fn efd(t: &Table) -> Vec<(String, String, String)> {
    let (e, f, d) = (column(t, "e_H"), column(t, "f_H"), column(t, "d_H"));
    let mut rows: Vec<_> = t
        .rows
        .iter()
        .map(|r| (r[e].clone(), r[f].clone(), r[d].clone()))
        .collect();
    rows.sort();
    rows
}

fn row(e: &str, f: &str, d: &str) -> (String, String, String) {
    (e.into(), f.into(), d.into())
}

#[test]
fn ramification_tables() {
    assert_eq!(
        efd(&json(&["--exceptional", "G4", "table", "ramification"])),
        vec![row("3", "6", "2")]
    );
    assert_eq!(
        efd(&json(&[
            "--d",
            "3",
            "--e",
            "1",
            "--r",
            "2",
            "table",
            "ramification"
        ])),
        vec![row("2", "6", "3"), row("3", "3", "1")]
    );
    assert_eq!(
        efd(&json(&[
            "--d",
            "1",
            "--e",
            "1",
            "--r",
            "2",
            "table",
            "ramification"
        ])),
        vec![row("2", "2", "1")]
    );
}

#[test]
fn exactness_check_for_g25() {
    let out = run(&[
        "--exceptional",
        "G25",
        "check",
        "exactness",
        "--format",
        "json",
    ]);
    assert!(out.success);
    let t = Table::from_json(&out.text).unwrap();
    assert!(!t.rows.is_empty());
    for r in &t.rows {
        assert_eq!(
            (r[2].as_str(), r[3].as_str(), r[4].as_str()),
            ("no", "no", "pass")
        );
    }
}

#[test]
fn g8_is_unramified() {
    let out = run(&["--exceptional", "G8", "check", "ramification"]);
    assert!(out.success);
    let t = json(&["--exceptional", "G8", "table", "ramification"]);
    let d = column(&t, "d_H");
    assert!(t.rows.iter().all(|r| r[d] == "1"));
}

#[test]
fn kappa_of_symmetric_group() {
    let out = run(&[
        "--d", "1", "--e", "1", "--r", "3", "check", "kappa", "--format", "json",
    ]);
    assert!(out.success);
    let t = Table::from_json(&out.text).unwrap();
    assert_eq!(t.rows.len(), 1);
    assert_eq!((t.rows[0][2].as_str(), t.rows[0][3].as_str()), ("2", "2"));
}

#[test]
fn flagged_kappa_does_not_fail() {
    let out = run(&[
        "--d", "3", "--e", "1", "--r", "2", "check", "kappa", "--format", "json",
    ]);
    assert!(out.success);
    let t = Table::from_json(&out.text).unwrap();
    assert_eq!(t.rows[0][4], "flagged");
    assert_eq!(t.rows[0][3], "6");
}

#[test]
fn mismatching_fixture_fails_with_diff() {
    let dir = std::env::temp_dir().join(format!("crg-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(
        PathBuf::from(data("fixtures")).join("ramification.json"),
        dir.join("ramification.json"),
    )
    .unwrap();
    let claims =
        std::fs::read_to_string(PathBuf::from(data("fixtures")).join("claims.json")).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&claims).unwrap();
    value["exactness_failures"]["exceptional"] = serde_json::json!([]);
    std::fs::write(dir.join("claims.json"), value.to_string()).unwrap();
    let out = run_from_args([
        "crg",
        "--data-dir",
        &data("exceptional"),
        "--fixtures-dir",
        dir.to_str().unwrap(),
        "--exceptional",
        "G25",
        "check",
        "exactness",
    ])
    .unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(!out.success);
    let diff = out.diff.unwrap();
    assert!(diff.contains("expected: yes"));
    assert!(diff.contains("computed: no"));
}

#[test]
fn output_is_independent_of_parallelism() {
    for args in [
        vec!["--d", "2", "--e", "2", "--r", "3", "stabilizer"],
        vec!["--exceptional", "G6", "check", "all"],
        vec![
            "--d",
            "3",
            "--e",
            "1",
            "--r",
            "2",
            "hyperplanes",
            "--format",
            "csv",
        ],
    ] {
        let mut serial = args.clone();
        serial.extend(["--jobs", "1"]);
        let mut parallel = args.clone();
        parallel.extend(["--jobs", "4"]);
        let a = run(&serial).text;
        assert_eq!(a, run(&parallel).text);
        assert_eq!(a, run(&args).text);
    }
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["--exceptional", "G5", "stabilizer", "--format", "json"],
        vec![
            "--d",
            "2",
            "--e",
            "1",
            "--r",
            "3",
            "orbits",
            "--hyperplane",
            "H_1",
            "--format",
            "json",
        ],
        vec![
            "--d", "2", "--e", "1", "--r", "3", "group", "info", "--format", "json",
        ],
        vec!["--exceptional", "G4", "kappa", "--format", "json"],
    ] {
        let text = run(&args).text;
        let t = Table::from_json(&text).unwrap();
        assert_eq!(t.render(crg_cli::render::Format::Json).unwrap(), text);
    }
}

#[test]
fn usage_errors() {
    assert!(run_from_args(["crg", "hyperplanes"]).is_err());
    assert!(run_from_args([
        "crg",
        "--d",
        "1",
        "--r",
        "2",
        "--exceptional",
        "G4",
        "hyperplanes"
    ])
    .is_err());
    assert!(run_from_args([
        "crg",
        "--d",
        "4",
        "--e",
        "4",
        "--r",
        "4",
        "--order-bound",
        "1000",
        "hyperplanes"
    ])
    .is_err());
    assert!(run_from_args(["crg", "--d", "1", "--r", "2", "--jobs", "0", "hyperplanes"]).is_err());
    assert!(run_from_args([
        "crg",
        "--d",
        "1",
        "--r",
        "3",
        "stabilizer",
        "--hyperplane",
        "H_9"
    ])
    .is_err());
}

#[test]
fn hyperplane_lookup() {
    let t = json(&[
        "--d",
        "2",
        "--e",
        "1",
        "--r",
        "2",
        "stabilizer",
        "--hyperplane",
        "H_{1,2,ζ}",
    ]);
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.rows[0][0], "H_{1,2,ζ}");
    let by_index = json(&[
        "--d",
        "2",
        "--e",
        "1",
        "--r",
        "2",
        "stabilizer",
        "--hyperplane",
        "1",
    ]);
    assert_eq!(by_index.rows.len(), 1);
}
