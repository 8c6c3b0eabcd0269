use std::process::{Command, Output};

fn frobpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobpi"))
        .args(args)
        .env_remove("FROBPI_CACHE")
        .output()
        .expect("run frobpi")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dims_csv_matches_closed_form() {
    let o = frobpi(&["dims", "--pair", "bikwad", "--max-degree", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "dim").expect("dim column");
    let dims: Vec<usize> = lines.map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect();
    assert_eq!(dims, [5, 8, 15, 16, 25, 24]);
}

#[test]
fn center_over_f2_reports_failure() {
    let o = frobpi(&["center", "--pair", "bikwad", "--field", "fp:2", "--max-degree", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = frobpi(&["center", "--pair", "bikwad", "--max-degree", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn classification_flags_the_frobenius_reject() {
    let o = frobpi(&["verify", "--suite", "classification"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let text = report.to_string();
    assert!(text.contains("reject-s2t2-st"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(frobpi(&["dims"]).status.code(), Some(2));
    assert_eq!(frobpi(&["dims", "--pair", "no-such-algebra"]).status.code(), Some(2));
    assert_eq!(frobpi(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["dims", "--pair", "t4", "--max-degree", "6", "--format", "json"];
    let plain = frobpi(&[&args[..], &["--no-cache"]].concat());
    let cold = frobpi(&[&args[..], &["--cache-dir", d]].concat());
    let warm = frobpi(&[&args[..], &["--cache-dir", d]].concat());
    assert_eq!(plain.status.code(), Some(0));
    assert_eq!(stdout(&plain), stdout(&cold));
    assert_eq!(stdout(&cold), stdout(&warm));
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some(), "cache directory left empty");
}

#[test]
fn catalog_round_trips_through_algebra_files() {
    let o = frobpi(&["catalog", "--name", "t3-plus-k"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let from_file = frobpi(&["dims", "--algebra", path.to_str().unwrap(), "--max-degree", "4", "--format", "csv"]);
    let from_name = frobpi(&["dims", "--pair", "t3-plus-k", "--max-degree", "4", "--format", "csv"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", String::from_utf8_lossy(&from_file.stderr));
    assert_eq!(stdout(&from_file), stdout(&from_name));
}
