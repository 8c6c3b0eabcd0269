use frobpi_web::{catalog_json, center_json, dims_json, series_json};
use frobpi::exactfield::FieldDescriptor;
use frobpi::frobalg::AnyPair;
use serde_json::Value;

fn parse(s: &str) -> Vec<Value> {
    serde_json::from_str::<Value>(s).unwrap().as_array().unwrap().clone()
}

#[test]
fn every_catalog_pair_passes_small_degrees() {
    let names: Vec<String> = serde_json::from_str(&catalog_json()).unwrap();
    assert_eq!(names.len(), 6);
    for n in &names {
        let rows = parse(&dims_json(n, "fp:3", 5).unwrap());
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r["pass"] == true), "{n}");
    }
}

#[test]
fn algebra_file_matches_catalog_name() {
    let pair = AnyPair::catalog("t4", FieldDescriptor::Fp(5)).unwrap();
    let file = pair.to_file().to_json_string();
    assert_eq!(dims_json(&file, "fp:5", 4).unwrap(), dims_json("t4", "fp:5", 4).unwrap());
    assert_eq!(center_json(&file, "fp:5", 4).unwrap(), center_json("t4", "fp:5", 4).unwrap());
}

#[test]
fn center_and_series_agree_for_four_arrows() {
    let center = parse(&center_json("split4", "q", 8).unwrap());
    let series = parse(&series_json(4, 8).unwrap());
    for (c, s) in center.iter().zip(&series) {
        assert_eq!(c["dim_center"], s["invariants"]);
    }
}

#[test]
fn limits_are_enforced() {
    assert!(dims_json("bikwad", "q", 1000).is_err());
    assert!(series_json(0, 4).is_err());
    assert!(series_json(4, 61).is_err());
    assert!(dims_json("bikwad", "fp:4", 3).is_err());
}
