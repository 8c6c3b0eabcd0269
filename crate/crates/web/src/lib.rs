//! Browser bindings: each call takes plain strings and numbers and returns
//! JSON text for the page to render.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use frobpi::center::{center_dims, expected_center_dim};
use frobpi::exactfield::FieldDescriptor;
use frobpi::frobalg::{AlgebraFile, AnyPair, CATALOG_NAMES};
use frobpi::preproj::GradedAlgebra;
use frobpi::splitcase::{invariant_dims, quiver_totals};
use frobpi::verify::{dims_table, VerifyOptions};
use frobpi::with_pair;

/// Degrees above this are refused; the page is meant to stay responsive.
pub const MAX_DEGREE: usize = 14;

/// A catalog name, or the text of a JSON algebra file.
fn load(source: &str, field: &str) -> Result<AnyPair, String> {
    let field: Option<FieldDescriptor> = match field.trim() {
        "" => None,
        f => Some(f.parse().map_err(|e| format!("{e}"))?),
    };
    let source = source.trim();
    if source.starts_with('{') {
        let file = AlgebraFile::parse(source).map_err(|e| e.to_string())?;
        AnyPair::from_file(&file, field).map_err(|e| e.to_string())
    } else {
        AnyPair::catalog(source, field.unwrap_or(FieldDescriptor::Q)).map_err(|e| e.to_string())
    }
}

fn check_degree(d: usize) -> Result<(), String> {
    if d > MAX_DEGREE {
        return Err(format!("degree {d} is above the demo limit of {MAX_DEGREE}"));
    }
    Ok(())
}

pub fn catalog_json() -> String {
    json!(CATALOG_NAMES).to_string()
}

pub fn dims_json(source: &str, field: &str, max_degree: usize) -> Result<String, String> {
    check_degree(max_degree)?;
    let pair = load(source, field)?;
    let rows = dims_table(&pair, max_degree, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

pub fn center_json(source: &str, field: &str, max_degree: usize) -> Result<String, String> {
    check_degree(max_degree)?;
    let pair = load(source, field)?;
    let (dims, rank4) = with_pair!(&pair, p => {
        let g = GradedAlgebra::build(p, max_degree + 1);
        (center_dims(&g, max_degree).map_err(|e| e.to_string())?, p.rank() == 4)
    });
    let rows: Vec<Value> = dims
        .iter()
        .enumerate()
        .map(|(d, z)| {
            let expected = rank4.then(|| expected_center_dim(d));
            json!({ "degree": d, "dim_center": z, "expected": expected, "pass": expected.is_none_or(|e| e == *z) })
        })
        .collect();
    Ok(Value::Array(rows).to_string())
}

/// Star-quiver totals next to the binary dihedral invariant counts.
pub fn series_json(arrows: usize, max_degree: usize) -> Result<String, String> {
    if arrows == 0 || arrows > 16 {
        return Err("arrows must be between 1 and 16".into());
    }
    if max_degree > 60 {
        return Err("degree must be at most 60".into());
    }
    let totals = quiver_totals(arrows, max_degree);
    let inv = invariant_dims(max_degree as u32);
    let rows: Vec<Value> = (0..=max_degree)
        .map(|d| json!({ "degree": d, "quiver_total": totals[d], "invariants": inv[d] }))
        .collect();
    Ok(Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[wasm_bindgen]
pub fn dims(source: &str, field: &str, max_degree: usize) -> Result<String, JsValue> {
    dims_json(source, field, max_degree).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn center(source: &str, field: &str, max_degree: usize) -> Result<String, JsValue> {
    center_json(source, field, max_degree).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn series(arrows: usize, max_degree: usize) -> Result<String, JsValue> {
    series_json(arrows, max_degree).map_err(|e| JsValue::from_str(&e))
}
