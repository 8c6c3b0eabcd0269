use serde_json::Value;

use super::Record;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn columns(r: &Record) -> [String; 8] {
    [
        r.suite.clone(),
        r.pair.clone().unwrap_or_default(),
        r.field.clone().unwrap_or_default(),
        r.degree.map(|d| d.to_string()).unwrap_or_default(),
        r.check.clone(),
        cell(&r.value),
        cell(&r.expected),
        if r.pass { "pass" } else { "FAIL" }.into(),
    ]
}

const HEADER: [&str; 8] = ["suite", "pair", "field", "degree", "check", "value", "expected", "result"];

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn records_csv(records: &[Record]) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for r in records {
        let cols: Vec<String> = columns(r).iter().map(|c| csv_field(c)).collect();
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}

pub fn records_markdown(records: &[Record]) -> String {
    let mut out = format!("| {} |\n|{}\n", HEADER.join(" | "), "---|".repeat(HEADER.len()));
    for r in records {
        let cols: Vec<String> = columns(r).iter().map(|c| c.replace('|', "\\|")).collect();
        out.push_str(&format!("| {} |\n", cols.join(" | ")));
    }
    out
}
