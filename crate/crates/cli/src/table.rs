use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// A rendered-on-demand table: string cells for csv/md, and the typed rows
/// for JSON (keeping field order).
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: String,
}

impl Table {
    pub fn new<T: Serialize>(columns: Vec<&'static str>, items: &T, rows: Vec<Vec<String>>) -> Self {
        let mut json = serde_json::to_string_pretty(items).expect("plain data");
        json.push('\n');
        Table { columns, rows, json }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.clone(),
            Format::Csv => {
                let mut out = self.columns.join(",");
                out.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|c| csv_cell(c)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Md => {
                let mut out = format!("| {} |\n|{}\n", self.columns.join(" | "), "---|".repeat(self.columns.len()));
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
                    out.push_str(&format!("| {} |\n", cells.join(" | ")));
                }
                out
            }
        }
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn verdict(pass: bool) -> String {
    if pass { "pass" } else { "FAIL" }.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table::new(vec!["check", "value"], &[("a,b", 1)], vec![vec!["a,b".into(), "x|y".into()]])
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(sample().render(Format::Csv), "check,value\n\"a,b\",x|y\n");
    }

    #[test]
    fn markdown_escapes_pipes() {
        assert_eq!(sample().render(Format::Md), "| check | value |\n|---|---|\n| a,b | x\\|y |\n");
    }

    #[test]
    fn json_is_the_serialized_items() {
        let v: serde_json::Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v, serde_json::json!([["a,b", 1]]));
    }
}
