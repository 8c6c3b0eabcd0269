//! Verification suites: each produces flat records comparing a computed
//! value to an expected one.

mod format;
mod suites;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactfield::FieldDescriptor;
use crate::frobalg::{AlgebraFile, AnyPair, FrobError, CATALOG_NAMES};
use crate::preproj::{Cache, PreprojError};

pub use format::{records_csv, records_markdown};
pub use suites::{dims_table, DimRow, BIKWAD_ZERO_IDENTITIES};

pub const SUITES: [&str; 9] =
    ["ranks", "center", "split", "resolution", "sigma", "invariants", "deformations", "classification", "explicit"];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}` (expected one of {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error(transparent)]
    Frob(#[from] FrobError),
    #[error(transparent)]
    Preproj(#[from] PreprojError),
}

/// One comparison of a computed value against its expected value.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub suite: String,
    pub pair: Option<String>,
    pub field: Option<String>,
    pub degree: Option<usize>,
    pub check: String,
    pub value: Value,
    pub expected: Value,
    pub pass: bool,
}

impl Record {
    fn new(suite: &str, check: &str, value: Value, expected: Value) -> Self {
        let pass = value == expected;
        Record { suite: suite.into(), pair: None, field: None, degree: None, check: check.into(), value, expected, pass }
    }

    fn on(mut self, pair: &str, field: FieldDescriptor) -> Self {
        self.pair = Some(pair.into());
        self.field = Some(field.to_string());
        self
    }

    fn at(mut self, d: usize) -> Self {
        self.degree = Some(d);
        self
    }

    fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    /// JSON object; the computed value is keyed by the check name.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), json!(self.suite));
        if let Some(p) = &self.pair {
            m.insert("pair".into(), json!(p));
        }
        if let Some(f) = &self.field {
            m.insert("field".into(), json!(f));
        }
        if let Some(d) = self.degree {
            m.insert("degree".into(), json!(d));
        }
        m.insert(self.check.clone(), self.value.clone());
        m.insert("expected".into(), self.expected.clone());
        m.insert("pass".into(), json!(self.pass));
        Value::Object(m)
    }
}

/// Where a pair comes from; materialized once per field.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Catalog(String),
    File(AlgebraFile),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub name: String,
    pub source: Source,
}

impl Target {
    pub fn catalog(name: &str) -> Self {
        Target { name: name.into(), source: Source::Catalog(name.into()) }
    }

    /// `None` keeps a file's own field (catalog entries default to ℚ).
    pub fn materialize(&self, field: Option<FieldDescriptor>) -> Result<AnyPair, FrobError> {
        match &self.source {
            Source::Catalog(n) => AnyPair::catalog(n, field.unwrap_or(FieldDescriptor::Q)),
            Source::File(f) => AnyPair::from_file(f, field),
        }
    }

    pub fn default_field(&self) -> Result<FieldDescriptor, FrobError> {
        match &self.source {
            Source::Catalog(_) => Ok(FieldDescriptor::Q),
            Source::File(f) => f.descriptor(),
        }
    }
}

/// Overrides for the suite defaults.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub targets: Option<Vec<Target>>,
    pub fields: Option<Vec<FieldDescriptor>>,
    pub max_degree: Option<usize>,
    pub cache: Option<Cache>,
}

impl VerifyOptions {
    fn targets(&self) -> Vec<Target> {
        self.targets.clone().unwrap_or_else(|| CATALOG_NAMES.iter().map(|n| Target::catalog(n)).collect())
    }

    fn fields(&self, default: &[FieldDescriptor]) -> Vec<Option<FieldDescriptor>> {
        match (&self.fields, &self.targets) {
            (Some(fs), _) => fs.iter().copied().map(Some).collect(),
            (None, Some(_)) => vec![None],
            (None, None) => default.iter().copied().map(Some).collect(),
        }
    }

    fn degree(&self, default: usize) -> usize {
        self.max_degree.unwrap_or(default)
    }
}

/// Records of several suites, in the order given.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.records.iter().map(Record::to_json).collect())
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain data");
        s.push('\n');
        s
    }
}

pub fn parse_suites(list: &str) -> Result<Vec<String>, VerifyError> {
    let mut out = Vec::new();
    for s in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if s == "all" {
            out.extend(SUITES.iter().map(|s| s.to_string()));
        } else if SUITES.contains(&s) {
            out.push(s.to_string());
        } else {
            return Err(VerifyError::UnknownSuite(s.to_string()));
        }
    }
    Ok(out)
}

pub fn run_suites(suites: &[String], opts: &VerifyOptions) -> Result<Report, VerifyError> {
    let mut records = Vec::new();
    for s in suites {
        records.extend(run_suite(s, opts)?);
    }
    Ok(Report { records })
}

pub fn run_suite(suite: &str, opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    match suite {
        "ranks" => suites::ranks(opts),
        "center" => suites::center(opts),
        "split" => suites::split(opts),
        "resolution" => suites::resolution(opts),
        "sigma" => suites::sigma(opts),
        "invariants" => suites::invariants(opts),
        "deformations" => suites::deformations(opts),
        "classification" => suites::classification(),
        "explicit" => suites::explicit(opts),
        other => Err(VerifyError::UnknownSuite(other.into())),
    }
}
