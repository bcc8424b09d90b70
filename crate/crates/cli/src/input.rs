//! Operator and argument loading shared by the subcommands.

use std::fs;

use cyeq::db::{bundled, find, load_dataset, parse_cyop, DatasetRecord};
use cyeq::exact::{parse_rat, PowerSeries, Rat};
use cyeq::operator::ThetaOperator;

/// Errors that end the process with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, UsageError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(UsageError(msg.into()))
}

pub fn records(db: Option<&str>) -> CliResult<Vec<DatasetRecord>> {
    match db {
        Some(path) => Ok(load_dataset(path)?),
        None => Ok(bundled()),
    }
}

/// `@ID` names a dataset record, anything else is a `.cyop` path.
pub fn operator(spec: &str, db: Option<&str>) -> CliResult<ThetaOperator> {
    if let Some(id) = spec.strip_prefix('@') {
        let recs = records(db)?;
        return match find(&recs, id) {
            Some(r) => Ok(r.operator.clone()),
            None => usage(format!("no dataset record with id {id}")),
        };
    }
    let text = fs::read_to_string(spec).map_err(|e| UsageError(format!("{spec}: {e}")))?;
    parse_cyop(&text).map(|doc| doc.operator).map_err(|e| UsageError(format!("{spec}: {e}")))
}

pub fn rational(what: &str, s: &str) -> CliResult<Rat> {
    match parse_rat(s.trim()) {
        Some(r) => Ok(r),
        None => usage(format!("{what}: '{s}' is not a rational number")),
    }
}

/// Whitespace- or comma-separated coefficients, `#` comments allowed.
pub fn series_file(path: &str) -> CliResult<PowerSeries> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))?;
    let mut coeffs = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            coeffs.push(rational(path, tok)?);
        }
    }
    if coeffs.is_empty() {
        return usage(format!("{path}: no coefficients"));
    }
    Ok(PowerSeries::new(coeffs))
}

/// `K=lo:hi` with integer bounds.
pub fn range(s: &str) -> CliResult<(String, i64, i64)> {
    let parsed = s.split_once('=').and_then(|(k, r)| {
        let (lo, hi) = r.split_once(':')?;
        Some((k.trim().to_string(), lo.trim().parse().ok()?, hi.trim().parse().ok()?))
    });
    match parsed {
        Some(t) => Ok(t),
        None => usage(format!("--range expects K=lo:hi, got '{s}'")),
    }
}

pub fn rational_list(s: &str) -> CliResult<Vec<Rat>> {
    s.split(',').map(|t| rational("spectrum", t)).collect()
}
