//! Curated operator records with coefficient formulas and relations.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use super::cyop::{parse_lines, serialize_cyop, CyopDoc, CyopError};
use crate::constructions::{Formula, FormulaError};
use crate::exact::{fmt_rat, parse_rat, Rat};
use crate::operator::ThetaOperator;

const BUNDLED: &str = include_str!("../../data/table_a.db");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("cannot read dataset: {0}")]
    Io(String),
    #[error("record {id}: {source}")]
    Record { id: String, source: CyopError },
    #[error("record {id}, line {line}: {msg}")]
    Metadata { id: String, line: usize, msg: String },
}

/// Annotation attached to a record.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Note {
    ReflectionOf(String),
    SameKqAs(String),
    PullbackOf5thOrder,
    UnverifiedAsPrinted,
    CorrectedFromPrint,
    Family(String),
    Other(String),
}

impl Note {
    pub fn parse(tag: &str) -> Note {
        if let Some(id) = tag.strip_prefix("reflection-of:") {
            Note::ReflectionOf(id.to_string())
        } else if let Some(id) = tag.strip_prefix("same-kq-as:") {
            Note::SameKqAs(id.to_string())
        } else if let Some(f) = tag.strip_prefix("family:") {
            Note::Family(f.to_string())
        } else {
            match tag {
                "pullback-of-5th-order" => Note::PullbackOf5thOrder,
                "unverified-as-printed" => Note::UnverifiedAsPrinted,
                "corrected-from-print" => Note::CorrectedFromPrint,
                other => Note::Other(other.to_string()),
            }
        }
    }
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Note::ReflectionOf(id) => write!(f, "reflection-of:{id}"),
            Note::SameKqAs(id) => write!(f, "same-kq-as:{id}"),
            Note::PullbackOf5thOrder => f.write_str("pullback-of-5th-order"),
            Note::UnverifiedAsPrinted => f.write_str("unverified-as-printed"),
            Note::CorrectedFromPrint => f.write_str("corrected-from-print"),
            Note::Family(name) => write!(f, "family:{name}"),
            Note::Other(tag) => f.write_str(tag),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetRecord {
    pub id: String,
    pub operator: ThetaOperator,
    pub formula: Option<String>,
    pub base_cases: Vec<(usize, Rat)>,
    pub notes: Vec<Note>,
}

impl DatasetRecord {
    pub fn has_note(&self, note: &Note) -> bool {
        self.notes.contains(note)
    }

    pub fn is_verified(&self) -> bool {
        !self.has_note(&Note::UnverifiedAsPrinted)
    }

    pub fn parsed_formula(&self) -> Option<Result<Formula, FormulaError>> {
        self.formula.as_deref().map(Formula::parse)
    }

    /// Serializes as a dataset block (without the `---` separator).
    pub fn to_block(&self) -> String {
        let mut out = serialize_cyop(&CyopDoc { id: Some(self.id.clone()), operator: self.operator.clone() });
        if let Some(f) = &self.formula {
            out.push_str(&format!("formula: {f}\n"));
        }
        for (n, v) in &self.base_cases {
            out.push_str(&format!("base {n} {}\n", fmt_rat(v)));
        }
        for note in &self.notes {
            out.push_str(&format!("note {note}\n"));
        }
        out
    }
}

fn parse_block(lines: &[(usize, &str)], index: usize, eof: usize) -> Result<DatasetRecord, DatasetError> {
    let fallback = format!("block {}", index + 1);
    let id_hint = lines
        .iter()
        .find_map(|(_, l)| l.strip_prefix("id ").map(|s| s.trim().to_string()))
        .unwrap_or(fallback);
    let meta_start = lines
        .iter()
        .position(|(_, l)| l.starts_with("formula:") || l.starts_with("base ") || l.starts_with("note "))
        .unwrap_or(lines.len());
    let doc = parse_lines(&lines[..meta_start], eof)
        .map_err(|source| DatasetError::Record { id: id_hint.clone(), source })?;
    let id = doc.id.clone().unwrap_or(id_hint);
    let mut rec = DatasetRecord {
        id: id.clone(),
        operator: doc.operator,
        formula: None,
        base_cases: Vec::new(),
        notes: Vec::new(),
    };
    let meta_err = |line: usize, msg: &str| DatasetError::Metadata { id: id.clone(), line, msg: msg.to_string() };
    for (n, l) in &lines[meta_start..] {
        if let Some(f) = l.strip_prefix("formula:") {
            if rec.formula.is_some() {
                return Err(meta_err(*n, "duplicate formula"));
            }
            rec.formula = Some(f.trim().to_string());
        } else if let Some(rest) = l.strip_prefix("base ") {
            let mut w = rest.split_whitespace();
            let k = w.next().and_then(|x| x.parse::<usize>().ok());
            let v = w.next().and_then(parse_rat);
            match (k, v, w.next()) {
                (Some(k), Some(v), None) => rec.base_cases.push((k, v)),
                _ => return Err(meta_err(*n, "expected 'base <n> <value>'")),
            }
        } else if let Some(tag) = l.strip_prefix("note ") {
            rec.notes.push(Note::parse(tag.trim()));
        } else {
            return Err(meta_err(*n, "expected formula, base or note line"));
        }
    }
    Ok(rec)
}

/// Parses `---`-separated blocks.
pub fn parse_dataset(text: &str) -> Result<Vec<DatasetRecord>, DatasetError> {
    let eof = text.lines().count() + 1;
    let mut blocks: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for (i, raw) in text.lines().enumerate() {
        let l = super::cyop::strip_comment(raw);
        if l == "---" {
            blocks.push(Vec::new());
        } else if !l.is_empty() {
            blocks.last_mut().expect("nonempty").push((i + 1, l));
        }
    }
    blocks
        .iter()
        .filter(|b| !b.is_empty())
        .enumerate()
        .map(|(i, b)| parse_block(b, i, eof))
        .collect()
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Vec<DatasetRecord>, DatasetError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| DatasetError::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_dataset(&text)
}

/// The dataset shipped with the crate.
pub fn bundled() -> Vec<DatasetRecord> {
    parse_dataset(BUNDLED).expect("bundled dataset parses")
}

/// Looks up a record by id.
pub fn find<'a>(records: &'a [DatasetRecord], id: &str) -> Option<&'a DatasetRecord> {
    records.iter().find(|r| r.id == id)
}

/// Serializes records, separated by `---`.
pub fn serialize_dataset(records: &[DatasetRecord]) -> String {
    records.iter().map(DatasetRecord::to_block).collect::<Vec<_>>().join("---\n")
}
