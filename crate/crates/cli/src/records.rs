//! Row types for the emitted documents, with CSV and JSON encodings.
//!
//! Exact integers are decimal strings and rationals are `p/q` strings, so
//! nothing passes through a float on the way out.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceRow {
    pub n: usize,
    pub r: usize,
    pub count: String,
    pub ratio: String,
    pub max_deviation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub n: usize,
    pub a: usize,
    pub at: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub found: bool,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFields>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFields {
    pub a: usize,
    pub n: usize,
    pub t: usize,
    pub epsilon: String,
    pub lo: String,
    pub hi: String,
    pub sturm_count: usize,
    pub achieved_radius: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Header line plus one LF-terminated line per row.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Header-only documents for empty row sets, so an empty result still names its columns.
pub fn csv_header(columns: &[&str]) -> String {
    let mut s = columns.join(",");
    s.push('\n');
    s
}

pub fn from_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

/// Pretty JSON with a trailing newline; keys follow field order.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}
