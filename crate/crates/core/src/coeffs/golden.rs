//! Embedded reference tables.
//!
//! Each table is a tab-separated text file: `#` lines are comments, the
//! first column is the row index and the remaining columns are decimal
//! strings exactly as printed. Setting `QWKB_GOLDEN_DIR` makes [`golden`]
//! read `<dir>/<ID>.tsv` instead of the embedded copy.

use std::path::PathBuf;

use rug::Float;

use crate::arith::parse_decimal;
use crate::error::{QwkbError, Result};

/// Environment variable overriding the golden-data directory.
pub const GOLDEN_DIR_ENV: &str = "QWKB_GOLDEN_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("S1", include_str!("../../data/S1.tsv")),
    ("S2", include_str!("../../data/S2.tsv")),
    ("S3", include_str!("../../data/S3.tsv")),
    ("S4", include_str!("../../data/S4.tsv")),
    ("S5", include_str!("../../data/S5.tsv")),
    ("S7", include_str!("../../data/S7.tsv")),
    ("S8", include_str!("../../data/S8.tsv")),
    ("S11", include_str!("../../data/S11.tsv")),
    ("S14", include_str!("../../data/S14.tsv")),
    ("S16", include_str!("../../data/S16.tsv")),
    ("S18", include_str!("../../data/S18.tsv")),
    ("S19", include_str!("../../data/S19.tsv")),
    ("S20", include_str!("../../data/S20.tsv")),
    ("S21", include_str!("../../data/S21.tsv")),
    ("S22", include_str!("../../data/S22.tsv")),
    ("T3", include_str!("../../data/T3.tsv")),
];

/// Identifiers of the embedded tables.
pub fn table_ids() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(id, _)| *id)
}

/// One row: integer index plus the printed fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub index: i64,
    pub fields: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub id: String,
    pub description: String,
    pub rows: Vec<GoldenRow>,
}

impl GoldenTable {
    pub fn parse(id: &str, text: &str) -> Result<Self> {
        let mut description = String::new();
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                if description.is_empty() {
                    description = c.trim().to_string();
                }
                continue;
            }
            let mut parts = line.split('\t');
            let index = parts
                .next()
                .and_then(|s| s.trim().parse::<i64>().ok())
                .ok_or_else(|| {
                    QwkbError::Parse(format!("{id} line {}: bad row index", lineno + 1))
                })?;
            let fields = parts.map(|s| s.trim().to_string()).collect();
            rows.push(GoldenRow { index, fields });
        }
        Ok(GoldenTable {
            id: id.to_string(),
            description,
            rows,
        })
    }

    /// First row carrying `index`.
    pub fn row(&self, index: i64) -> Result<&GoldenRow> {
        self.rows
            .iter()
            .find(|r| r.index == index)
            .ok_or_else(|| QwkbError::Lookup(format!("{} row {index}", self.id)))
    }

    /// Field `col` of the row carrying `index`, parsed at `precision_bits`.
    pub fn value(&self, index: i64, col: usize, precision_bits: u32) -> Result<Float> {
        let row = self.row(index)?;
        let s = row
            .fields
            .get(col)
            .ok_or_else(|| QwkbError::Lookup(format!("{} row {index} column {col}", self.id)))?;
        parse_decimal(s, precision_bits)
    }
}

/// Loads a golden table by id (e.g. `"S5"`).
pub fn golden(table_id: &str) -> Result<GoldenTable> {
    let embedded = EMBEDDED
        .iter()
        .find(|(id, _)| id.eq_ignore_ascii_case(table_id))
        .ok_or_else(|| QwkbError::Lookup(table_id.to_string()))?;
    if let Some(dir) = std::env::var_os(GOLDEN_DIR_ENV) {
        let path = PathBuf::from(dir).join(format!("{}.tsv", embedded.0));
        let text = std::fs::read_to_string(&path).map_err(|e| {
            QwkbError::Config(format!("cannot read golden table {}: {e}", path.display()))
        })?;
        return GoldenTable::parse(embedded.0, &text);
    }
    GoldenTable::parse(embedded.0, embedded.1)
}
