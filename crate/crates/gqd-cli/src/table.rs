//! The CSV-backed result table: `#`-prefixed metadata lines, a fixed
//! `kt,quantity,value` header, and one row per (kt, quantity) pair.
//!
//! Floats are printed with 12 significant digits and — crucially — every
//! float is *stored* exactly as it prints (quantised at construction), so
//! parsing an emitted file reproduces the table bit-for-bit and repeated runs
//! of the same sweep are byte-identical.

use crate::CliError;

pub const CSV_HEADER: &str = "kt,quantity,value";

/// Formats a float with 12 significant digits, the fixed on-disk format.
pub fn format_float(value: f64) -> String {
    format!("{value:.11e}")
}

/// Rounds a float to exactly the value its on-disk representation parses
/// back to.
fn quantize(value: f64) -> f64 {
    format_float(value)
        .parse()
        .expect("formatted float always reparses")
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub kt: f64,
    pub quantity: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    metadata: Vec<(String, String)>,
    rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Builds a table: rejects non-finite values, quantises floats to the
    /// on-disk precision and sorts rows by kt then quantity label.
    pub fn new(
        metadata: Vec<(String, String)>,
        rows: Vec<SweepRow>,
    ) -> Result<Self, CliError> {
        let mut quantised = Vec::with_capacity(rows.len());
        for row in rows {
            if !row.kt.is_finite() || !row.value.is_finite() {
                return Err(CliError::InvalidConfig(format!(
                    "non-finite entry for quantity `{}` at kt = {}",
                    row.quantity, row.kt
                )));
            }
            quantised.push(SweepRow {
                kt: quantize(row.kt),
                quantity: row.quantity,
                value: quantize(row.value),
            });
        }
        quantised.sort_by(|a, b| {
            a.kt.total_cmp(&b.kt)
                .then_with(|| a.quantity.cmp(&b.quantity))
        });
        Ok(Self {
            metadata,
            rows: quantised,
        })
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    /// All rows carrying one quantity label, in kt order.
    pub fn column(&self, quantity: &str) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|row| row.quantity == quantity)
            .map(|row| (row.kt, row.value))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.metadata {
            out.push_str(&format!("# {key} = {value}\n"));
        }
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                format_float(row.kt),
                row.quantity,
                format_float(row.value)
            ));
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self, CliError> {
        let mut metadata = Vec::new();
        let mut rows = Vec::new();
        let mut seen_header = false;
        for (number, line) in text.lines().enumerate() {
            let describe = |msg: &str| CliError::Parse(format!("line {}: {msg}", number + 1));
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# ") {
                if seen_header {
                    return Err(describe("metadata after the header line"));
                }
                let (key, value) = rest
                    .split_once(" = ")
                    .ok_or_else(|| describe("metadata line without ` = `"))?;
                metadata.push((key.to_string(), value.to_string()));
                continue;
            }
            if !seen_header {
                if line != CSV_HEADER {
                    return Err(describe(&format!("expected header `{CSV_HEADER}`")));
                }
                seen_header = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(describe("expected exactly 3 comma-separated fields"));
            }
            let kt: f64 = fields[0]
                .parse()
                .map_err(|_| describe("unparseable kt field"))?;
            let value: f64 = fields[2]
                .parse()
                .map_err(|_| describe("unparseable value field"))?;
            rows.push(SweepRow {
                kt,
                quantity: fields[1].to_string(),
                value,
            });
        }
        if !seen_header {
            return Err(CliError::Parse("missing header line".into()));
        }
        Self::new(metadata, rows)
    }
}
