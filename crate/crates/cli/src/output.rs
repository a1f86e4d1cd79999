use std::fs;
use std::io::Write;
use std::path::Path;

use ics_core::Matrix;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// 17 significant digits, enough for an exact f64 round trip.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(text.as_bytes()))
        .map_err(|e| CliError::io(path, e))
}

pub fn write_json(path: &Path, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    write_text(path, &text)
}

/// CSV with a header and one line per row of `rows`.
pub fn csv_table<'a>(header: &[String], rows: impl Iterator<Item = Vec<String>> + 'a) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Each row of `m` becomes a CSV line.
pub fn matrix_csv(header: &[String], m: &Matrix) -> String {
    csv_table(header, (0..m.nrows()).map(|i| m.row(i).into_iter().map(num).collect()))
}

/// Each column of `m` becomes a CSV line, i.e. `mᵀ` is written.
pub fn matrix_csv_transposed(header: &[String], m: &Matrix) -> String {
    csv_table(header, (0..m.ncols()).map(|j| m.col(j).iter().copied().map(num).collect()))
}

pub fn matrix_rows_json(m: &Matrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::from(m.row(i))).collect())
}

pub fn matrix_cols_json(m: &Matrix) -> Value {
    Value::Array((0..m.ncols()).map(|j| Value::from(m.col(j).to_vec())).collect())
}
