use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use ics_core::Matrix;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Orientation {
    /// One observation per row (common statistical layout).
    #[default]
    ObsRows,
    /// One variable per row.
    VarsRows,
}

#[derive(Debug, Clone, Args)]
pub struct DatasetArgs {
    /// CSV file with the data.
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = Orientation::ObsRows)]
    pub orientation: Orientation,

    /// The file has no header row.
    #[arg(long)]
    pub no_header: bool,

    /// Field delimiter: a single ASCII character, or `tab`.
    #[arg(long, default_value = ",")]
    pub delimiter: String,
}

pub struct Dataset {
    /// `p x n`.
    pub x: Matrix,
    pub var_names: Vec<String>,
}

fn delimiter_byte(s: &str) -> CliResult<u8> {
    match s {
        "tab" | "\\t" | "\t" => Ok(b'\t'),
        s if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        other => Err(CliError::usage(
            "UsageError",
            format!("delimiter must be a single ASCII character or 'tab', got '{other}'"),
        )),
    }
}

impl DatasetArgs {
    pub fn load(&self) -> CliResult<Dataset> {
        read_dataset(&self.input, self.orientation, !self.no_header, delimiter_byte(&self.delimiter)?)
    }
}

pub fn read_dataset(path: &Path, orientation: Orientation, header: bool, delimiter: u8) -> CliResult<Dataset> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(file);
    let parse_err = |m: String| CliError::usage("ParseError", format!("{}: {m}", path.display()));

    let names: Option<Vec<String>> = if header {
        let h = reader.headers().map_err(|e| parse_err(e.to_string()))?;
        Some(h.iter().map(str::to_string).collect())
    } else {
        None
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (r, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| parse_err(e.to_string()))?;
        let line = r + 1 + usize::from(header);
        let row = rec
            .iter()
            .enumerate()
            .map(|(c, field)| {
                field.parse::<f64>().map_err(|_| {
                    parse_err(format!("line {line}, field {}: '{field}' is not a number", c + 1))
                })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() || rows[0].is_empty() {
        return Err(parse_err("no data rows".into()));
    }

    let (p, n) = match orientation {
        Orientation::ObsRows => (rows[0].len(), rows.len()),
        Orientation::VarsRows => (rows.len(), rows[0].len()),
    };
    if n < 2 {
        return Err(parse_err(format!("need at least 2 observations, got {n}")));
    }
    let mut data = Vec::with_capacity(p * n);
    match orientation {
        Orientation::ObsRows => {
            for row in &rows {
                data.extend_from_slice(row);
            }
        }
        Orientation::VarsRows => {
            for j in 0..n {
                data.extend(rows.iter().map(|row| row[j]));
            }
        }
    }
    let x = Matrix::from_col_major(p, n, data)?;
    let var_names = match (orientation, names) {
        (Orientation::ObsRows, Some(h)) if h.len() == p => h,
        _ => default_names(p),
    };
    Ok(Dataset { x, var_names })
}

pub fn default_names(p: usize) -> Vec<String> {
    (1..=p).map(|j| format!("x{j}")).collect()
}
