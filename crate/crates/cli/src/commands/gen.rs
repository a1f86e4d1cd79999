use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use ics_core::experiments::{gen_ica, gen_mixture, IcaSpec, MixtureSpec, Source};
use ics_core::Matrix;
use serde_json::json;

use super::SeedArg;
use crate::dataset::default_names;
use crate::error::{CliError, CliResult};
use crate::output::{matrix_csv_transposed, matrix_rows_json, write_json, write_text};

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,

    /// Output CSV (observations in rows, with header). Ground truth goes to `<stem>.truth.json`.
    #[arg(long, short, global = true, default_value = "data.csv")]
    pub out: PathBuf,

    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenKind {
    /// (1-eps) N(1, I) + eps N((delta, 1, ..., 1), I).
    Mixture {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        p: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 6.0, allow_negative_numbers = true)]
        delta: f64,
    },
    /// Independent unit-variance sources mixed by a random diagonal matrix.
    Ica {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        /// Comma-separated source distributions: gaussian, t5, uniform, laplace.
        #[arg(long, value_delimiter = ',', default_value = "gaussian,t5,uniform,laplace")]
        sources: Vec<String>,
    },
}

pub fn truth_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map_or_else(|| "data".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.truth.json"))
}

fn write_data(out: &Path, x: &Matrix) -> CliResult<()> {
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        crate::output::ensure_dir(parent)?;
    }
    write_text(out, &matrix_csv_transposed(&default_names(x.nrows()), x))
}

pub fn run(args: &GenArgs) -> CliResult<()> {
    let seed = args.seed.seed;
    match &args.kind {
        GenKind::Mixture { n, p, epsilon, delta } => {
            let spec = MixtureSpec {
                n: *n,
                p: *p,
                epsilon: *epsilon,
                delta: *delta,
                seed,
            };
            let m = gen_mixture(&spec)?;
            write_data(&args.out, &m.data)?;
            let outliers: Vec<usize> = (0..m.labels.len()).filter(|&i| m.labels[i]).map(|i| i + 1).collect();
            write_json(
                &truth_path(&args.out),
                &json!({ "kind": "mixture", "spec": spec, "labels": m.labels, "shifted_indices": outliers }),
            )?;
            println!("wrote {} ({} x {}), {} shifted observations", args.out.display(), n, p, outliers.len());
        }
        GenKind::Ica { n, sources } => {
            let sources = sources
                .iter()
                .map(|s| s.parse::<Source>())
                .collect::<Result<Vec<_>, _>>()?;
            if sources.is_empty() {
                return Err(CliError::usage("InvalidSpec", "at least one source is required"));
            }
            let spec = IcaSpec {
                n: *n,
                sources,
                seed,
            };
            let s = gen_ica(&spec)?;
            write_data(&args.out, &s.x)?;
            write_json(
                &truth_path(&args.out),
                &json!({
                    "kind": "ica",
                    "spec": spec,
                    "mixing": matrix_rows_json(&s.mixing),
                    "sources": matrix_rows_json(&s.sources),
                }),
            )?;
            println!("wrote {} ({} x {})", args.out.display(), n, spec.sources.len());
        }
    }
    Ok(())
}
