use std::path::PathBuf;

use clap::{Args, ValueEnum};
use ics_core::experiments::{gen_mixture, pair_label, sweep, MixtureSpec, SweepReport, SweepStatus};
use ics_core::ics::Algorithm;
use ics_core::scatter::WeightSpec;
use serde_json::json;

use super::SeedArg;
use crate::dataset::{read_dataset, Orientation};
use crate::error::{CliError, CliResult};
use crate::output::{csv_table, ensure_dir, num, write_json, write_text};
use crate::svg::{line_panels, Panel, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepAlgorithms {
    Qr,
    Eigen,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Use this CSV (observations in rows, with header) as base data instead of the mixture model.
    #[arg(long)]
    pub input: Option<PathBuf>,

    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub p: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 6.0, allow_negative_numbers = true)]
    pub delta: f64,

    #[command(flatten)]
    pub seed: SeedArg,

    #[arg(long, default_value_t = 0.0)]
    pub k_min: f64,
    #[arg(long, default_value_t = 30.0)]
    pub k_max: f64,
    #[arg(long, default_value_t = 1.0)]
    pub k_step: f64,

    /// Weight exponents of the cov-cov_w pairs.
    #[arg(long, value_delimiter = ',', default_value = "1,-1", allow_negative_numbers = true)]
    pub alpha: Vec<f64>,

    #[arg(long, value_enum, default_value_t = SweepAlgorithms::Both)]
    pub algorithm: SweepAlgorithms,

    /// Output directory for sweep.csv, sweep.json and sweep.svg.
    #[arg(long, short)]
    pub out: PathBuf,
}

fn grid(args: &SweepArgs) -> CliResult<Vec<f64>> {
    if !(args.k_step > 0.0) || !(args.k_max >= args.k_min) || !args.k_min.is_finite() || !args.k_max.is_finite() {
        return Err(CliError::usage(
            "UsageError",
            "grid needs finite k-min <= k-max and a positive k-step",
        ));
    }
    let steps = ((args.k_max - args.k_min) / args.k_step + 1e-9).floor() as usize;
    Ok((0..=steps).map(|i| args.k_min + i as f64 * args.k_step).collect())
}

fn algorithms(a: SweepAlgorithms) -> Vec<Algorithm> {
    match a {
        SweepAlgorithms::Qr => vec![Algorithm::Qr],
        SweepAlgorithms::Eigen => vec![Algorithm::Eigen],
        SweepAlgorithms::Both => vec![Algorithm::Eigen, Algorithm::Qr],
    }
}

fn status_name(s: SweepStatus) -> &'static str {
    match s {
        SweepStatus::Ok => "OK",
        SweepStatus::SingularError => "SINGULAR_ERROR",
        SweepStatus::Error => "ERROR",
    }
}

fn algorithm_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Qr => "QR",
        Algorithm::Eigen => "EIGEN",
    }
}

pub fn report_csv(report: &SweepReport) -> String {
    let mut header: Vec<String> = ["k", "pair", "algorithm", "status"].map(String::from).to_vec();
    header.extend((1..=report.p).map(|i| format!("eig_{i}")));
    header.push("kappa".into());
    let rows = report.rows.iter().map(|r| {
        let mut row = vec![
            num(r.k),
            r.pair.clone(),
            algorithm_name(r.algorithm).into(),
            status_name(r.status).into(),
        ];
        for i in 0..report.p {
            row.push(r.eigenvalues.as_ref().and_then(|e| e.get(i)).map_or(String::new(), |v| num(*v)));
        }
        row.push(num(r.kappa));
        row
    });
    csv_table(&header, rows)
}

pub fn report_svg(report: &SweepReport, pairs: &[String], algs: &[Algorithm]) -> String {
    let mut grid: Vec<f64> = report.rows.iter().map(|r| r.k).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut panels = Vec::new();
    for pair in pairs {
        for &alg in algs {
            let series = (0..report.p)
                .map(|i| Series {
                    label: format!("eig_{}", i + 1),
                    points: grid
                        .iter()
                        .map(|&k| {
                            report
                                .cell(k, pair, alg)
                                .and_then(|r| r.eigenvalues.as_ref())
                                .and_then(|e| e.get(i))
                                .map(|&v| (k, v))
                        })
                        .collect(),
                })
                .collect();
            panels.push(Panel {
                title: format!("{} {pair}", algorithm_name(alg)),
                series,
            });
        }
    }
    line_panels(&panels, algs.len(), "k (condition number 10^k)", true)
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let grid = grid(args)?;
    let base = match &args.input {
        Some(path) => read_dataset(path, Orientation::ObsRows, true, b',')?.x,
        None => {
            gen_mixture(&MixtureSpec {
                n: args.n,
                p: args.p,
                epsilon: args.epsilon,
                delta: args.delta,
                seed: args.seed.seed,
            })?
            .data
        }
    };
    let pairs: Vec<WeightSpec> = args.alpha.iter().map(|&a| WeightSpec::power(a)).collect();
    for w in &pairs {
        w.validate()?;
    }
    let algs = algorithms(args.algorithm);
    let report = sweep(&base, &grid, &pairs, &algs);

    ensure_dir(&args.out)?;
    write_text(&args.out.join("sweep.csv"), &report_csv(&report))?;
    write_json(
        &args.out.join("sweep.json"),
        &json!({
            "seed": args.seed.seed,
            "grid": grid,
            "report": report,
        }),
    )?;
    let labels: Vec<String> = pairs.iter().map(pair_label).collect();
    write_text(&args.out.join("sweep.svg"), &report_svg(&report, &labels, &algs))?;

    for label in &labels {
        for &alg in &algs {
            let first = report.first_failure(label, alg);
            println!(
                "{label} {}: {}",
                algorithm_name(alg),
                first.map_or("OK at every k".to_string(), |k| format!("first failure at k = {k}"))
            );
        }
    }
    Ok(())
}
