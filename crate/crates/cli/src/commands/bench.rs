use std::path::PathBuf;

use clap::Args;
use ics_core::experiments::{benchmark, qr_factor_flops};
use ics_core::ics::Algorithm;
use serde_json::json;

use super::SeedArg;
use crate::error::CliResult;
use crate::output::{csv_table, ensure_dir, num, write_json, write_text};

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 20_000)]
    pub n: usize,
    #[arg(long, default_value_t = 50)]
    pub p: usize,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,

    #[command(flatten)]
    pub seed: SeedArg,

    /// Output directory for bench.csv and bench.json.
    #[arg(long, short)]
    pub out: PathBuf,
}

pub fn run(args: &BenchArgs) -> CliResult<()> {
    let report = benchmark(args.n, args.p, args.reps, args.seed.seed)?;
    ensure_dir(&args.out)?;

    let header = ["algorithm", "median_seconds", "min_seconds", "flops_estimate"].map(String::from);
    let rows = report.rows.iter().map(|r| {
        vec![
            match r.algorithm {
                Algorithm::Qr => "QR".to_string(),
                Algorithm::Eigen => "EIGEN".to_string(),
            },
            num(r.median_seconds),
            num(r.min_seconds),
            num(r.flops_estimate),
        ]
    });
    write_text(&args.out.join("bench.csv"), &csv_table(&header, rows))?;

    let ratio = match (report.median(Algorithm::Qr), report.median(Algorithm::Eigen)) {
        (Some(q), Some(e)) if e > 0.0 => Some(q / e),
        _ => None,
    };
    write_json(
        &args.out.join("bench.json"),
        &json!({
            "report": report,
            "qr_factor_flops": qr_factor_flops(args.n, args.p),
            "median_ratio_qr_over_eigen": ratio,
        }),
    )?;

    println!("{:<6} {:>14} {:>14} {:>14}", "route", "median [s]", "min [s]", "flops");
    for r in &report.rows {
        println!(
            "{:<6} {:>14.6} {:>14.6} {:>14.3e}",
            format!("{:?}", r.algorithm),
            r.median_seconds,
            r.min_seconds,
            r.flops_estimate
        );
    }
    if let Some(ratio) = ratio {
        println!("median ratio QR / EIGEN: {ratio:.2}");
    }
    Ok(())
}
