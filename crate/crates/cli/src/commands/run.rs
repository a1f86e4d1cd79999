use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use ics_core::ics::{ics_eigen, reduce_then_ics, Algorithm, IcsResult};
use ics_core::linalg::{Matrix, RankDecision};
use ics_core::scatter::center;
use serde_json::{json, Value};

use super::{FormatArg, IcsArgs};
use crate::dataset::{DatasetArgs, Dataset};
use crate::error::CliResult;
use crate::output::{
    csv_table, ensure_dir, matrix_cols_json, matrix_csv, matrix_csv_transposed, matrix_rows_json,
    num, write_json, write_text,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Qr,
    Eigen,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,

    #[command(flatten)]
    pub ics: IcsArgs,

    #[arg(long, value_enum, default_value_t = AlgorithmArg::Qr)]
    pub algorithm: AlgorithmArg,

    /// Output directory.
    #[arg(long, short)]
    pub out: PathBuf,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

fn rank_json(rank: &RankDecision) -> Value {
    json!({
        "q": rank.q,
        "epsilon": rank.epsilon,
        "criterion": rank.criterion,
        "r_diag_abs": rank.r_diag_abs,
    })
}

fn diagnostics_json(res: &IcsResult) -> Value {
    json!({
        "algorithm": res.algorithm,
        "rank_used": res.rank_used,
        "condition_estimate": res.diagnostics.condition_estimate,
        "min_relative_gap": res.diagnostics.min_relative_gap,
        "near_equal": res.diagnostics.near_equal,
        "col_perm": res.col_perm,
    })
}

/// Writes one result either as CSV files plus JSON side files or as a single `result.json`.
fn write_result(
    dir: &Path,
    res: &IcsResult,
    rank: Option<(&RankDecision, &Matrix)>,
    names: &[String],
    format: FormatArg,
) -> CliResult<()> {
    ensure_dir(dir)?;
    let q = res.eigenvalues.len();
    match format {
        FormatArg::Csv => {
            let header = ["index".to_string(), "value".to_string()];
            let rows = res
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(i, v)| vec![(i + 1).to_string(), num(*v)]);
            write_text(&dir.join("eigenvalues.csv"), &csv_table(&header, rows))?;
            write_text(&dir.join("unmixing.csv"), &matrix_csv(names, &res.unmixing))?;
            let z_names: Vec<String> = (1..=q).map(|k| format!("z{k}")).collect();
            write_text(&dir.join("scores.csv"), &matrix_csv_transposed(&z_names, &res.scores))?;
            if let Some((rank, basis)) = rank {
                write_json(&dir.join("rank.json"), &rank_json(rank))?;
                if !rank.is_full() {
                    let b_names: Vec<String> = (1..=rank.q).map(|k| format!("b{k}")).collect();
                    write_text(&dir.join("basis.csv"), &matrix_csv(&b_names, basis))?;
                }
            }
            write_json(&dir.join("diagnostics.json"), &diagnostics_json(res))?;
        }
        FormatArg::Json => {
            let mut doc = json!({
                "algorithm": res.algorithm,
                "variables": names,
                "eigenvalues": res.eigenvalues,
                "unmixing": matrix_rows_json(&res.unmixing),
                "scores": matrix_cols_json(&res.scores),
                "diagnostics": diagnostics_json(res),
            });
            if let Some((rank, basis)) = rank {
                doc["rank"] = rank_json(rank);
                doc["basis"] = matrix_rows_json(basis);
            }
            write_json(&dir.join("result.json"), &doc)?;
        }
    }
    Ok(())
}

fn print_eigenvalues(res: &IcsResult) {
    let vals: Vec<String> = res.eigenvalues.iter().map(|v| format!("{v:.6}")).collect();
    let name = match res.algorithm {
        Algorithm::Qr => "QR",
        Algorithm::Eigen => "EIGEN",
    };
    println!("{name} eigenvalues: {}", vals.join(" "));
}

pub fn run(args: &RunArgs) -> CliResult<()> {
    let Dataset { x, var_names } = args.dataset.load()?;
    let opts = args.ics.options();
    opts.validate()?;
    ensure_dir(&args.out)?;

    let run_qr = || -> CliResult<(IcsResult, RankDecision, Matrix)> { Ok(reduce_then_ics(&x, &opts)?) };
    let run_eigen = || -> CliResult<IcsResult> { Ok(ics_eigen(&center(&x)?, &opts)?) };

    match args.algorithm {
        AlgorithmArg::Qr => {
            let (res, rank, basis) = run_qr()?;
            write_result(&args.out, &res, Some((&rank, &basis)), &var_names, args.format)?;
            if !rank.is_full() {
                println!("numerical rank {} of {}", rank.q, rank.r_diag_abs.len());
            }
            print_eigenvalues(&res);
        }
        AlgorithmArg::Eigen => {
            let res = run_eigen()?;
            write_result(&args.out, &res, None, &var_names, args.format)?;
            print_eigenvalues(&res);
        }
        AlgorithmArg::Both => {
            let (qr, rank, basis) = run_qr()?;
            write_result(&args.out.join("qr"), &qr, Some((&rank, &basis)), &var_names, args.format)?;
            print_eigenvalues(&qr);
            let eig = run_eigen()?;
            write_result(&args.out.join("eigen"), &eig, None, &var_names, args.format)?;
            print_eigenvalues(&eig);
            let comparison = compare(&qr, &eig);
            println!(
                "max relative eigenvalue difference: {:.3e}",
                comparison["max_rel_eigenvalue_diff"].as_f64().unwrap_or(f64::NAN)
            );
            write_json(&args.out.join("comparison.json"), &comparison)?;
        }
    }
    Ok(())
}

fn compare(a: &IcsResult, b: &IcsResult) -> Value {
    if a.eigenvalues.len() != b.eigenvalues.len() {
        return json!({
            "comparable": false,
            "max_rel_eigenvalue_diff": null,
            "max_abs_score_diff": null,
        });
    }
    let eig = a
        .eigenvalues
        .iter()
        .zip(&b.eigenvalues)
        .map(|(x, y)| (x - y).abs() / y.abs())
        .fold(0.0, f64::max);
    let mut score: f64 = 0.0;
    for i in 0..a.scores.nrows() {
        let (mut plus, mut minus) = (0.0f64, 0.0f64);
        for j in 0..a.scores.ncols() {
            plus = plus.max((a.scores[(i, j)] - b.scores[(i, j)]).abs());
            minus = minus.max((a.scores[(i, j)] + b.scores[(i, j)]).abs());
        }
        score = score.max(plus.min(minus));
    }
    json!({
        "comparable": true,
        "max_rel_eigenvalue_diff": eig,
        "max_abs_score_diff": score,
    })
}
