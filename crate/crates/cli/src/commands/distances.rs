use std::path::PathBuf;

use clap::Args;
use ics_core::ics::{ics_distances, reduce_then_ics};
use serde_json::json;

use super::{FormatArg, IcsArgs};
use crate::dataset::DatasetArgs;
use crate::error::CliResult;
use crate::output::{csv_table, ensure_dir, num, write_json, write_text};
use crate::svg::index_plot;

#[derive(Debug, Clone, Args)]
pub struct DistancesArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,

    #[command(flatten)]
    pub ics: IcsArgs,

    /// Number of leading invariant coordinates summed into ICSD².
    #[arg(long, short = 'k', default_value_t = 1)]
    pub components: usize,

    /// Rows of the printed ranking table.
    #[arg(long, default_value_t = 10)]
    pub top: usize,

    /// Output directory for distances.csv and distances.svg.
    #[arg(long, short)]
    pub out: PathBuf,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

pub fn run(args: &DistancesArgs) -> CliResult<()> {
    let data = args.dataset.load()?;
    let opts = args.ics.options();
    let (res, rank, _) = reduce_then_ics(&data.x, &opts)?;
    let d = ics_distances(&res, args.components)?;

    ensure_dir(&args.out)?;
    match args.format {
        FormatArg::Csv => {
            let header = ["index".to_string(), "icsd2".to_string()];
            let rows = d.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), num(*v)]);
            write_text(&args.out.join("distances.csv"), &csv_table(&header, rows))?;
        }
        FormatArg::Json => write_json(
            &args.out.join("distances.json"),
            &json!({ "components": args.components, "rank": rank.q, "icsd2": d }),
        )?,
    }
    let title = format!("ICSD² with k = {} (rank {})", args.components, rank.q);
    write_text(&args.out.join("distances.svg"), &index_plot(&title, &d, "ICSD²"))?;

    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d[b].total_cmp(&d[a]).then(a.cmp(&b)));
    println!("{:>5} {:>8} {:>14}", "rank", "index", "icsd2");
    for (r, &i) in order.iter().take(args.top).enumerate() {
        println!("{:>5} {:>8} {:>14.6}", r + 1, i + 1, d[i]);
    }
    Ok(())
}
