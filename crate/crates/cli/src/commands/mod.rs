pub mod bench;
pub mod distances;
pub mod gen;
pub mod run;
pub mod sweep;

use clap::{Args, ValueEnum};
use ics_core::ics::{IcsOptions, Reduction, SignConvention};
use ics_core::linalg::RankCriterion;
use ics_core::scatter::WeightSpec;

const DEFAULT_SEED: u64 = 20_240_601;

/// Seed given by flag, else `ICS_SEED`, else the built-in default.
#[derive(Debug, Clone, Args)]
pub struct SeedArg {
    #[arg(long, env = "ICS_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReductionArg {
    Urv,
    Truncate,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Leading,
    Successive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct IcsArgs {
    /// Exponent of the weight w(d) = d^alpha (1: cov4, -1: covAxis).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Use w(d) = 1 instead of a power weight.
    #[arg(long, conflicts_with = "alpha")]
    pub constant_weight: bool,

    /// Floor for zero Mahalanobis distances when alpha < 0 (default: error).
    #[arg(long)]
    pub zero_distance_floor: Option<f64>,

    #[arg(long, value_enum, default_value_t = ReductionArg::Urv)]
    pub reduction: ReductionArg,

    /// Relative tolerance of the rank scan on diag(|R|).
    #[arg(long, default_value_t = 1e-8)]
    pub rank_epsilon: f64,

    #[arg(long, value_enum, default_value_t = CriterionArg::Leading)]
    pub rank_criterion: CriterionArg,

    /// Skip the rank scan; only exactly zero pivots count as rank loss.
    #[arg(long)]
    pub no_rank_scan: bool,

    /// Disable the l-infinity row presort before the QR factorization.
    #[arg(long)]
    pub no_row_pivot: bool,

    /// Keep raw signs instead of making the largest entry of each unmixing row positive.
    #[arg(long)]
    pub no_sign_fix: bool,

    /// Relative eigenvalue gap below which neighbours are flagged as near-equal.
    #[arg(long, default_value_t = 1e-6)]
    pub gap_tolerance: f64,
}

impl IcsArgs {
    pub fn weight(&self) -> WeightSpec {
        let w = if self.constant_weight {
            WeightSpec::constant()
        } else {
            WeightSpec::power(self.alpha)
        };
        match self.zero_distance_floor {
            Some(f) => w.with_clamp(f),
            None => w,
        }
    }

    pub fn options(&self) -> IcsOptions {
        IcsOptions {
            weight: self.weight(),
            row_pivot: !self.no_row_pivot,
            rank_epsilon: self.rank_epsilon,
            rank_criterion: match self.rank_criterion {
                CriterionArg::Leading => RankCriterion::Leading,
                CriterionArg::Successive => RankCriterion::Successive,
            },
            rank_scan: !self.no_rank_scan,
            reduction: match self.reduction {
                ReductionArg::Urv => Reduction::Urv,
                ReductionArg::Truncate => Reduction::Truncate,
                ReductionArg::None => Reduction::None,
            },
            sign_convention: if self.no_sign_fix {
                SignConvention::None
            } else {
                SignConvention::MaxAbsPositive
            },
            gap_tolerance: self.gap_tolerance,
        }
    }
}
