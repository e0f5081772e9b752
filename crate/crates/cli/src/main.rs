//! Command-line surface of the flag-manifold Jacobi toolkit.
//!
//! Exit codes: 0 pass, 1 verification/tolerance failure, 2 usage error,
//! 3 missing prerequisite artifact.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagjacobi_core::derivatives::Variant;
use flagjacobi_core::fields::Method;
use flagjacobi_core::recurrence::RankSource;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISSING: i32 = 3;

#[derive(Parser)]
#[command(
    name = "flagjacobi",
    version,
    about = "Exact and numerical toolkit for the Jacobi operator on the full flag manifold U(3)/T^3"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum VariantArg {
    Printed,
    Repaired,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Printed => Variant::Printed,
            VariantArg::Repaired => Variant::Repaired,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum MethodArg {
    Constcoef,
    Rk4,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Constcoef => Method::ConstCoef,
            MethodArg::Rk4 => Method::Rk4,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum SourceArg {
    Oracle,
    Published,
}

impl From<SourceArg> for RankSource {
    fn from(s: SourceArg) -> RankSource {
        match s {
            SourceArg::Oracle => RankSource::Oracle,
            SourceArg::Published => RankSource::Published,
        }
    }
}

/// Flags shared by every sampled or file-writing workflow.
#[derive(Args, Clone)]
pub struct CommonArgs {
    /// Variant of the closed forms to consume.
    #[arg(long, value_enum, default_value = "repaired")]
    pub variant: VariantArg,
    /// Tolerance for verification gates.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Sample count for sampled workflows.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// Seed; identical seed and config reproduce outputs byte for byte.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Output directory for persisted artifacts
    /// (default: $FLAGJACOBI_OUT_DIR or ".").
    #[arg(long)]
    pub out_dir: Option<std::path::PathBuf>,
    /// Calibration file (default: `<out-dir>/calibration.json`).
    #[arg(long)]
    pub calibration: Option<std::path::PathBuf>,
    /// Never calibrate on the fly; fail with exit 3 if the calibration file
    /// is missing.
    #[arg(long, default_value_t = false)]
    pub no_calibrate: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate J^(k) at a tangent vector.
    Eval {
        /// Derivative order.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
        k: u8,
        /// Six comma-separated components; exact forms like 1/2 or
        /// 1/2*sqrt2 keep the exact evaluation path alive.
        #[arg(long)]
        x: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Trace-constancy and isotropy-equivariance audit of the closed forms.
    Audit {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Search trace-restoring sign flips and list the summand corrections.
    Repair {
        /// Derivative order to repair.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
        k: u8,
        /// Largest flip set to consider.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=4))]
        max_flips: u8,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Align the Lie reconstruction with the closed forms.
    Calibrate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cross-validate a stored calibration on fresh samples.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Discover and verify the osculating-rank recurrence.
    Rank {
        #[arg(long, value_enum, default_value = "oracle")]
        source: SourceArg,
        /// Longest chain considered.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(2..=11))]
        k_max: u8,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Solve Jacobi fields along a geodesic.
    Fields {
        #[arg(long)]
        x: String,
        /// Initial value Y(0) (defaults to 0).
        #[arg(long)]
        y0: Option<String>,
        /// Initial derivative Y'(0) (defaults to e1).
        #[arg(long)]
        v0: Option<String>,
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        #[arg(long, value_enum, default_value = "constcoef")]
        method: MethodArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Locate conjugate points along a geodesic.
    Conjugate {
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-2)]
        h: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Calibrate, cross-validate, find the recurrence and solve field
    /// batches end to end; persists every artifact.
    Pipeline {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Eval { k, x, common } => commands::cmd_eval(k, &x, &common),
        Cmd::Audit { common } => commands::cmd_audit(&common),
        Cmd::Repair {
            k,
            max_flips,
            common,
        } => commands::cmd_repair(k, max_flips as usize, &common),
        Cmd::Calibrate { common } => commands::cmd_calibrate(&common),
        Cmd::Verify { common } => commands::cmd_verify(&common),
        Cmd::Rank {
            source,
            k_max,
            common,
        } => commands::cmd_rank(source.into(), k_max as usize, &common),
        Cmd::Fields {
            x,
            y0,
            v0,
            t_max,
            h,
            method,
            common,
        } => commands::cmd_fields(
            &x,
            y0.as_deref(),
            v0.as_deref(),
            t_max,
            h,
            method.into(),
            &common,
        ),
        Cmd::Conjugate {
            x,
            t_max,
            h,
            common,
        } => commands::cmd_conjugate(&x, t_max, h, &common),
        Cmd::Pipeline { common } => commands::cmd_pipeline(&common),
    };
    std::process::exit(code);
}
