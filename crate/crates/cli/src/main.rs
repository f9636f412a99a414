//! `tailcovar` command-line front end.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tailcovar::FamilyKind;

#[derive(Parser)]
#[command(name = "tailcovar", version, about = "CoVaR estimation for asymptotically independent losses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a sample from a simulation model as `x,y` CSV.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted or `-`.
        #[arg(long)]
        out: Option<String>,
    },
    /// Estimate CoVaR from an `x,y` CSV; prints JSON.
    Estimate {
        /// Input CSV path or `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
        #[command(flatten)]
        tuning: TuningArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Exceedance)]
        variant: VariantArg,
        /// Ratio `q/p` for the two-level variants.
        #[arg(long)]
        c: Option<f64>,
    },
    /// Exact CoVaR of a simulation model; prints JSON.
    Oracle {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0.05)]
        p: f64,
    },
    /// Monte Carlo study from a JSON config; writes report JSON and rep CSV.
    Table1 {
        #[arg(long)]
        config: String,
        /// Report JSON path; the rep-level CSV goes next to it. Overrides
        /// the config's `output`.
        #[arg(long)]
        out: Option<String>,
        /// Cap on worker threads.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// η̂ over a grid of k3 values as `k3,eta_hat` CSV.
    EtaScan {
        #[arg(long, default_value = "-")]
        input: String,
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated k3 values.
        #[arg(long, value_delimiter = ',', required = true)]
        k3: Vec<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Rolling CoVaR forecasts from a `mu,sigma,z_x,z_y` CSV.
    Forecast {
        #[arg(long, default_value = "-")]
        input: String,
        #[command(flatten)]
        tuning: TuningArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 1)]
        refresh_every: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Average quantile score of forecasts against observed Y.
    Score {
        /// CSV with `t` and `covar` columns.
        #[arg(long)]
        forecast: String,
        /// CSV with `x,y` columns, row index = time.
        #[arg(long)]
        data: String,
        #[arg(long, default_value_t = 0.05)]
        p: f64,
        /// Score only distress events: times where X exceeds its empirical
        /// VaR over this many preceding rows.
        #[arg(long)]
        window: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelName {
    Model1,
    Model2,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    #[arg(long)]
    theta1: Option<f64>,
    #[arg(long)]
    theta2: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
}

#[derive(Args)]
struct TuningArgs {
    #[arg(long, default_value_t = 0.05)]
    p: f64,
    /// Sets k1, k2 and k3 together.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    k1: Option<usize>,
    #[arg(long)]
    k2: Option<usize>,
    #[arg(long)]
    k3: Option<usize>,
}

#[derive(Args)]
struct FamilyArgs {
    /// `pm` (Pareto mixture) or `ihr` (inverted Hüsler–Reiss).
    #[arg(long)]
    family: FamilyKind,
    /// Weight scheme JSON; the family's built-in regions when omitted.
    #[arg(long)]
    scheme: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Exceedance,
    ExceedanceTwoLevel,
    Equality,
    EqualityTwoLevel,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
