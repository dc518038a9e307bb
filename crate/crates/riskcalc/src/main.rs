use std::path::PathBuf;

use clap::{Parser, Subcommand};

use riskcalc::cli::{
    cmd_assess, cmd_curve, cmd_matrix, cmd_sif, cmd_simulate, cmd_trend, curve_threshold,
    CommandOutcome,
};
use riskcalc::registry::ReportFormat;
use riskcalc::sim::OccurrenceModel;

/// Quantitative IT security risk toolkit.
#[derive(Parser)]
#[command(name = "riskcalc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every asset-threat pair in a register
    Assess {
        /// Register file (TOML)
        #[arg(long)]
        register: PathBuf,
        /// Config file; defaults to $RISKCALC_CONFIG, then ./riskcalc.toml
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output format: table or csv
        #[arg(long, default_value = "table")]
        format: ReportFormat,
    },
    /// Financial security indicator for one asset
    Sif {
        /// Register file (TOML)
        #[arg(long)]
        register: PathBuf,
        /// Asset id to evaluate
        #[arg(long)]
        asset: String,
    },
    /// Year-over-year loss trend report from two loss tables
    Trend {
        /// Prior-year loss table (CSV)
        #[arg(long)]
        prev: PathBuf,
        /// Current-year loss table (CSV)
        #[arg(long)]
        curr: PathBuf,
        /// Output format: table or csv
        #[arg(long, default_value = "table")]
        format: ReportFormat,
    },
    /// Monte Carlo check of the analytic loss expectancy
    Simulate {
        /// Register file (TOML)
        #[arg(long)]
        register: PathBuf,
        /// Asset id
        #[arg(long)]
        asset: String,
        /// Threat id (must target the asset)
        #[arg(long)]
        threat: String,
        /// Number of simulated years
        #[arg(long, default_value_t = 100_000)]
        years: u64,
        /// Seed for the deterministic generator
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Occurrence model: poisson or bernoulli
        #[arg(long, default_value = "poisson")]
        model: OccurrenceModel,
        /// Output format: table, csv, or plotdata (exceedance curve)
        #[arg(long, default_value = "table")]
        format: ReportFormat,
    },
    /// Write an iso-risk curve as plot data
    Curve {
        /// Risk threshold in (0, 1]; defaults to the configured acceptable risk
        #[arg(long)]
        risk: Option<f64>,
        /// Number of points to emit
        #[arg(long, default_value_t = 100)]
        points: u64,
        /// Output file for the plot data
        #[arg(long)]
        out: PathBuf,
        /// Config file; defaults to $RISKCALC_CONFIG, then ./riskcalc.toml
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the active tolerability matrix
    Matrix {
        /// Config file; defaults to $RISKCALC_CONFIG, then ./riskcalc.toml
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Assess {
            register,
            config,
            format,
        } => cmd_assess(&register, config.as_deref(), format),
        Command::Sif { register, asset } => cmd_sif(&register, &asset),
        Command::Trend { prev, curr, format } => cmd_trend(&prev, &curr, format),
        Command::Simulate {
            register,
            asset,
            threat,
            years,
            seed,
            model,
            format,
        } => cmd_simulate(&register, &asset, &threat, years, seed, model, format),
        Command::Curve {
            risk,
            points,
            out,
            config,
        } => match curve_threshold(risk, config.as_ref()) {
            Ok(threshold) => cmd_curve(threshold, points, &out),
            Err(err) => CommandOutcome {
                exit_code: 1,
                stdout: String::new(),
                stderr: format!("error: {err}\n"),
            },
        },
        Command::Matrix { config } => cmd_matrix(config.as_deref()),
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.exit_code);
}
