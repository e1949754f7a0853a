use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use markowitz_cli::{cmd_cml, cmd_fetch, cmd_frontier, cmd_prices, cmd_report, RunConfig};

/// Mean-variance portfolio reports from daily closing prices.
#[derive(Debug, Parser)]
#[command(name = "markowitz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Download one quote file per symbol into the data directory.
    Fetch,
    /// Consolidate closing prices into the price file.
    Prices,
    /// Risky-asset frontier, MVP, TGP, DEP and eigen-portfolios (results1/).
    Frontier,
    /// Capital market line with a risk-free asset (results2/).
    Cml,
    /// prices, frontier and cml in sequence, plus a SHA-256 manifest.
    Report {
        /// Run fetch first.
        #[arg(long)]
        fetch: bool,
    },
}

#[derive(Debug, Args)]
struct Options {
    /// Symbol list, one per line.
    #[arg(long, global = true, default_value = "stocks.txt")]
    symbols: PathBuf,
    /// Directory of per-symbol quote files.
    #[arg(long, global = true, default_value = "data")]
    data_dir: PathBuf,
    /// Consolidated price file.
    #[arg(long, global = true, default_value = "data/portfolio.txt")]
    prices: PathBuf,
    /// Trading days of history to use.
    #[arg(long, global = true, default_value_t = 250)]
    days: usize,
    /// Points sampled along each curve.
    #[arg(long, global = true, default_value_t = 100)]
    points: usize,
    /// Risk-free rate per period.
    #[arg(long, global = true, default_value_t = 0.0003)]
    risk_free: f64,
    /// Largest target return sampled.
    #[arg(long, global = true, default_value_t = 0.01)]
    rho_max: f64,
    /// Directory receiving results1/, results2/ and manifest.txt.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Shrinkage increment of the DEP search.
    #[arg(long, global = true, default_value_t = 0.01)]
    shrink_step: f64,
    /// Quote URL with a {symbol} placeholder.
    #[arg(long, global = true)]
    url_template: Option<String>,
}

impl Options {
    fn into_config(self, fetch: bool) -> RunConfig {
        RunConfig {
            symbols_file: self.symbols,
            data_dir: self.data_dir,
            prices_file: self.prices,
            trading_days: self.days,
            frontier_points: self.points,
            risk_free_rate: self.risk_free,
            rho_max: self.rho_max,
            output_dir: self.out,
            shrink_step: self.shrink_step,
            url_template: self.url_template,
            fetch,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let fetch = matches!(cli.command, Command::Report { fetch: true });
    let cfg = cli.opts.into_config(fetch);
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Fetch => cmd_fetch(&cfg, &mut out).map(drop),
        Command::Prices => cmd_prices(&cfg, &mut out).map(drop),
        Command::Frontier => cmd_frontier(&cfg, &mut out).map(drop),
        Command::Cml => cmd_cml(&cfg, &mut out).map(drop),
        Command::Report { .. } => cmd_report(&cfg, &mut out).map(drop),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("markowitz: {e}");
            ExitCode::from(e.code)
        }
    }
}
