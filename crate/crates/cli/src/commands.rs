//! The five pipeline stages. Each writes its human-readable output to `out` and
//! returns a [`CmdError`] carrying the process exit code on failure.
//!
//! Exit codes: 1 fetch failure, 2 bad input, 3 insufficient price history,
//! 4 degenerate mathematics, 5 risk-free rate incompatible with the frontier.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use markowitz::market_data::{read_price_table, write_price_table};
use markowitz::{extract_prices, read_symbol_list, Error, PriceTable};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::fetch::fetch_raw;
use crate::report::{analyze_cml, analyze_risky, moments_from_prices, CsvTable};

pub const EXIT_FETCH: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_HISTORY: u8 = 3;
pub const EXIT_DEGENERATE: u8 = 4;
pub const EXIT_RISK_FREE: u8 = 5;

pub const MANIFEST_FILE: &str = "manifest.txt";

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CmdError {
    pub code: u8,
    pub message: String,
}

impl CmdError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InsufficientHistory { .. } => EXIT_HISTORY,
            Error::NotPositiveDefinite { .. }
            | Error::NoConvergence { .. }
            | Error::DegenerateData { .. }
            | Error::DegenerateFrontier { .. }
            | Error::NoTangency { .. }
            | Error::NoDepFound => EXIT_DEGENERATE,
            Error::RiskFreeAboveMvpReturn { .. } | Error::NegativeExcessReturn { .. } => {
                EXIT_RISK_FREE
            }
            _ => EXIT_INPUT,
        };
        Self::new(code, e.to_string())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CmdError {
    CmdError::new(EXIT_INPUT, format!("cannot write {}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CmdError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CmdError::new(EXIT_INPUT, format!("cannot write output: {e}")))
}

fn validated(cfg: &RunConfig) -> Result<(), CmdError> {
    cfg.validate().map_err(|m| CmdError::new(EXIT_INPUT, m))
}

fn write_tables(dir: &Path, tables: &[(&str, CsvTable)]) -> Result<Vec<PathBuf>, CmdError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    tables
        .iter()
        .map(|(name, table)| {
            let path = dir.join(name);
            fs::write(&path, table.to_csv()).map_err(|e| io_error(&path, e))?;
            Ok(path)
        })
        .collect()
}

fn load_prices(cfg: &RunConfig) -> Result<PriceTable, CmdError> {
    read_price_table(&cfg.prices_file).map_err(CmdError::from)
}

/// Downloads every listed symbol into `data_dir`. Fails only when nothing was fetched.
pub fn cmd_fetch(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>, CmdError> {
    let symbols = read_symbol_list(&cfg.symbols_file)?;
    let template = cfg.url_template.as_deref().ok_or_else(|| {
        CmdError::new(EXIT_INPUT, "fetch needs --url-template containing {symbol}")
    })?;
    let report = fetch_raw(&symbols, template, &cfg.data_dir)
        .map_err(|e| CmdError::new(EXIT_INPUT, e.to_string()))?;
    for (symbol, path) in &report.written {
        emit(out, &format!("fetched {symbol} -> {}\n", path.display()))?;
    }
    for (symbol, why) in &report.failed {
        emit(out, &format!("warning: skipped {symbol}: {why}\n"))?;
    }
    if report.written.is_empty() {
        return Err(CmdError::new(EXIT_FETCH, "no symbol could be fetched"));
    }
    Ok(report.written.into_iter().map(|(_, p)| p).collect())
}

/// Consolidates the closing prices of every listed symbol into `prices_file`.
pub fn cmd_prices(cfg: &RunConfig, out: &mut dyn Write) -> Result<PathBuf, CmdError> {
    validated(cfg)?;
    let symbols = read_symbol_list(&cfg.symbols_file)?;
    let table = extract_prices(&cfg.data_dir, &symbols, cfg.trading_days)?;
    let path = cfg.prices_file.clone();
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| io_error(parent, e))?;
    }
    fs::write(&path, write_price_table(&table)).map_err(|e| io_error(&path, e))?;
    emit(
        out,
        &format!(
            "wrote {} days x {} symbols to {}\n",
            table.days(),
            table.assets(),
            path.display()
        ),
    )?;
    Ok(path)
}

/// Risky-asset analysis into `output_dir/results1`.
pub fn cmd_frontier(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>, CmdError> {
    validated(cfg)?;
    let prices = load_prices(cfg)?;
    let report = analyze_risky(&prices, cfg)?;
    let files = write_tables(&cfg.results1_dir(), &report.tables())?;
    emit(out, &report.summary())?;
    Ok(files)
}

/// Analysis with the risk-free asset into `output_dir/results2`.
pub fn cmd_cml(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>, CmdError> {
    validated(cfg)?;
    let prices = load_prices(cfg)?;
    let (_, moments) = moments_from_prices(&prices)?;
    let report = analyze_cml(&moments, cfg)?;
    let files = write_tables(&cfg.results2_dir(), &report.tables(&moments.symbols))?;
    emit(out, &report.summary())?;
    Ok(files)
}

/// Runs prices, frontier and cml in order (preceded by fetch when `cfg.fetch` is set),
/// stopping at the first failing stage, then writes a SHA-256 manifest of every output.
pub fn cmd_report(cfg: &RunConfig, out: &mut dyn Write) -> Result<PathBuf, CmdError> {
    validated(cfg)?;
    let mut files = Vec::new();
    if cfg.fetch {
        cmd_fetch(cfg, out)?;
    }
    files.push(cmd_prices(cfg, out)?);
    files.extend(cmd_frontier(cfg, out)?);
    files.extend(cmd_cml(cfg, out)?);
    let manifest = write_manifest(&cfg.output_dir, &files)?;
    emit(out, &format!("manifest: {} files -> {}\n", files.len(), manifest.display()))?;
    Ok(manifest)
}

/// `sha256  path` per file, sorted by path. Paths under `root` are written relative to it.
pub fn write_manifest(root: &Path, files: &[PathBuf]) -> Result<PathBuf, CmdError> {
    let mut lines = Vec::with_capacity(files.len());
    for file in files {
        let bytes = fs::read(file).map_err(|e| io_error(file, e))?;
        let digest = hex::encode(Sha256::digest(&bytes));
        let shown = file.strip_prefix(root).unwrap_or(file);
        lines.push(format!("{digest}  {}", shown.display()));
    }
    lines.sort_by(|a, b| a[66..].cmp(&b[66..]));
    fs::create_dir_all(root).map_err(|e| io_error(root, e))?;
    let path = root.join(MANIFEST_FILE);
    let mut text = lines.join("\n");
    text.push('\n');
    fs::write(&path, text).map_err(|e| io_error(&path, e))?;
    Ok(path)
}
