//! Template-driven download of per-symbol quote files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

pub const SYMBOL_PLACEHOLDER: &str = "{symbol}";

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("url template {0:?} has no {{symbol}} placeholder")]
    BadTemplate(String),

    #[error("cannot create {}: {source}", path.display())]
    OutputDir {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Why one symbol could not be downloaded.
#[derive(Debug, thiserror::Error)]
pub enum SymbolFailure {
    #[error("HTTP status {0}")]
    HttpStatus(u16),
    #[error("request failed: {0}")]
    Transport(String),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Per-symbol outcome of [`fetch_raw`], both lists sorted by symbol.
#[derive(Debug, Default)]
pub struct FetchReport {
    pub written: Vec<(String, PathBuf)>,
    pub failed: Vec<(String, SymbolFailure)>,
}

pub fn symbol_url(template: &str, symbol: &str) -> String {
    template.replace(SYMBOL_PLACEHOLDER, symbol)
}

/// Downloads `template` (with `{symbol}` substituted) for every symbol into
/// `out_dir/<symbol>`, replacing existing files. A failed symbol is recorded and the
/// remaining symbols are still attempted.
pub fn fetch_raw(
    symbols: &[String],
    template: &str,
    out_dir: &Path,
) -> Result<FetchReport, FetchError> {
    if !template.contains(SYMBOL_PLACEHOLDER) {
        return Err(FetchError::BadTemplate(template.to_string()));
    }
    fs::create_dir_all(out_dir).map_err(|source| FetchError::OutputDir {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs(30)))
        .http_status_as_error(false)
        .build()
        .into();

    let mut report = FetchReport::default();
    for symbol in symbols {
        match fetch_one(&agent, &symbol_url(template, symbol), &out_dir.join(symbol)) {
            Ok(path) => report.written.push((symbol.clone(), path)),
            Err(e) => report.failed.push((symbol.clone(), e)),
        }
    }
    report.written.sort_by(|a, b| a.0.cmp(&b.0));
    report.failed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(report)
}

fn fetch_one(agent: &ureq::Agent, url: &str, dest: &Path) -> Result<PathBuf, SymbolFailure> {
    let mut response = agent
        .get(url)
        .call()
        .map_err(|e| SymbolFailure::Transport(e.to_string()))?;
    let status = response.status().as_u16();
    if !(200..300).contains(&status) {
        return Err(SymbolFailure::HttpStatus(status));
    }
    let body = response
        .body_mut()
        .read_to_string()
        .map_err(|e| SymbolFailure::Transport(e.to_string()))?;

    // write-then-rename so a reader never sees a partial file
    let file_name = dest.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dest.with_file_name(format!(".{file_name}.part"));
    let write_err = |source| SymbolFailure::Write {
        path: dest.to_path_buf(),
        source,
    };
    fs::write(&tmp, body).map_err(write_err)?;
    fs::rename(&tmp, dest).map_err(write_err)?;
    Ok(dest.to_path_buf())
}
