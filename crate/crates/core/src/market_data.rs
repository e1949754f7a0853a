//! Price ingestion, daily returns and moment estimation.
//!
//! Price rows are kept most-recent-first, the order of typical historical-quote
//! exports. Anything meant for plotting reverses them at emission time.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::numfmt::fmt_sig;

/// Closing prices, `rows[t][n]` for day `t` (0 = most recent) and asset `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceTable {
    symbols: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl PriceTable {
    pub fn new(symbols: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("price table has no symbols".into()));
        }
        if rows.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "price table needs at least 2 days, got {}",
                rows.len()
            )));
        }
        for (t, row) in rows.iter().enumerate() {
            if row.len() != symbols.len() {
                return Err(Error::DimensionMismatch {
                    expected: symbols.len(),
                    found: row.len(),
                });
            }
            if let Some(n) = row.iter().position(|p| !(p.is_finite() && *p > 0.0)) {
                return Err(Error::InvalidArgument(format!(
                    "price for {} on row {t} is not positive: {}",
                    symbols[n], row[n]
                )));
            }
        }
        Ok(Self { symbols, rows })
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn days(&self) -> usize {
        self.rows.len()
    }

    pub fn assets(&self) -> usize {
        self.symbols.len()
    }
}

/// Daily simple returns, `rows[t][n]`, same orientation as the source [`PriceTable`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnTable {
    symbols: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ReturnTable {
    pub fn new(symbols: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        for row in &rows {
            if row.len() != symbols.len() {
                return Err(Error::DimensionMismatch {
                    expected: symbols.len(),
                    found: row.len(),
                });
            }
        }
        Ok(Self { symbols, rows })
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn observations(&self) -> usize {
        self.rows.len()
    }
}

/// Mean daily returns and their covariance matrix, labelled by symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimates {
    pub symbols: Vec<String>,
    pub mean_returns: Vec<f64>,
    pub covariance: SymMatrix,
}

impl MomentEstimates {
    pub fn new(symbols: Vec<String>, mean_returns: Vec<f64>, covariance: SymMatrix) -> Result<Self> {
        let n = covariance.order();
        for len in [symbols.len(), mean_returns.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        Ok(Self {
            symbols,
            mean_returns,
            covariance,
        })
    }

    /// Unlabelled constructor, symbols become `A1..AN`.
    pub fn unlabelled(mean_returns: Vec<f64>, covariance: SymMatrix) -> Result<Self> {
        let symbols = (1..=mean_returns.len()).map(|i| format!("A{i}")).collect();
        Self::new(symbols, mean_returns, covariance)
    }

    pub fn assets(&self) -> usize {
        self.mean_returns.len()
    }

    /// Per-asset standard deviations.
    pub fn volatilities(&self) -> Vec<f64> {
        self.covariance.diagonal().iter().map(|v| v.sqrt()).collect()
    }
}

/// Reads a comma-delimited ticker list from the first non-blank line of `path`.
pub fn read_symbol_list(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let symbols = parse_symbol_list(&text);
    if symbols.is_empty() {
        return Err(Error::EmptyList {
            path: path.to_path_buf(),
        });
    }
    Ok(symbols)
}

/// Trims, drops empties and removes repeats (first occurrence wins).
pub fn parse_symbol_list(text: &str) -> Vec<String> {
    let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let mut out: Vec<String> = Vec::new();
    for sym in line.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if !out.iter().any(|s| s == sym) {
            out.push(sym.to_string());
        }
    }
    out
}

/// Path of the per-symbol quote file in `dir`: `dir/SYM`, or `dir/SYM.csv` if only that exists.
pub fn symbol_file(dir: &Path, symbol: &str) -> Option<PathBuf> {
    [dir.join(symbol), dir.join(format!("{symbol}.csv"))]
        .into_iter()
        .find(|p| p.is_file())
}

/// Builds a `days × symbols` table from per-symbol quote files in `dir`.
///
/// Each file has a header row; the `Close` column is used, or the fifth column when no
/// header is named `Close`. Only the first `days` data rows are read.
pub fn extract_prices(dir: &Path, symbols: &[String], days: usize) -> Result<PriceTable> {
    if days < 2 {
        return Err(Error::InvalidArgument(format!(
            "at least 2 trading days are required, got {days}"
        )));
    }
    let mut columns = Vec::with_capacity(symbols.len());
    for symbol in symbols {
        let path = symbol_file(dir, symbol).ok_or_else(|| Error::MissingFile {
            symbol: symbol.clone(),
            dir: dir.to_path_buf(),
        })?;
        columns.push(read_closes(&path, symbol, days)?);
    }
    let rows = (0..days)
        .map(|t| columns.iter().map(|c| c[t]).collect())
        .collect();
    PriceTable::new(symbols.to_vec(), rows)
}

fn read_closes(path: &Path, symbol: &str, days: usize) -> Result<Vec<f64>> {
    let io_err = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let malformed = |line: usize, reason: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(fs::File::open(path).map_err(io_err)?);

    let headers = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .clone();
    let column = headers
        .iter()
        .position(|h| h.eq_ignore_ascii_case("close"))
        .unwrap_or(4);

    let mut closes = Vec::with_capacity(days);
    for record in reader.records() {
        if closes.len() == days {
            break;
        }
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = record
            .get(column)
            .ok_or_else(|| malformed(line, format!("missing column {}", column + 1)))?;
        let price: f64 = field
            .parse()
            .map_err(|_| malformed(line, format!("unparseable close price {field:?}")))?;
        if !(price.is_finite() && price > 0.0) {
            return Err(malformed(line, format!("non-positive close price {field}")));
        }
        closes.push(price);
    }
    if closes.len() < days {
        return Err(Error::InsufficientHistory {
            symbol: symbol.to_string(),
            found: closes.len(),
            needed: days,
        });
    }
    Ok(closes)
}

/// Serialises a price table: header of tickers, one comma-separated row per day,
/// most recent first.
pub fn write_price_table(table: &PriceTable) -> String {
    let mut out = table.symbols().join(",");
    out.push('\n');
    for row in table.rows() {
        let cells: Vec<String> = row.iter().map(|p| fmt_sig(*p)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Parses the consolidated price file produced by [`write_price_table`].
pub fn parse_price_table(text: &str, origin: &Path) -> Result<PriceTable> {
    let malformed = |line: usize, reason: String| Error::MalformedRow {
        path: origin.to_path_buf(),
        line,
        reason,
    };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| malformed(1, "empty price file".into()))?;
    let symbols: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let row = line
            .split(',')
            .map(|cell| {
                let cell = cell.trim();
                cell.parse::<f64>()
                    .ok()
                    .filter(|p| p.is_finite() && *p > 0.0)
                    .ok_or_else(|| malformed(idx + 1, format!("invalid price {cell:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != symbols.len() {
            return Err(malformed(
                idx + 1,
                format!("expected {} prices, found {}", symbols.len(), row.len()),
            ));
        }
        rows.push(row);
    }
    PriceTable::new(symbols, rows).map_err(|e| malformed(0, e.to_string()))
}

pub fn read_price_table(path: &Path) -> Result<PriceTable> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_price_table(&text, path)
}

/// `returns[t][n] = (p[t][n] − p[t+1][n]) / p[t+1][n]`: the move from the older day
/// `t+1` to the newer day `t`.
pub fn compute_returns(prices: &PriceTable) -> ReturnTable {
    let rows = prices
        .rows()
        .windows(2)
        .map(|w| {
            w[0].iter()
                .zip(&w[1])
                .map(|(newer, older)| (newer - older) / older)
                .collect()
        })
        .collect();
    ReturnTable {
        symbols: prices.symbols().to_vec(),
        rows,
    }
}

/// Sample means and sample covariance (divisor `M − 1` over `M` return rows).
pub fn estimate_moments(returns: &ReturnTable) -> Result<MomentEstimates> {
    let m = returns.observations();
    let n = returns.symbols().len();
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "at least 2 return observations are required, got {m}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("return table has no assets".into()));
    }
    let rows = returns.rows();
    let mean: Vec<f64> = (0..n)
        .map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / m as f64)
        .collect();
    let centered: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| r.iter().zip(&mean).map(|(x, mu)| x - mu).collect())
        .collect();
    let covariance = SymMatrix::from_fn(n, |i, j| {
        centered.iter().map(|c| c[i] * c[j]).sum::<f64>() / (m - 1) as f64
    })?;

    for j in 0..n {
        let mean_sq = rows.iter().map(|r| r[j] * r[j]).sum::<f64>() / m as f64;
        if covariance.get(j, j) <= 1e-15 * mean_sq {
            return Err(Error::DegenerateData {
                symbol: returns.symbols()[j].clone(),
            });
        }
    }
    MomentEstimates::new(returns.symbols().to_vec(), mean, covariance)
}
