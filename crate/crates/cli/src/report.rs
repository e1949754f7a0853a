//! Analysis results and their plot-ready CSV tables.
//!
//! Every number is written with 12 significant digits. Time series are emitted oldest
//! day first; curves in ascending target return.

use std::fmt::Write as _;

use markowitz::numfmt::fmt_sig;
use markowitz::{
    build_cml, build_eigen_portfolios, build_frontier, compute_returns, estimate_moments, find_dep,
    frontier_risk, mvp, sample_cml, sample_frontier, tangency, CmlModel, EigenBasis, Error,
    MomentEstimates, Portfolio, PriceTable, ReturnTable, ShrinkageResult,
};

use crate::config::RunConfig;

/// Column name of the risk-free holding.
pub const RISK_FREE_COLUMN: &str = "RFA";

/// A header plus rows of already-formatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_numbers(&mut self, values: impl IntoIterator<Item = f64>) {
        self.push(values.into_iter().map(fmt_sig).collect());
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty table")?;
        let mut table = Self::new(header.split(','));
        for (i, line) in lines.enumerate() {
            let row: Vec<String> = line.split(',').map(str::to_string).collect();
            if row.len() != table.header.len() {
                return Err(format!("row {} has {} cells", i + 2, row.len()));
            }
            table.rows.push(row);
        }
        Ok(table)
    }

    /// Index of a header column.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

/// Results of the risky-asset analysis.
#[derive(Debug, Clone)]
pub struct RiskyReport {
    pub prices: PriceTable,
    pub returns: ReturnTable,
    pub moments: MomentEstimates,
    pub frontier: Vec<Portfolio>,
    pub mvp: Portfolio,
    pub tgp: Portfolio,
    pub dep: ShrinkageResult,
    pub eigen: EigenBasis,
}

/// Results of the analysis with a risk-free asset.
#[derive(Debug, Clone)]
pub struct CmlReport {
    pub model: CmlModel,
    pub samples: Vec<Portfolio>,
    /// Risky-frontier risk at each sampled return, for drawing both curves together.
    pub frontier_risks: Vec<f64>,
}

/// Everything one `report` run produces.
#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub risky: RiskyReport,
    pub cml: CmlReport,
}

pub fn moments_from_prices(prices: &PriceTable) -> Result<(ReturnTable, MomentEstimates), Error> {
    let returns = compute_returns(prices);
    let moments = estimate_moments(&returns)?;
    Ok((returns, moments))
}

pub fn analyze_risky(prices: &PriceTable, cfg: &RunConfig) -> Result<RiskyReport, Error> {
    let (returns, moments) = moments_from_prices(prices)?;
    let fm = build_frontier(&moments)?;
    Ok(RiskyReport {
        frontier: sample_frontier(&fm, cfg.frontier_points, cfg.rho_max)?,
        mvp: mvp(&fm),
        tgp: tangency(&fm)?,
        dep: find_dep(&moments, cfg.shrink_step)?,
        eigen: build_eigen_portfolios(&moments)?,
        prices: prices.clone(),
        returns,
        moments,
    })
}

pub fn analyze_cml(moments: &MomentEstimates, cfg: &RunConfig) -> Result<CmlReport, Error> {
    let fm = build_frontier(moments)?;
    let model = build_cml(&fm, cfg.risk_free_rate)?;
    let samples = sample_cml(&model, cfg.frontier_points, cfg.rho_max)?;
    let frontier_risks = samples
        .iter()
        .map(|p| frontier_risk(&fm, p.expected_return))
        .collect();
    Ok(CmlReport {
        model,
        samples,
        frontier_risks,
    })
}

fn series_table(symbols: &[String], rows: &[Vec<f64>]) -> CsvTable {
    let mut t = CsvTable::new(std::iter::once("day".to_string()).chain(symbols.iter().cloned()));
    for (day, row) in rows.iter().rev().enumerate() {
        t.push_numbers(std::iter::once((day + 1) as f64).chain(row.iter().copied()));
    }
    t
}

fn weight_header(first: &[&str], symbols: &[String], risk_free: bool) -> Vec<String> {
    let mut h: Vec<String> = first.iter().map(|s| s.to_string()).collect();
    h.extend(symbols.iter().cloned());
    if risk_free {
        h.push(RISK_FREE_COLUMN.into());
    }
    h
}

/// `label, return, risk, sharpe, weights…[, risk-free weight]`.
fn portfolio_row(p: &Portfolio) -> Vec<String> {
    let mut row = vec![p.label.to_string()];
    row.extend([p.expected_return, p.risk, p.sharpe()].map(fmt_sig));
    row.extend(p.weights.iter().map(|w| fmt_sig(*w)));
    if let Some(rf) = p.risk_free_weight {
        row.push(fmt_sig(rf));
    }
    row
}

impl RiskyReport {
    pub fn symbols(&self) -> &[String] {
        self.prices.symbols()
    }

    /// `(file name, table)` pairs for the `results1` directory.
    pub fn tables(&self) -> Vec<(&'static str, CsvTable)> {
        let symbols = self.symbols();

        let mut curve = CsvTable::new(["rho", "risk"]);
        let mut weights = CsvTable::new(weight_header(&["rho", "risk"], symbols, false));
        for p in &self.frontier {
            curve.push_numbers([p.expected_return, p.risk]);
            weights.push_numbers([p.expected_return, p.risk].into_iter().chain(p.weights.iter().copied()));
        }

        let mut named = CsvTable::new(weight_header(
            &["label", "gamma", "return", "risk", "sharpe"],
            symbols,
            false,
        ));
        for (p, gamma) in [
            (&self.mvp, String::new()),
            (&self.tgp, String::new()),
            (&self.dep.dep, fmt_sig(self.dep.gamma)),
        ] {
            let mut row = portfolio_row(p);
            row.insert(1, gamma);
            named.push(row);
        }

        let mut eigen = CsvTable::new(["rank", "eigenvalue", "alpha", "return", "risk"]);
        for e in &self.eigen.portfolios {
            eigen.push_numbers([e.rank as f64, e.eigenvalue, e.alpha, e.expected_return, e.risk]);
        }

        let mut stats = CsvTable::new(["symbol", "mean_return", "volatility"]);
        for ((s, r), v) in symbols
            .iter()
            .zip(&self.moments.mean_returns)
            .zip(self.moments.volatilities())
        {
            stats.push(vec![s.clone(), fmt_sig(*r), fmt_sig(v)]);
        }

        vec![
            ("asset_prices.csv", series_table(symbols, self.prices.rows())),
            ("asset_returns.csv", series_table(symbols, self.returns.rows())),
            ("asset_stats.csv", stats),
            ("frontier_curve.csv", curve),
            ("frontier_weights.csv", weights),
            ("portfolios.csv", named),
            ("eigen_table.csv", eigen),
        ]
    }

    pub fn summary(&self) -> String {
        let mut out = String::from("risky-asset frontier\n");
        for (name, p) in [("MVP", &self.mvp), ("TGP", &self.tgp), ("DEP", &self.dep.dep)] {
            let _ = writeln!(
                out,
                "  {name:<4} return {:>16}  risk {:>16}  sharpe {:>16}",
                fmt_sig(p.expected_return),
                fmt_sig(p.risk),
                fmt_sig(p.sharpe())
            );
        }
        let _ = writeln!(out, "  DEP shrinkage gamma {}", fmt_sig(self.dep.gamma));
        if !self.eigen.excluded.is_empty() {
            let _ = writeln!(
                out,
                "  eigen-portfolios with zero net weight skipped: {:?}",
                self.eigen.excluded
            );
        }
        out
    }
}

impl CmlReport {
    pub fn tables(&self, symbols: &[String]) -> Vec<(&'static str, CsvTable)> {
        let mut curve = CsvTable::new(["rho", "risk", "frontier_risk"]);
        let mut weights = CsvTable::new(weight_header(&["rho", "risk"], symbols, true));
        for (p, fr) in self.samples.iter().zip(&self.frontier_risks) {
            curve.push_numbers([p.expected_return, p.risk, *fr]);
            weights.push_numbers(
                [p.expected_return, p.risk]
                    .into_iter()
                    .chain(p.weights.iter().copied())
                    .chain(p.risk_free_weight),
            );
        }
        let mut named = CsvTable::new(weight_header(&["label", "return", "risk", "sharpe"], symbols, true));
        named.push(portfolio_row(&self.model.market));
        named.push(portfolio_row(&self.model.mvp2));
        vec![
            ("cml_curve.csv", curve),
            ("cml_weights.csv", weights),
            ("portfolios.csv", named),
        ]
    }

    pub fn summary(&self) -> String {
        let m = &self.model;
        let mut out = String::from("capital market line\n");
        let _ = writeln!(
            out,
            "  risk-free rate {}  slope sqrt(b) {}",
            fmt_sig(m.risk_free_rate),
            fmt_sig(m.slope())
        );
        for (name, p) in [("MP", &m.market), ("MVP2", &m.mvp2)] {
            let _ = writeln!(
                out,
                "  {name:<4} return {:>16}  risk {:>16}  sharpe {:>16}  risk-free weight {}",
                fmt_sig(p.expected_return),
                fmt_sig(p.risk),
                fmt_sig(p.sharpe()),
                fmt_sig(p.risk_free_weight.unwrap_or(0.0))
            );
        }
        out.push_str("  risk-free weight = 1 - (rho - rf)(a12 - a11 rf)/b\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let mut t = CsvTable::new(["a", "b"]);
        t.push_numbers([1.0, 1.0 / 3.0]);
        t.push(vec!["x".into(), String::new()]);
        let text = t.to_csv();
        assert_eq!(text, "a,b\n1,0.333333333333\nx,\n");
        let back = CsvTable::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_csv(), text);
        assert!(CsvTable::parse("a,b\n1\n").is_err());
    }

    #[test]
    fn series_are_chronological() {
        let t = series_table(&["X".into()], &[vec![3.0], vec![2.0], vec![1.0]]);
        assert_eq!(t.to_csv(), "day,X\n1,1\n2,2\n3,3\n");
    }
}
