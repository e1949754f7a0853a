//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every method returns a JSON string so the page needs no generated type glue.

use std::path::Path;

use markowitz::eigen::dominant_eigen_portfolio;
use markowitz::market_data::parse_price_table;
use markowitz::{
    build_cml, build_eigen_portfolios, build_frontier, compute_returns, estimate_moments,
    frontier_risk, frontier_weights, mvp, sample_cml, sample_frontier, tangency, FrontierModel,
    MomentEstimates, Portfolio,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const FIXTURE: &str = include_str!("../../../fixtures/portfolio.txt");

fn portfolio_json(p: &Portfolio) -> Value {
    json!({
        "label": p.label.to_string(),
        "return": p.expected_return,
        "risk": p.risk,
        "sharpe": p.sharpe(),
        "weights": p.weights,
        "riskFree": p.risk_free_weight,
    })
}

/// Moments and frontier of one price table.
#[wasm_bindgen]
pub struct Explorer {
    moments: MomentEstimates,
    frontier: FrontierModel,
}

#[wasm_bindgen]
impl Explorer {
    /// Explorer over the bundled ten-stock sample.
    #[wasm_bindgen(js_name = fromFixture)]
    pub fn from_fixture() -> Result<Explorer, String> {
        Self::from_prices_csv(FIXTURE)
    }

    /// Explorer over pasted prices: a ticker header, then one row per day, newest first.
    #[wasm_bindgen(js_name = fromPricesCsv)]
    pub fn from_prices_csv(text: &str) -> Result<Explorer, String> {
        let prices = parse_price_table(text, Path::new("pasted prices")).map_err(|e| e.to_string())?;
        let moments = estimate_moments(&compute_returns(&prices)).map_err(|e| e.to_string())?;
        let frontier = build_frontier(&moments).map_err(|e| e.to_string())?;
        Ok(Explorer { moments, frontier })
    }

    pub fn symbols(&self) -> String {
        json!(self.moments.symbols).to_string()
    }

    /// Sampled frontier up to `rho_max` plus MVP, TGP (null when absent) and the
    /// frontier portfolio at `rho`.
    pub fn frontier(&self, points: usize, rho_max: f64, rho: f64) -> Result<String, String> {
        let fm = &self.frontier;
        let curve: Vec<[f64; 2]> = sample_frontier(fm, points, rho_max)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|p| [p.risk, p.expected_return])
            .collect();
        let tgp = tangency(fm).ok().map(|p| portfolio_json(&p));
        Ok(json!({
            "curve": curve,
            "mvp": portfolio_json(&mvp(fm)),
            "tgp": tgp,
            "selected": portfolio_json(&frontier_weights(fm, rho)),
        })
        .to_string())
    }

    /// Capital market line for risk-free rate `rf`, with the risky frontier over the same returns.
    pub fn cml(&self, rf: f64, points: usize, rho_max: f64) -> Result<String, String> {
        let cm = build_cml(&self.frontier, rf).map_err(|e| e.to_string())?;
        let samples = sample_cml(&cm, points, rho_max).map_err(|e| e.to_string())?;
        let line: Vec<[f64; 2]> = samples.iter().map(|p| [p.risk, p.expected_return]).collect();
        let curve: Vec<[f64; 2]> = samples
            .iter()
            .map(|p| [frontier_risk(&self.frontier, p.expected_return), p.expected_return])
            .collect();
        Ok(json!({
            "line": line,
            "curve": curve,
            "slope": cm.slope(),
            "market": portfolio_json(&cm.market),
            "mvp2": portfolio_json(&cm.mvp2),
        })
        .to_string())
    }

    /// Dominant eigen-portfolio of the covariance shrunk toward its diagonal by `gamma`,
    /// and the unshrunk eigen-portfolio table.
    pub fn eigen(&self, gamma: f64) -> Result<String, String> {
        let (_, weights) = dominant_eigen_portfolio(&self.moments, gamma).map_err(|e| e.to_string())?;
        let variance = self.moments.covariance.quad_form(&weights);
        let ret: f64 = weights.iter().zip(&self.moments.mean_returns).map(|(w, r)| w * r).sum();
        let basis = build_eigen_portfolios(&self.moments).map_err(|e| e.to_string())?;
        let table: Vec<Value> = basis
            .portfolios
            .iter()
            .map(|p| json!({"rank": p.rank, "eigenvalue": p.eigenvalue, "return": p.expected_return, "risk": p.risk}))
            .collect();
        Ok(json!({
            "gamma": gamma,
            "weights": weights,
            "return": ret,
            "risk": variance.sqrt(),
            "longOnly": weights.iter().all(|w| *w > 0.0),
            "eigen": table,
        })
        .to_string())
    }
}
