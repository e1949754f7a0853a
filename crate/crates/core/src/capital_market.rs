//! Frontier with a risk-free asset: the capital market line (CML).
//!
//! With a risk-free rate `r_f`, optimal risky weights are
//! `w(ρ) = (ρ − r_f)/b · S⁻¹(r − r_f u)` with `b = a11·r_f² − 2a12·r_f + a22`, the
//! remainder `1 − uᵀw(ρ)` sits in the risk-free asset, and the risk is `(ρ − r_f)/√b`.

use crate::error::{Error, Result};
use crate::frontier::FrontierModel;
use crate::portfolio::{Portfolio, PortfolioLabel};

#[derive(Debug, Clone, PartialEq)]
pub struct CmlModel {
    pub risk_free_rate: f64,
    pub b: f64,
    /// `S⁻¹(r − r_f u)`.
    pub excess_direction: Vec<f64>,
    pub base: FrontierModel,
    /// Tangency of the CML with the risky frontier; holds no risk-free asset.
    pub market: Portfolio,
    /// CML portfolio with the risk of the risky-frontier minimum-variance portfolio.
    pub mvp2: Portfolio,
}

impl CmlModel {
    /// `a12 − a11·r_f`, the net risky weight per unit of `(ρ − r_f)/b`.
    fn net_risky(&self) -> f64 {
        self.base.a12 - self.base.a11 * self.risk_free_rate
    }

    /// Slope `√b` of the line `ρ(s) = r_f + √b·s`.
    pub fn slope(&self) -> f64 {
        self.b.sqrt()
    }
}

/// Requires `r_f < a12/a11`; otherwise the tangency would sit on the lower branch.
pub fn build_cml(fm: &FrontierModel, risk_free_rate: f64) -> Result<CmlModel> {
    let (a11, a12, a22) = (fm.a11, fm.a12, fm.a22);
    let rf = risk_free_rate;
    if !rf.is_finite() {
        return Err(Error::InvalidArgument(format!("risk-free rate {rf} is not finite")));
    }
    let denom = a12 - a11 * rf;
    if !(denom > 1e-12) {
        return Err(Error::RiskFreeAboveMvpReturn {
            risk_free: rf,
            mvp_return: fm.mvp_return(),
        });
    }
    let b = a11 * rf * rf - 2.0 * a12 * rf + a22;
    let excess_direction: Vec<f64> = fm
        .inv_cov_returns
        .iter()
        .zip(&fm.inv_cov_ones)
        .map(|(qr, qu)| qr - rf * qu)
        .collect();

    let market = Portfolio {
        label: PortfolioLabel::Mp,
        weights: excess_direction.iter().map(|h| h / denom).collect(),
        risk_free_weight: Some(0.0),
        expected_return: (a22 - a12 * rf) / denom,
        risk: b.sqrt() / denom,
    };

    let mut cm = CmlModel {
        risk_free_rate: rf,
        b,
        excess_direction,
        base: fm.clone(),
        market: market.clone(),
        mvp2: market,
    };
    let mvp_risk = (1.0 / a11).sqrt();
    let mut mvp2 = cml_weights(&cm, rf + b.sqrt() * mvp_risk);
    mvp2.label = PortfolioLabel::Mvp2;
    mvp2.risk = mvp_risk;
    cm.mvp2 = mvp2;
    Ok(cm)
}

/// CML portfolio at target return `rho`, including its risk-free holding.
pub fn cml_weights(cm: &CmlModel, rho: f64) -> Portfolio {
    let excess = rho - cm.risk_free_rate;
    let scale = excess / cm.b;
    Portfolio {
        label: PortfolioLabel::Cml(rho),
        weights: cm.excess_direction.iter().map(|h| scale * h).collect(),
        risk_free_weight: Some(1.0 - excess * cm.net_risky() / cm.b),
        expected_return: rho,
        risk: excess.abs() / cm.slope(),
    }
}

/// `(ρ − r_f)/√b`, defined for `ρ ≥ r_f`.
pub fn cml_risk(cm: &CmlModel, rho: f64) -> Result<f64> {
    if rho < cm.risk_free_rate {
        return Err(Error::NegativeExcessReturn {
            rho,
            risk_free: cm.risk_free_rate,
        });
    }
    Ok((rho - cm.risk_free_rate) / cm.slope())
}

/// `count` CML portfolios with returns evenly spaced on `[r_f, rho_max]`.
pub fn sample_cml(cm: &CmlModel, count: usize, rho_max: f64) -> Result<Vec<Portfolio>> {
    if count < 2 {
        return Err(Error::InvalidArgument(format!(
            "CML sample count must be ≥ 2, got {count}"
        )));
    }
    let rf = cm.risk_free_rate;
    if !(rho_max > rf) {
        return Err(Error::InvalidArgument(format!(
            "maximum return {rho_max} must exceed the risk-free rate {rf}"
        )));
    }
    let span = rho_max - rf;
    Ok((0..count)
        .map(|m| {
            let rho = if m + 1 == count {
                rho_max
            } else {
                rf + span * m as f64 / (count - 1) as f64
            };
            cml_weights(cm, rho)
        })
        .collect())
}
