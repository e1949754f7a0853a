//! Closed-form efficient frontier for N risky assets with short selling allowed.
//!
//! Minimising `wᵀSw` subject to `uᵀw = 1` and `rᵀw = ρ` gives `w(ρ) = f + ρg`, where
//! `f` and `g` depend only on `S⁻¹` and the Gram values
//!
//! ```text
//! a11 = uᵀS⁻¹u,   a12 = rᵀS⁻¹u,   a22 = rᵀS⁻¹r,   d = a11·a22 − a12²
//! ```
//!
//! The frontier variance is the parabola `s²(ρ) = (a11ρ² − 2a12ρ + a22) / d`, whose vertex
//! is the minimum-variance portfolio at `ρ = a12/a11`.

use crate::error::{Error, Result};
use crate::linalg::{dot, Cholesky};
use crate::market_data::MomentEstimates;
use crate::portfolio::{Portfolio, PortfolioLabel};

/// Everything needed to evaluate any point of the risky frontier.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontierModel {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub d: f64,
    /// Frontier weights at zero return.
    pub f: Vec<f64>,
    /// Change in frontier weights per unit of return.
    pub g: Vec<f64>,
    /// `S⁻¹u`.
    pub inv_cov_ones: Vec<f64>,
    /// `S⁻¹r`.
    pub inv_cov_returns: Vec<f64>,
    pub moments: MomentEstimates,
}

impl FrontierModel {
    pub fn symbols(&self) -> &[String] {
        &self.moments.symbols
    }

    /// Return of the frontier vertex.
    pub fn mvp_return(&self) -> f64 {
        self.a12 / self.a11
    }

    /// Variance of an arbitrary weight vector under the model's covariance.
    pub fn variance_of(&self, weights: &[f64]) -> f64 {
        self.moments.covariance.quad_form(weights)
    }

    /// Expected return of an arbitrary weight vector.
    pub fn return_of(&self, weights: &[f64]) -> f64 {
        dot(&self.moments.mean_returns, weights)
    }
}

pub fn build_frontier(moments: &MomentEstimates) -> Result<FrontierModel> {
    let n = moments.assets();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the frontier needs at least 2 assets, got {n}"
        )));
    }
    let chol = Cholesky::factor(&moments.covariance)?;
    let r = &moments.mean_returns;
    let ones = vec![1.0; n];
    let q_u = chol.solve(&ones);
    let q_r = chol.solve(r);

    let a11 = q_u.iter().sum::<f64>();
    let a12 = dot(r, &q_u);
    let a22 = dot(r, &q_r);
    let d = a11 * a22 - a12 * a12;
    if !(d > 1e-12 * a11 * a22) {
        return Err(Error::DegenerateFrontier { d });
    }

    let f = q_u
        .iter()
        .zip(&q_r)
        .map(|(qu, qr)| (a22 * qu - a12 * qr) / d)
        .collect();
    let g = q_u
        .iter()
        .zip(&q_r)
        .map(|(qu, qr)| (a11 * qr - a12 * qu) / d)
        .collect();

    Ok(FrontierModel {
        a11,
        a12,
        a22,
        d,
        f,
        g,
        inv_cov_ones: q_u,
        inv_cov_returns: q_r,
        moments: moments.clone(),
    })
}

/// Frontier risk (standard deviation) at target return `rho`.
pub fn frontier_risk(fm: &FrontierModel, rho: f64) -> f64 {
    let dev = rho - fm.a12 / fm.a11;
    (fm.a11 / fm.d * dev * dev + 1.0 / fm.a11).sqrt()
}

fn weights_at(fm: &FrontierModel, rho: f64) -> Vec<f64> {
    fm.f.iter().zip(&fm.g).map(|(f, g)| f + rho * g).collect()
}

/// Frontier portfolio `f + ρg`.
pub fn frontier_weights(fm: &FrontierModel, rho: f64) -> Portfolio {
    Portfolio {
        label: PortfolioLabel::Frontier(rho),
        weights: weights_at(fm, rho),
        risk_free_weight: None,
        expected_return: rho,
        risk: frontier_risk(fm, rho),
    }
}

/// Minimum-variance portfolio: return `a12/a11`, risk `√(1/a11)`.
pub fn mvp(fm: &FrontierModel) -> Portfolio {
    let rho = fm.mvp_return();
    Portfolio {
        label: PortfolioLabel::Mvp,
        weights: weights_at(fm, rho),
        risk_free_weight: None,
        expected_return: rho,
        risk: (1.0 / fm.a11).sqrt(),
    }
}

/// Tangency portfolio of a line through the origin: return `a22/a12`, risk `√a22/a12`.
///
/// Fails with [`Error::NoTangency`] when `a12` is not positive, i.e. the vertex return
/// is not above zero and no such line touches the upper branch.
pub fn tangency(fm: &FrontierModel) -> Result<Portfolio> {
    if !(fm.a12 > 1e-12 * (fm.a11 * fm.a22).sqrt()) {
        return Err(Error::NoTangency { a12: fm.a12 });
    }
    let rho = fm.a22 / fm.a12;
    Ok(Portfolio {
        label: PortfolioLabel::Tgp,
        weights: weights_at(fm, rho),
        risk_free_weight: None,
        expected_return: rho,
        risk: fm.a22.sqrt() / fm.a12,
    })
}

/// `count` frontier portfolios at `ρ_m = m·rho_max/count`, `m = 1..=count`.
pub fn sample_frontier(fm: &FrontierModel, count: usize, rho_max: f64) -> Result<Vec<Portfolio>> {
    if count == 0 {
        return Err(Error::InvalidArgument("frontier sample count must be ≥ 1".into()));
    }
    if !(rho_max > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "maximum return must be positive, got {rho_max}"
        )));
    }
    Ok((1..=count)
        .map(|m| {
            let rho = if m == count {
                rho_max
            } else {
                m as f64 * rho_max / count as f64
            };
            frontier_weights(fm, rho)
        })
        .collect())
}
