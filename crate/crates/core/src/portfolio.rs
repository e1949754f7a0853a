use std::fmt;

/// Which construction produced a [`Portfolio`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PortfolioLabel {
    /// Minimum-variance portfolio of the risky frontier.
    Mvp,
    /// Tangency (maximum Sharpe ratio) portfolio.
    Tgp,
    /// Market portfolio: CML point with nothing in the risk-free asset.
    Mp,
    /// CML portfolio at the risk of the risky-frontier MVP.
    Mvp2,
    /// Dominant eigen-portfolio.
    Dep,
    /// Eigen-portfolio of the k-th largest eigenvalue (1-based).
    Eigen(usize),
    /// Frontier portfolio at the given target return.
    Frontier(f64),
    /// Capital-market-line portfolio at the given target return.
    Cml(f64),
}

impl fmt::Display for PortfolioLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Mvp => f.write_str("MVP"),
            Self::Tgp => f.write_str("TGP"),
            Self::Mp => f.write_str("MP"),
            Self::Mvp2 => f.write_str("MVP2"),
            Self::Dep => f.write_str("DEP"),
            Self::Eigen(k) => write!(f, "EIGEN{k}"),
            Self::Frontier(rho) => write!(f, "FRONTIER({rho})"),
            Self::Cml(rho) => write!(f, "CML({rho})"),
        }
    }
}

/// A set of asset weights with its expected daily return and risk.
#[derive(Debug, Clone, PartialEq)]
pub struct Portfolio {
    pub label: PortfolioLabel,
    /// Risky-asset weights, in the symbol order of the moments they came from.
    pub weights: Vec<f64>,
    /// Weight held in the risk-free asset, when one is part of the model.
    pub risk_free_weight: Option<f64>,
    pub expected_return: f64,
    /// Standard deviation of the daily return.
    pub risk: f64,
}

impl Portfolio {
    /// Sum of all weights, including the risk-free holding.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum::<f64>() + self.risk_free_weight.unwrap_or(0.0)
    }

    /// Return per unit of risk, `ρ / s`.
    pub fn sharpe(&self) -> f64 {
        self.expected_return / self.risk
    }
}
