//! Mean-variance portfolio analysis from daily closing prices.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] dense symmetric kernels (Cholesky solve/inverse, Jacobi eigensolver),
//! * [`market_data`] price ingestion, daily returns and moment estimation,
//! * [`frontier`] the closed-form risky-asset frontier, MVP and tangency portfolio,
//! * [`eigen`] correlation eigen-portfolios, covariance shrinkage and the dominant
//!   eigen-portfolio search,
//! * [`capital_market`] the capital market line and market portfolio for a risk-free rate.
//!
//! All rates are per trading day; nothing is annualised.

pub mod capital_market;
pub mod eigen;
mod error;
pub mod frontier;
pub mod linalg;
pub mod market_data;
pub mod numfmt;
pub mod portfolio;

pub use capital_market::{build_cml, cml_risk, cml_weights, sample_cml, CmlModel};
pub use eigen::{
    build_eigen_portfolios, correlation_from_covariance, find_dep, shrink_covariance, EigenBasis,
    EigenPortfolio, ShrinkageResult,
};
pub use error::{Error, Result};
pub use frontier::{
    build_frontier, frontier_risk, frontier_weights, mvp, sample_frontier, tangency, FrontierModel,
};
pub use linalg::{spd_inverse, spd_solve, sym_eigen, EigenDecomposition, SymMatrix};
pub use market_data::{
    compute_returns, estimate_moments, extract_prices, read_symbol_list, MomentEstimates,
    PriceTable, ReturnTable,
};
pub use portfolio::{Portfolio, PortfolioLabel};
