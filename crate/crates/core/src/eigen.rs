//! Eigen-portfolios of the correlation matrix and the dominant eigen-portfolio search.
//!
//! With `Ω = diag(√s11, …)` and `C = Ω⁻¹SΩ⁻¹ = VΛVᵀ`, the n-th eigen-portfolio is
//! `ψ = ξ / uᵀξ` where `ξ = Ω⁻¹v⁽ⁿ⁾`. Distinct eigen-portfolios have zero covariance
//! under `S` and `ψᵀSψ = λ / α²` with `α = uᵀξ`.

use crate::error::{Error, Result};
use crate::linalg::{dot, sym_eigen, SymMatrix};
use crate::market_data::MomentEstimates;
use crate::portfolio::{Portfolio, PortfolioLabel};

/// Eigenvalues closer than this (relative to the largest) are treated as tied.
pub const EIGENVALUE_TIE_TOLERANCE: f64 = 1e-10;

/// `|uᵀξ|` below this multiple of `‖ξ‖₁` makes the unit-wealth normalisation singular.
pub const ALPHA_TOLERANCE: f64 = 1e-10;

/// Default shrinkage increment of the DEP search.
pub const DEFAULT_SHRINK_STEP: f64 = 0.01;

/// Correlation matrix `Ω⁻¹ S Ω⁻¹`.
pub fn correlation_from_covariance(cov: &SymMatrix) -> Result<SymMatrix> {
    let vols = positive_vols(cov, None)?;
    SymMatrix::from_fn(cov.order(), |i, j| {
        if i == j {
            1.0
        } else {
            cov.get(i, j) / (vols[i] * vols[j])
        }
    })
}

fn positive_vols(cov: &SymMatrix, symbols: Option<&[String]>) -> Result<Vec<f64>> {
    cov.diagonal()
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            if v > 0.0 && v.is_finite() {
                Ok(v.sqrt())
            } else {
                let symbol = symbols.map_or_else(|| format!("#{}", i + 1), |s| s[i].clone());
                Err(Error::DegenerateData { symbol })
            }
        })
        .collect()
}

/// One normalised eigen-portfolio.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPortfolio {
    /// 1-based rank of the eigenvalue, largest first.
    pub rank: usize,
    pub eigenvalue: f64,
    /// `uᵀξ`, with `ξ` oriented so that `rᵀξ ≥ 0`.
    pub alpha: f64,
    /// `ψ = ξ / α`, sums to one.
    pub weights: Vec<f64>,
    pub expected_return: f64,
    pub risk: f64,
}

impl EigenPortfolio {
    pub fn to_portfolio(&self) -> Portfolio {
        Portfolio {
            label: PortfolioLabel::Eigen(self.rank),
            weights: self.weights.clone(),
            risk_free_weight: None,
            expected_return: self.expected_return,
            risk: self.risk,
        }
    }
}

/// All eigen-portfolios of a moment estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasis {
    /// Correlation eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Eigen-portfolios in eigenvalue order, minus any listed in `excluded`.
    pub portfolios: Vec<EigenPortfolio>,
    /// Ranks whose eigenvector has (numerically) zero net weight and cannot be normalised.
    pub excluded: Vec<usize>,
}

/// Orients `xi` so its expected return is non-negative (largest-magnitude entry positive
/// when the return is zero), then normalises to unit total weight.
fn normalise(xi: &mut [f64], returns: &[f64]) -> Option<(f64, Vec<f64>)> {
    let alpha: f64 = xi.iter().sum();
    let l1: f64 = xi.iter().map(|x| x.abs()).sum();
    if alpha.abs() < ALPHA_TOLERANCE * l1 {
        return None;
    }
    let raw_return = dot(returns, xi) / alpha;
    let flip = if raw_return.abs() <= 1e-14 {
        let big = xi
            .iter()
            .copied()
            .fold(0.0_f64, |b, x| if x.abs() > b.abs() { x } else { b });
        big < 0.0
    } else {
        dot(returns, xi) < 0.0
    };
    if flip {
        xi.iter_mut().for_each(|x| *x = -*x);
    }
    let alpha: f64 = xi.iter().sum();
    Some((alpha, xi.iter().map(|x| x / alpha).collect()))
}

pub fn build_eigen_portfolios(moments: &MomentEstimates) -> Result<EigenBasis> {
    let cov = &moments.covariance;
    let vols = positive_vols(cov, Some(&moments.symbols))?;
    let corr = correlation_from_covariance(cov)?;
    let eig = sym_eigen(&corr)?;

    let mut portfolios = Vec::new();
    let mut excluded = Vec::new();
    for (k, (lambda, v)) in eig.eigenvalues.iter().zip(&eig.eigenvectors).enumerate() {
        let mut xi: Vec<f64> = v.iter().zip(&vols).map(|(x, s)| x / s).collect();
        match normalise(&mut xi, &moments.mean_returns) {
            Some((alpha, weights)) => portfolios.push(EigenPortfolio {
                rank: k + 1,
                eigenvalue: *lambda,
                alpha,
                expected_return: dot(&moments.mean_returns, &weights),
                risk: cov.quad_form(&weights).max(0.0).sqrt(),
                weights,
            }),
            None => excluded.push(k + 1),
        }
    }
    Ok(EigenBasis {
        eigenvalues: eig.eigenvalues,
        portfolios,
        excluded,
    })
}

/// `(1 − γ)S + γ·diag(S)`.
pub fn shrink_covariance(cov: &SymMatrix, gamma: f64) -> Result<SymMatrix> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidArgument(format!(
            "shrinkage intensity must lie in [0, 1], got {gamma}"
        )));
    }
    SymMatrix::from_fn(cov.order(), |i, j| {
        if i == j {
            cov.get(i, i)
        } else {
            (1.0 - gamma) * cov.get(i, j)
        }
    })
}

/// Outcome of the dominant eigen-portfolio search.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrinkageResult {
    pub gamma: f64,
    pub shrunk_covariance: SymMatrix,
    /// All weights strictly positive; return and risk measured under the original `S`.
    pub dep: Portfolio,
}

/// Dominant eigen-portfolio of the shrunk covariance at a single `gamma`.
///
/// With a tied top eigenvalue the candidate with the fewest non-positive weights wins
/// (earliest on ties). At `gamma == 1` the correlation matrix is the identity and the
/// inverse-volatility portfolio is returned.
pub fn dominant_eigen_portfolio(moments: &MomentEstimates, gamma: f64) -> Result<(SymMatrix, Vec<f64>)> {
    let shrunk = shrink_covariance(&moments.covariance, gamma)?;
    let vols = positive_vols(&shrunk, Some(&moments.symbols))?;
    if gamma == 1.0 {
        let inv: Vec<f64> = vols.iter().map(|s| 1.0 / s).collect();
        let total: f64 = inv.iter().sum();
        return Ok((shrunk, inv.iter().map(|x| x / total).collect()));
    }
    let eig = sym_eigen(&correlation_from_covariance(&shrunk)?)?;
    let top = eig.eigenvalues[0];
    let mut best: Option<(usize, Vec<f64>)> = None;
    for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
        if top - lambda > EIGENVALUE_TIE_TOLERANCE * top.abs() {
            break;
        }
        let mut xi: Vec<f64> = v.iter().zip(&vols).map(|(x, s)| x / s).collect();
        let Some((_, weights)) = normalise(&mut xi, &moments.mean_returns) else {
            continue;
        };
        let non_positive = weights.iter().filter(|w| **w <= 0.0).count();
        if best.as_ref().is_none_or(|(b, _)| non_positive < *b) {
            best = Some((non_positive, weights));
        }
    }
    let (_, weights) = best.ok_or(Error::NoDepFound)?;
    Ok((shrunk, weights))
}

/// Smallest `γ ∈ {0, step, 2·step, …, 1}` whose dominant eigen-portfolio is long-only.
pub fn find_dep(moments: &MomentEstimates, step: f64) -> Result<ShrinkageResult> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "shrinkage step must lie in (0, 1], got {step}"
        )));
    }
    let steps = (1.0 / step - 1e-9).ceil() as usize;
    for k in 0..=steps {
        let gamma = if k == steps { 1.0 } else { k as f64 * step };
        let (shrunk, weights) = dominant_eigen_portfolio(moments, gamma)?;
        if weights.iter().all(|w| *w > 0.0) {
            let dep = Portfolio {
                label: PortfolioLabel::Dep,
                expected_return: dot(&moments.mean_returns, &weights),
                risk: moments.covariance.quad_form(&weights).max(0.0).sqrt(),
                weights,
                risk_free_weight: None,
            };
            return Ok(ShrinkageResult {
                gamma,
                shrunk_covariance: shrunk,
                dep,
            });
        }
    }
    Err(Error::NoDepFound)
}
