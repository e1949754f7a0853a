use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {pivot} fell below threshold)")]
    NotPositiveDefinite { pivot: usize },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("symbol list {} contains no tickers", path.display())]
    EmptyList { path: PathBuf },

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("no price file for symbol {symbol} in {}", dir.display())]
    MissingFile { symbol: String, dir: PathBuf },

    #[error("symbol {symbol} has {found} price rows, {needed} required")]
    InsufficientHistory {
        symbol: String,
        found: usize,
        needed: usize,
    },

    #[error("{}:{line}: {reason}", path.display())]
    MalformedRow {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("asset {symbol} has zero return variance")]
    DegenerateData { symbol: String },

    #[error("degenerate frontier: d = {d:e} (all assets share one expected return)")]
    DegenerateFrontier { d: f64 },

    #[error("no tangency portfolio: a12 = {a12:e} is not positive")]
    NoTangency { a12: f64 },

    #[error("no all-positive dominant eigen-portfolio found for any shrinkage in [0, 1]")]
    NoDepFound,

    #[error(
        "risk-free rate {risk_free:e} is not below the minimum-variance return {mvp_return:e}"
    )]
    RiskFreeAboveMvpReturn { risk_free: f64, mvp_return: f64 },

    #[error("target return {rho:e} is below the risk-free rate {risk_free:e}")]
    NegativeExcessReturn { rho: f64, risk_free: f64 },
}
