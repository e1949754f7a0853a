use std::path::PathBuf;

use markowitz::eigen::DEFAULT_SHRINK_STEP;

/// Parameters shared by every pipeline stage. Defaults:
/// 250 trading days, 100 frontier points, risk-free rate 0.0003/day, maximum return 0.01/day.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub symbols_file: PathBuf,
    pub data_dir: PathBuf,
    pub prices_file: PathBuf,
    pub trading_days: usize,
    pub frontier_points: usize,
    pub risk_free_rate: f64,
    pub rho_max: f64,
    pub output_dir: PathBuf,
    pub shrink_step: f64,
    pub url_template: Option<String>,
    /// Run the fetch stage as part of `report`.
    pub fetch: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            symbols_file: "stocks.txt".into(),
            data_dir: "data".into(),
            prices_file: "data/portfolio.txt".into(),
            trading_days: 250,
            frontier_points: 100,
            risk_free_rate: 0.0003,
            rho_max: 0.01,
            output_dir: ".".into(),
            shrink_step: DEFAULT_SHRINK_STEP,
            url_template: None,
            fetch: false,
        }
    }
}

impl RunConfig {
    /// Checks the stand-alone parameter ranges. `risk_free_rate < rho_max` is checked by
    /// the CML stage after the risk-free rate has been tested against the frontier.
    pub fn validate(&self) -> Result<(), String> {
        if self.trading_days < 2 {
            return Err(format!("--days must be at least 2, got {}", self.trading_days));
        }
        if self.frontier_points < 1 {
            return Err("--points must be at least 1".into());
        }
        if !(self.risk_free_rate >= 0.0 && self.risk_free_rate.is_finite()) {
            return Err(format!(
                "--risk-free must be a non-negative number, got {}",
                self.risk_free_rate
            ));
        }
        if !(self.rho_max > 0.0 && self.rho_max.is_finite()) {
            return Err(format!("--rho-max must be positive, got {}", self.rho_max));
        }
        if !(self.shrink_step > 0.0 && self.shrink_step <= 1.0) {
            return Err(format!(
                "--shrink-step must lie in (0, 1], got {}",
                self.shrink_step
            ));
        }
        Ok(())
    }

    pub fn results1_dir(&self) -> PathBuf {
        self.output_dir.join("results1")
    }

    pub fn results2_dir(&self) -> PathBuf {
        self.output_dir.join("results2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.validate(), Ok(()));
        assert_eq!(cfg.trading_days, 250);
        assert_eq!(cfg.frontier_points, 100);
        assert_eq!(cfg.risk_free_rate, 0.0003);
        assert_eq!(cfg.rho_max, 0.01);
    }

    #[test]
    fn rejects_out_of_range() {
        let bad = [
            RunConfig { trading_days: 1, ..Default::default() },
            RunConfig { frontier_points: 0, ..Default::default() },
            RunConfig { risk_free_rate: -0.1, ..Default::default() },
            RunConfig { rho_max: 0.0, ..Default::default() },
            RunConfig { shrink_step: 0.0, ..Default::default() },
            RunConfig { shrink_step: 1.5, ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }
}
