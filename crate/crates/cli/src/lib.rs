//! Pipeline behind the `markowitz` binary: fetch quotes, consolidate closing prices,
//! and emit the risky-frontier and capital-market-line reports as CSV tables.

pub mod commands;
pub mod config;
pub mod fetch;
pub mod report;

pub use commands::{cmd_cml, cmd_fetch, cmd_frontier, cmd_prices, cmd_report, CmdError};
pub use config::RunConfig;
