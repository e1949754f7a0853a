//! Regenerates the bundled synthetic quote fixture.
//!
//! ```text
//! cargo run -p markowitz --example gen_fixture -- fixtures
//! ```
//!
//! Ten tickers, 250 trading days each, driven by a one-factor model with positive
//! loadings so every pairwise correlation is positive.

use std::fs;
use std::path::PathBuf;

use chrono::{Datelike, Duration, NaiveDate, Weekday};
use markowitz::market_data::{extract_prices, write_price_table};
use markowitz::{build_frontier, compute_returns, correlation_from_covariance, estimate_moments};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

const SYMBOLS: [&str; 10] = [
    "FB", "INT", "AAPL", "MSFT", "ORCL", "GOOG", "YHOO", "DELL", "IBM", "HPQ",
];
const DAYS: usize = 250;
const SEED: u64 = 20130621;

fn trading_days(last: NaiveDate, count: usize) -> Vec<NaiveDate> {
    let mut out = Vec::with_capacity(count);
    let mut day = last;
    while out.len() < count {
        if !matches!(day.weekday(), Weekday::Sat | Weekday::Sun) {
            out.push(day);
        }
        day -= Duration::days(1);
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    let data = root.join("data");
    fs::create_dir_all(&data)?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let market = Normal::new(0.0006, 0.011)?;
    let unit = Normal::new(0.0, 1.0)?;
    let factor: Vec<f64> = (0..DAYS).map(|_| market.sample(&mut rng)).collect();
    let dates = trading_days(NaiveDate::from_ymd_opt(2013, 6, 21).unwrap(), DAYS);

    for sym in SYMBOLS {
        let beta: f64 = rng.random_range(0.7..1.3);
        let alpha: f64 = rng.random_range(0.0002..0.0012);
        let idio: f64 = rng.random_range(0.007..0.016);
        let mut price: f64 = rng.random_range(20.0..400.0);
        let mut rows = Vec::with_capacity(DAYS);
        for f in &factor {
            let open = price;
            let ret = alpha + beta * f + idio * unit.sample(&mut rng);
            price = (price * (1.0 + ret) * 100.0).round() / 100.0;
            let high = open.max(price) * (1.0 + rng.random_range(0.0..0.01));
            let low = open.min(price) * (1.0 - rng.random_range(0.0..0.01));
            let volume: u64 = rng.random_range(1_000_000..40_000_000);
            rows.push(format!(
                "{open:.2},{high:.2},{low:.2},{price:.2},{volume},{price:.2}"
            ));
        }
        // newest first, like the usual historical-quote exports
        let mut out = String::from("Date,Open,High,Low,Close,Volume,Adj Close\n");
        for (date, row) in dates.iter().zip(rows.iter().rev()) {
            out.push_str(&format!("{date},{row}\n"));
        }
        fs::write(data.join(sym), out)?;
    }
    fs::write(root.join("stocks.txt"), SYMBOLS.join(",") + "\n")?;

    let symbols: Vec<String> = SYMBOLS.iter().map(|s| s.to_string()).collect();
    let prices = extract_prices(&data, &symbols, DAYS)?;
    fs::write(root.join("portfolio.txt"), write_price_table(&prices))?;

    let moments = estimate_moments(&compute_returns(&prices))?;
    let fm = build_frontier(&moments)?;
    let corr = correlation_from_covariance(&moments.covariance)?;
    let min_corr = (0..SYMBOLS.len())
        .flat_map(|i| (0..SYMBOLS.len()).map(move |j| (i, j)))
        .map(|(i, j)| corr.get(i, j))
        .fold(f64::INFINITY, f64::min);
    println!("mean returns: {:?}", moments.mean_returns);
    println!("mvp return {:.6}, min correlation {:.3}", fm.mvp_return(), min_corr);
    Ok(())
}
