//! Monte Carlo density of points whose best approximations form a chain,
//! with 99% Wilson intervals.
//!
//!     cargo run --release --example sample_density

use egyptian::sample_chain_density;
use egyptian::search::SearchConfig;

fn main() -> egyptian::Result<()> {
    let config = SearchConfig::with_node_budget(200_000);
    for t in 2..=4 {
        let r = sample_chain_density(1, t, 500, 7, 32, &config)?;
        println!(
            "s = 1, t = {t}: {}/{} pass, fraction {:.4}, 99% [{:.4}, {:.4}], undecided {}",
            r.passed,
            r.passed + r.failed,
            r.fraction.to_f64(),
            r.wilson_99.0.to_f64(),
            r.wilson_99.1.to_f64(),
            r.undecided
        );
    }
    Ok(())
}
