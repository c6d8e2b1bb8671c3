//! Whether best approximations extend each other level by level.
//!
//!     cargo run --example chain_check

use egyptian::{chain_check, Rational};

fn main() -> egyptian::Result<()> {
    for (x, n0, t) in [("1", 0, 4), ("1/5", 0, 3), ("11/24", 1, 2), ("3/7", 1, 4)] {
        let x: Rational = x.parse()?;
        let report = chain_check(&x, n0, t)?;
        let diffs: Vec<String> = report.diffs.iter().map(|d| d.to_string()).collect();
        println!(
            "x = {x}, levels {n0}..{t}: {:?}  diffs [{}]",
            report.verdict,
            diffs.join(", ")
        );
        if let Some(level) = report.failure_level {
            println!("  breaks at level {level}");
        }
    }
    Ok(())
}
