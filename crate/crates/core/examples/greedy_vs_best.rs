//! Greedy against optimal underapproximations for a few targets.
//!
//!     cargo run --example greedy_vs_best

use egyptian::{best_underapprox, greedy_underapprox, Rational};

fn main() -> egyptian::Result<()> {
    for (x, n) in [
        ("11/24", 2),
        ("1", 4),
        ("2/5", 3),
        ("5/121", 3),
        ("13/17", 3),
    ] {
        let x: Rational = x.parse()?;
        let greedy = greedy_underapprox(&x, n)?;
        let best = best_underapprox(&x, n)?;
        let marker = if best.rep == greedy {
            ""
        } else {
            "  <- greedy is not optimal"
        };
        println!("x = {x}, n = {n}");
        println!("  greedy {:<24} = {}", greedy.to_string(), greedy.value());
        println!(
            "  best   {:<24} = {}{marker}",
            best.rep.to_string(),
            best.value
        );
        println!("  gap left by best: {}", &x - &best.value);
    }
    Ok(())
}
