//! Upper bound on the part of a cell where the chain survives two more levels.
//!
//!     cargo run --release --example decay_bound

use egyptian::{cell_decay_bound, cell_of, DecayOptions, Rational};

fn main() -> egyptian::Result<()> {
    let x: Rational = "35/66".parse()?;
    let cell = cell_of(&x, 2)?;
    println!(
        "cell ({}, {}] with best {}",
        cell.lower,
        cell.upper.as_ref().expect("bounded"),
        cell.best_rep
    );
    for i_max in [10_000, 100_000, 10_000_000] {
        let r = cell_decay_bound(&cell, i_max, &DecayOptions::default())?;
        println!(
            "i_max {i_max:>9}: i0 {}, ratio {:.7}, tail controlled {}",
            r.i0,
            r.ratio.to_f64(),
            r.tail_controlled
        );
    }
    Ok(())
}
