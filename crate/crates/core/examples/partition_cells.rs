//! The cells of constant best approximation around a point, and a window of
//! them walked right to left.
//!
//!     cargo run --example partition_cells

use egyptian::partition::max_cell_length;
use egyptian::{cell_of, cells_in_window, next_regular_above, Rational};

fn main() -> egyptian::Result<()> {
    let x: Rational = "11/24".parse()?;
    for n in 1..=3 {
        let cell = cell_of(&x, n)?;
        let upper = cell.upper.clone().expect("x is below H_n");
        println!(
            "level {n}: ({}, {upper}]  length {}  best {}",
            cell.lower,
            &upper - &cell.lower,
            cell.best_rep
        );
    }

    let (a, b): (Rational, Rational) = ("2/5".parse()?, "1/2".parse()?);
    let window = cells_in_window(&a, &b, 2, 100)?;
    println!("\n{} level-2 cells cover ({a}, {b}]", window.cells.len());
    let longest = window
        .cells
        .iter()
        .filter_map(|c| c.length())
        .max()
        .expect("nonempty window");
    println!("longest {longest}, bound {}", max_cell_length(2));
    print!(
        "{}",
        window
            .to_csv()
            .lines()
            .take(6)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!("\n...");

    let p = next_regular_above(&x, 3)?;
    println!(
        "\nnext regular 3-term point above {x}: {} = {}",
        p.value, p.rep
    );
    Ok(())
}
