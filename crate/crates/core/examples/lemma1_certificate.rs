//! Certified non-greedy measure in a slice `(1/i, 1/(i-1)]`, in each mode,
//! against the exact two-term count.
//!
//!     cargo run --release --example lemma1_certificate -- 1000

use egyptian::lemma1::{nongreedy_two_term_measure, slice_length};
use egyptian::{lemma1_certificate, Lemma1Mode};

fn main() -> egyptian::Result<()> {
    let i: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("slice index"))
        .unwrap_or(200);
    let length = slice_length(i);
    for mode in [Lemma1Mode::Paper, Lemma1Mode::Direct, Lemma1Mode::Exact] {
        match lemma1_certificate(i, mode) {
            Ok(r) => println!(
                "{mode:?}: {} sub-intervals, ratio {:.6}, pass {}",
                r.selected_count,
                r.ratio.to_f64(),
                r.pass
            ),
            Err(e) => println!("{mode:?}: {e}"),
        }
    }
    let exact = nongreedy_two_term_measure(i)?;
    println!("exact non-greedy fraction {:.6}", (exact / length).to_f64());
    Ok(())
}
