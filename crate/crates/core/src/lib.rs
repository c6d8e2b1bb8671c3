//! Exact greedy and best Egyptian-fraction underapproximations.
//!
//! Every quantity is an exact rational. The crate computes greedy and best
//! `n`-term underapproximations, the interval partitions they induce, and
//! certified measure bounds for points whose best underapproximations form
//! a single chain.

pub mod arith;
pub mod cli;
pub mod error;
pub mod greedy;
pub mod lemma1;
pub mod measure;
pub mod partition;
pub mod search;

pub use arith::{harmonic, rep_value, EgyptianRep, Integer, Natural, Rational};
pub use error::{Error, Result};
pub use greedy::{greedy_gap, greedy_underapprox};
pub use lemma1::{lemma1_certificate, Lemma1Mode, Lemma1Report};
pub use measure::{
    cell_decay_bound, chain_check, sample_chain_density, ChainReport, DecayOptions, DecayReport,
    Verdict,
};
pub use partition::{cell_of, cells_in_window, next_regular_above, Cell, Window};
pub use search::{
    best_underapprox, has_representation, next_point_above, BestApprox, SearchConfig,
};
