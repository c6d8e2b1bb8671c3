//! Greedy underapproximation: repeatedly take the largest unit fraction that
//! stays strictly below what is left.

use malachite::num::basic::traits::One;

use crate::arith::{smallest_unit_below, EgyptianRep, Natural, Rational};
use crate::error::{Error, Result};

/// Greedy denominators grow doubly exponentially (2, 3, 7, 43, 1807, …), so
/// the number of terms is capped.
pub const DEFAULT_MAX_GREEDY_TERMS: usize = 12;

pub fn greedy_underapprox(x: &Rational, n: usize) -> Result<EgyptianRep> {
    greedy_underapprox_limited(x, n, DEFAULT_MAX_GREEDY_TERMS)
}

pub fn greedy_underapprox_limited(x: &Rational, n: usize, max_terms: usize) -> Result<EgyptianRep> {
    Ok(greedy_with_gap(x, n, max_terms)?.0)
}

/// `x` minus its greedy `n`-term underapproximation; always positive.
pub fn greedy_gap(x: &Rational, n: usize) -> Result<Rational> {
    Ok(greedy_with_gap(x, n, DEFAULT_MAX_GREEDY_TERMS)?.1)
}

pub(crate) fn greedy_with_gap(
    x: &Rational,
    n: usize,
    max_terms: usize,
) -> Result<(EgyptianRep, Rational)> {
    if !x.is_positive() {
        return Err(Error::invalid(format!(
            "greedy target must be positive, got {x}"
        )));
    }
    if n > max_terms {
        return Err(Error::TermLimit {
            requested: n,
            limit: max_terms,
        });
    }
    let mut gap = x.clone();
    let mut denominators: Vec<Natural> = Vec::with_capacity(n);
    for _ in 0..n {
        // +1 keeps the term strictly below the gap even when 1/gap is an integer;
        // above 2 the gap can exceed 1 and the previous term would repeat.
        let mut m = smallest_unit_below(&gap);
        if let Some(last) = denominators.last() {
            m = m.max(last + Natural::ONE);
        }
        gap -= &Rational::unit(&m);
        denominators.push(m);
    }
    Ok((EgyptianRep::from_vec_unchecked(denominators), gap))
}
