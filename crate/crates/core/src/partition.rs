//! The partitions of `(0, ∞)` into maximal intervals on which the best
//! `n`-term underapproximation is constant, and the regular numbers whose
//! density bounds the cell lengths.

use std::fmt::Write as _;

use malachite::num::basic::traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{harmonic, EgyptianRep, Natural, Rational};
use crate::error::{Error, Result};
use crate::search::{best_underapprox_with, min_sum_at_least, SearchConfig};

/// One cell `(lower, upper]` of the level-`n` partition, or the unbounded
/// cell `(H_n, ∞)` when `upper` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub level: usize,
    pub lower: Rational,
    pub upper: Option<Rational>,
    /// Witness for `lower`; empty for the unbounded cell.
    pub best_rep: EgyptianRep,
}

/// `1/(n(n+1))`, the maximal length of a bounded level-`n` cell.
pub fn max_cell_length(n: usize) -> Rational {
    let n = n as u64;
    Rational::ratio(1, n * (n + 1))
}

impl Cell {
    /// A bounded cell, checked against `lower < upper` and the length bound.
    pub fn bounded(
        level: usize,
        lower: Rational,
        upper: Rational,
        best_rep: EgyptianRep,
    ) -> Result<Cell> {
        if level == 0 {
            return Err(Error::invalid("cell level must be positive"));
        }
        if lower >= upper {
            return Err(Error::invalid(format!("empty cell ({lower}, {upper}]")));
        }
        if &upper - &lower > max_cell_length(level) {
            return Err(Error::invalid(format!(
                "cell ({lower}, {upper}] is longer than 1/({level}·{})",
                level + 1
            )));
        }
        Ok(Cell {
            level,
            lower,
            upper: Some(upper),
            best_rep,
        })
    }

    pub fn unbounded(level: usize) -> Cell {
        Cell {
            level,
            lower: harmonic(level as u64),
            upper: None,
            best_rep: EgyptianRep::empty(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.upper.is_some()
    }

    pub fn length(&self) -> Option<Rational> {
        self.upper.as_ref().map(|u| u - &self.lower)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        *x > self.lower && self.upper.as_ref().map_or(true, |u| x <= u)
    }

    /// Interval inclusion `self ⊆ other`.
    pub fn is_within(&self, other: &Cell) -> bool {
        let upper_ok = match (&self.upper, &other.upper) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        };
        self.lower >= other.lower && upper_ok
    }

    pub fn record(&self) -> CellRecord {
        CellRecord {
            level: self.level,
            lower: self.lower.clone(),
            upper: self
                .upper
                .as_ref()
                .map_or_else(|| "+inf".to_string(), |u| u.to_string()),
            length: self.length(),
            best_rep: self.best_rep.clone(),
        }
    }
}

/// Serialized form of a [`Cell`]; `upper` is `"+inf"` for the unbounded cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub level: usize,
    pub lower: Rational,
    pub upper: String,
    pub length: Option<Rational>,
    pub best_rep: EgyptianRep,
}

pub fn cell_of(x: &Rational, n: usize) -> Result<Cell> {
    cell_of_with(x, n, &SearchConfig::default())
}

/// The level-`n` cell containing `x`.
pub fn cell_of_with(x: &Rational, n: usize, config: &SearchConfig) -> Result<Cell> {
    if n == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    if !x.is_positive() {
        return Err(Error::invalid(format!("point must be positive, got {x}")));
    }
    if *x > harmonic(n as u64) {
        return Ok(Cell::unbounded(n));
    }
    // No sum of at most n terms lies in (best, x), so the cell ends at the
    // first such sum at or above x.
    let upper = min_sum_at_least(x, n, config)?;
    cell_below(&upper, n, config)
}

/// The cell whose upper endpoint is the sum `upper`.
fn cell_below(upper: &Rational, n: usize, config: &SearchConfig) -> Result<Cell> {
    let best = best_underapprox_with(upper, n, config)?;
    let cell = Cell::bounded(n, best.value, upper.clone(), best.rep)?;
    Ok(cell)
}

/// Consecutive cells covering a window, walked right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub a: Rational,
    pub b: Rational,
    /// Right to left; each cell's `upper` equals the previous cell's `lower`.
    pub cells: Vec<Cell>,
    /// Part of `(a, b]` left of the last emitted cell.
    pub uncovered_measure: Rational,
}

impl Window {
    /// Total length of `cell ∩ (a, b]` over the emitted cells.
    pub fn covered_measure(&self) -> Rational {
        self.cells
            .iter()
            .map(|c| {
                let hi = c
                    .upper
                    .clone()
                    .expect("window cells are bounded")
                    .min(self.b.clone());
                let lo = c.lower.clone().max(self.a.clone());
                if hi > lo {
                    hi - lo
                } else {
                    Rational::zero()
                }
            })
            .sum()
    }

    pub fn to_csv(&self) -> String {
        cells_to_csv(&self.cells)
    }
}

pub fn cells_in_window(a: &Rational, b: &Rational, n: usize, max_cells: usize) -> Result<Window> {
    cells_in_window_with(a, b, n, max_cells, &SearchConfig::default())
}

/// Walks cells leftwards from the one containing `b`, stopping when the
/// window is covered or `max_cells` cells have been emitted.
///
/// Left endpoints accumulate at shorter sums, so a walk from the left could
/// not get started; truncation shows up as `uncovered_measure`.
pub fn cells_in_window_with(
    a: &Rational,
    b: &Rational,
    n: usize,
    max_cells: usize,
    config: &SearchConfig,
) -> Result<Window> {
    if n == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    if !a.is_positive() || a >= b || *b > harmonic(n as u64) {
        return Err(Error::invalid(format!(
            "window ({a}, {b}] must satisfy 0 < a < b <= H_{n}"
        )));
    }
    let mut cells: Vec<Cell> = Vec::new();
    let mut point = b.clone();
    while cells.len() < max_cells {
        let cell = if cells.is_empty() {
            cell_of_with(&point, n, config)?
        } else {
            cell_below(&point, n, config)?
        };
        let done = cell.lower <= *a;
        point = cell.lower.clone();
        cells.push(cell);
        if done {
            break;
        }
    }
    let uncovered_measure = match cells.last() {
        Some(last) if last.lower > *a => &last.lower - a,
        Some(_) => Rational::zero(),
        None => b - a,
    };
    Ok(Window {
        a: a.clone(),
        b: b.clone(),
        cells,
        uncovered_measure,
    })
}

/// Whether the level-`n` cell of `x` lies inside its level-`(n-1)` cell.
pub fn refinement_check(x: &Rational, n: usize) -> Result<bool> {
    refinement_check_with(x, n, &SearchConfig::default())
}

pub fn refinement_check_with(x: &Rational, n: usize, config: &SearchConfig) -> Result<bool> {
    if n < 2 {
        return Err(Error::invalid("refinement needs level n >= 2"));
    }
    let fine = cell_of_with(x, n, config)?;
    let coarse = cell_of_with(x, n - 1, config)?;
    Ok(fine.is_within(&coarse))
}

/// CSV with header `level,lower,upper,length,best_rep`.
pub fn cells_to_csv(cells: &[Cell]) -> String {
    let mut out = String::from("level,lower,upper,length,best_rep\n");
    for c in cells {
        let r = c.record();
        let length = r.length.map(|l| l.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.level,
            r.lower,
            r.upper,
            length,
            r.best_rep.to_spaced_string()
        );
    }
    out
}

/// A point of the closure of the regular numbers: the first `l` denominators
/// are `1, …, l` and every later one satisfies `m_{k+1} >= (m_k - 1) m_k + 1`.
///
/// `rep` has at most `n` terms; fewer terms mean the point is the limit of
/// regular `n`-term numbers from above rather than one of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularPoint {
    pub value: Rational,
    pub rep: EgyptianRep,
}

/// The smallest point `>= x` in the closure of the level-`n` regular numbers.
///
/// Regular `n`-term numbers accumulate from above at their shorter prefixes,
/// so the smallest regular number `>= x` need not exist; its infimum always
/// does and is what this returns.
pub fn next_regular_above(x: &Rational, n: usize) -> Result<RegularPoint> {
    if n == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    if !x.is_positive() || *x > harmonic(n as u64) {
        return Err(Error::invalid(format!("point {x} must lie in (0, H_{n}]")));
    }
    regular_closure_above(x, n, false).ok_or_else(|| Error::invalid("no regular point above input"))
}

/// Shared by the `>= x` query and the strict `> x` variant used for spacing.
pub(crate) fn regular_closure_above(x: &Rational, n: usize, strict: bool) -> Option<RegularPoint> {
    let mut best: Option<RegularPoint> = None;
    for l in 0..=n {
        let prefix: Vec<Natural> = (1..=l as u64).map(Natural::from).collect();
        let partial = harmonic(l as u64);
        let first_free = Natural::from(l as u64 + 1);
        if let Some(found) = regular_tail(x, strict, &partial, &prefix, n - l, first_free) {
            if best.as_ref().map_or(true, |b| found.value < b.value) {
                best = Some(found);
            }
        }
    }
    best
}

fn satisfies(value: &Rational, x: &Rational, strict: bool) -> bool {
    if strict {
        value > x
    } else {
        value >= x
    }
}

fn regular_tail(
    x: &Rational,
    strict: bool,
    partial: &Rational,
    prefix: &[Natural],
    remaining: usize,
    lower_bound: Natural,
) -> Option<RegularPoint> {
    let point = |value: Rational, denominators: Vec<Natural>| RegularPoint {
        value,
        rep: EgyptianRep::from_vec_unchecked(denominators),
    };
    if satisfies(partial, x, strict) {
        return Some(point(partial.clone(), prefix.to_vec()));
    }
    if remaining == 0 {
        return None;
    }
    let gap = x - partial;
    if !gap.is_positive() {
        // strict query sitting exactly on a prefix: the infimum is not above x
        return None;
    }
    // Values whose next term is m lie in [partial + 1/m, partial + 1/(m-1)),
    // since the constrained tail after m sums to less than 1/((m-1)m).
    // Let `largest` be the largest m with partial + 1/m satisfying the query.
    let recip = gap.recip().expect("positive gap");
    let largest = if strict {
        Natural::try_from(recip.ceil()).expect("positive") - Natural::ONE
    } else {
        Natural::try_from(recip.floor()).expect("nonnegative")
    };
    let extend = |m: Natural| -> Option<RegularPoint> {
        let mut denominators = prefix.to_vec();
        denominators.push(m.clone());
        let next_partial = partial + Rational::unit(&m);
        let next_bound = ((&m - Natural::ONE) * &m + Natural::ONE).max(&m + Natural::ONE);
        regular_tail(
            x,
            strict,
            &next_partial,
            &denominators,
            remaining - 1,
            next_bound,
        )
    };
    if largest < lower_bound {
        return extend(lower_bound);
    }
    let mut denominators = prefix.to_vec();
    denominators.push(largest.clone());
    let direct = point(partial + Rational::unit(&largest), denominators);
    match extend(largest + Natural::ONE) {
        Some(deeper) if deeper.value < direct.value => Some(deeper),
        _ => Some(direct),
    }
}
