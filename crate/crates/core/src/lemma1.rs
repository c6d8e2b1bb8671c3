//! Certified lower bounds for the measure of the non-greedy two-term set in
//! a slice `(1/i, 1/(i-1)]`.
//!
//! Every `y` in the slice has greedy first term `1/i`, and the greedy cells
//! are `C_j = (1/i + 1/j, 1/i + 1/(j-1)]` for `j >= (i-1)i + 1`. A two-term
//! sum `s` with first denominator above `i` that lands inside `C_j` makes the
//! part of `C_j` to the right of `s` non-greedy.
//!
//! Three routes are offered, each at least as large as the previous one:
//!
//! * `paper`: the sums `1/(i+1) + 1/(i(i+1)/2 + k)` for one index `k` out of
//!   each pair `(2l, 2l+1)` with `l` in `[i(i+1)/100, 3i(i+1)/200]`, with
//!   every inequality of the construction checked exactly;
//! * `direct`: the same family over all `0 <= k <= i(i+1)/10`;
//! * `exact`: every competing two-term sum, giving the measure itself.

use std::collections::HashMap;

use malachite::num::arithmetic::traits::Pow;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{sum_fraction_parts, Integer, Rational};
use crate::error::{Error, Result};

/// Largest `i` accepted by the integer fast paths.
pub const MAX_SLICE_INDEX: u64 = 1_000_000;
/// Exact mode enumerates Θ(i² log i) sums; beyond this it is not practical.
pub const MAX_EXACT_SLICE_INDEX: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma1Mode {
    Paper,
    Direct,
    Exact,
}

impl std::str::FromStr for Lemma1Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Lemma1Mode::Paper),
            "direct" => Ok(Lemma1Mode::Direct),
            "exact" => Ok(Lemma1Mode::Exact),
            other => Err(Error::invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub i: u64,
    pub mode: Lemma1Mode,
    /// `floor(i(i+1)/10)`, the largest `k` of the candidate family.
    pub k_range_max: u64,
    /// Paper: number of selected indices (one per `l`). Direct: intervals
    /// with nonzero length. Exact: greedy cells containing a competitor.
    pub selected_count: u64,
    /// Lower bound (paper, direct) or exact value (exact).
    pub certified_measure: Rational,
    /// `1/((i-1)i)`.
    pub interval_length: Rational,
    pub ratio: Rational,
    /// `ratio >= 1/1000`.
    pub pass: bool,
}

fn pronic(i: u64) -> u64 {
    i * (i + 1)
}

fn check_index(i: u64, min: u64) -> Result<()> {
    if i < min {
        return Err(Error::invalid(format!(
            "slice index must be at least {min}, got {i}"
        )));
    }
    if i > MAX_SLICE_INDEX {
        return Err(Error::invalid(format!(
            "slice index above {MAX_SLICE_INDEX} is not supported"
        )));
    }
    Ok(())
}

/// `x_k = i(i+1) (i(i+1) + 2k) / (i(i+1) - 2k)`, the reciprocal of
/// `1/(i+1) + 1/(i(i+1)/2 + k) - 1/i`.
pub fn xk(i: u64, k: u64) -> Result<Rational> {
    check_index(i, 2)?;
    let kmax = pronic(i) / 10;
    if k > kmax {
        return Err(Error::invalid(format!(
            "k = {k} outside [0, {kmax}] for i = {i}"
        )));
    }
    let p = pronic(i);
    Ok(Rational::ratio(
        Integer::from(p) * Integer::from(p + 2 * k),
        Integer::from(p - 2 * k),
    ))
}

fn verification(inequality: impl Into<String>, i: u64, k: Option<u64>, l: Option<u64>) -> Error {
    Error::Verification {
        inequality: inequality.into(),
        i,
        k,
        l,
    }
}

pub fn lemma1_certificate(i: u64, mode: Lemma1Mode) -> Result<Lemma1Report> {
    let (selected_count, certified_measure) = match mode {
        Lemma1Mode::Paper => paper_mode_route(i)?,
        Lemma1Mode::Direct => direct_route(i)?,
        Lemma1Mode::Exact => {
            let cells = nongreedy_cells(i)?;
            (cells.len() as u64, nongreedy_measure_from_cells(i, &cells))
        }
    };
    let interval_length = slice_length(i);
    let ratio = &certified_measure / &interval_length;
    let pass = ratio >= Rational::ratio(1, 1000);
    Ok(Lemma1Report {
        i,
        mode,
        k_range_max: pronic(i) / 10,
        selected_count,
        certified_measure,
        interval_length,
        ratio,
        pass,
    })
}

/// `|(1/i, 1/(i-1)]| = 1/((i-1)i)`.
pub fn slice_length(i: u64) -> Rational {
    Rational::ratio(1, (i - 1) * i)
}

/// `1/floor(x) - 1/x`: length of the non-greedy right part of the greedy
/// cell containing `1/i + 1/x`.
fn right_part_length(x: &Rational) -> Rational {
    let f = Rational::from_integer(x.floor());
    f.recip().expect("x >= 1") - x.recip().expect("x > 0")
}

fn paper_mode_route(i: u64) -> Result<(u64, Rational)> {
    if i < 1000 {
        return Err(Error::invalid(format!(
            "paper mode needs i >= 1000 for its constants to hold, got {i}"
        )));
    }
    check_index(i, 1000)?;
    let p = pronic(i);
    let l_lo = p.div_ceil(100);
    let l_hi = 3 * p / 200;
    let count = (l_hi + 1).saturating_sub(l_lo);
    if 200 * count < i * i {
        return Err(verification(
            format!("|L| = {count} >= i^2/200"),
            i,
            None,
            None,
        ));
    }

    let third = Rational::ratio(1, 3);
    let diff_lo = Rational::ratio(13, 3);
    let diff_hi = Rational::ratio(14, 3);
    let x_cap = Rational::ratio(6 * i * i, 5);
    let length_floor = Rational::ratio(25, 108) / Rational::from_integer(Integer::from(i).pow(4));
    let cell_floor = Integer::from((i - 1) * i);

    let per_l = (l_lo..=l_hi)
        .into_par_iter()
        .map(|l| -> Result<(u64, Rational, Rational)> {
            let (k0, k1) = (2 * l, 2 * l + 1);
            let x0 = xk(i, k0)?;
            let x1 = xk(i, k1)?;
            let d = &x1 - &x0;
            if d < diff_lo || d > diff_hi {
                return Err(verification(
                    format!("13/3 <= x_(2l+1) - x_(2l) <= 14/3 (difference {d})"),
                    i,
                    None,
                    Some(l),
                ));
            }
            // A difference at least 1/3 away from every integer forces one of
            // the two fractional parts up to 1/3 or more.
            let (k, x) = if x0.fract() >= third {
                (k0, x0)
            } else if x1.fract() >= third {
                (k1, x1)
            } else {
                return Err(verification(
                    "frac(x_k) >= 1/3 for k = 2l or 2l+1",
                    i,
                    None,
                    Some(l),
                ));
            };
            if x >= x_cap {
                return Err(verification("x_k < (6/5) i^2", i, Some(k), Some(l)));
            }
            if x.floor() <= cell_floor {
                return Err(verification("j_k > (i-1)i + 1", i, Some(k), Some(l)));
            }
            let len = right_part_length(&x);
            if len <= length_floor {
                return Err(verification(
                    "1/floor(x_k) - 1/x_k > 25/(108 i^4)",
                    i,
                    Some(k),
                    Some(l),
                ));
            }
            Ok((k, x, len))
        })
        .collect::<Result<Vec<_>>>()?;

    // Selected indices increase with l and consecutive x_k differ by more
    // than 1, so the floors must be strictly increasing: the cells are distinct.
    for w in per_l.windows(2) {
        if w[0].1.floor() >= w[1].1.floor() {
            return Err(verification("distinct cells j_k", i, Some(w[1].0), None));
        }
    }

    let total = sum_fraction_parts(
        per_l
            .into_iter()
            .map(|(_, _, len)| (len.numerator(), Integer::from(len.denominator().clone())))
            .collect(),
    );
    let target = Rational::ratio(1, 1000) * slice_length(i);
    if total <= target {
        return Err(verification(
            "total length > 1/(1000 (i-1) i)",
            i,
            None,
            None,
        ));
    }
    Ok((count, total))
}

fn direct_route(i: u64) -> Result<(u64, Rational)> {
    check_index(i, 2)?;
    let p = pronic(i) as u128;
    let kmax = (p / 10) as u64;
    let cell_floor = ((i - 1) * i) as u128;
    // x_k = num_k / den_k with num_k = p (p + 2k), den_k = p - 2k.
    let frac = |k: u64| -> (u128, u128) { (p * (p + 2 * k as u128), p - 2 * k as u128) };

    let terms = (0..=kmax)
        .into_par_iter()
        .map(|k| -> Result<Option<(Integer, Integer)>> {
            let (num, den) = frac(k);
            if k < kmax {
                let (num2, den2) = frac(k + 1);
                // x_(k+1) - x_k > 1, so different k give different cells.
                if num2 * den <= num * den2 + den * den2 {
                    return Err(verification("x_(k+1) - x_k > 1", i, Some(k), None));
                }
            }
            let f = num / den;
            let rem = num % den;
            if f + 1 <= cell_floor + 1 {
                return Err(verification("j_k > (i-1)i + 1", i, Some(k), None));
            }
            // 1/f - den/num = rem / (f num); an integral x_k has an empty right part.
            Ok((rem > 0).then(|| (Integer::from(rem), Integer::from(f) * Integer::from(num))))
        })
        .collect::<Result<Vec<_>>>()?;
    let parts: Vec<_> = terms.into_iter().flatten().collect();
    Ok((parts.len() as u64, sum_fraction_parts(parts)))
}

/// Leftmost competing sum inside one greedy cell, stored through
/// `x = 1/(s - 1/i) = floor + rem/den` with `num = floor * den + rem`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct CellCompetitor {
    pub floor: u128,
    pub rem: u128,
    pub den: u128,
    pub num: u128,
}

impl CellCompetitor {
    /// Fractional part comparison; larger x means a smaller sum s.
    fn beats(&self, other: &CellCompetitor) -> bool {
        self.rem * other.den > other.rem * self.den
    }
}

/// For every greedy cell of the slice that holds a competing two-term sum
/// strictly inside it, the leftmost such sum. Sorted by cell.
///
/// Competitors are `1/a + 1/b` with `i < a < b` and the sum in the slice.
/// First denominators below `i` overshoot the slice and `a = i` is the greedy
/// family itself. Since `1/a + 1/b > 1/i` with `b > a` forces `2/a > 1/i`,
/// `a < 2i`; for fixed `a`, `s <= 1/(i-1)` and `s > 1/i` bound `b` to
/// `[(i-1)a/(a-i+1), ia/(a-i))`.
pub(crate) fn nongreedy_cells(i: u64) -> Result<Vec<CellCompetitor>> {
    if i < 2 {
        return Err(Error::invalid(format!(
            "slice index must be at least 2, got {i}"
        )));
    }
    if i > MAX_EXACT_SLICE_INDEX {
        return Err(Error::invalid(format!(
            "exact measure is limited to i <= {MAX_EXACT_SLICE_INDEX}, got {i}"
        )));
    }
    let iw = i as u128;
    let merged = (i + 1..2 * i)
        .into_par_iter()
        .fold(HashMap::<u128, CellCompetitor>::new, |mut map, a| {
            let a = a as u128;
            let b_lo = std::cmp::max(a + 1, ((iw - 1) * a).div_ceil(a - iw + 1));
            let b_hi = (iw * a).div_ceil(a - iw) - 1;
            for b in b_lo..=b_hi {
                let den = iw * (a + b) - a * b;
                let num = iw * a * b;
                let rem = num % den;
                if rem == 0 {
                    // The sum sits on a cell boundary: the right end of one
                    // cell, the excluded left end of the next.
                    continue;
                }
                let c = CellCompetitor {
                    floor: num / den,
                    rem,
                    den,
                    num,
                };
                map.entry(c.floor)
                    .and_modify(|cur| {
                        if c.beats(cur) {
                            *cur = c;
                        }
                    })
                    .or_insert(c);
            }
            map
        })
        .reduce(HashMap::new, |mut left, right| {
            for (floor, c) in right {
                left.entry(floor)
                    .and_modify(|cur| {
                        if c.beats(cur) {
                            *cur = c;
                        }
                    })
                    .or_insert(c);
            }
            left
        });
    let mut cells: Vec<CellCompetitor> = merged.into_values().collect();
    cells.sort_unstable_by_key(|c| c.floor);
    Ok(cells)
}

fn nongreedy_measure_from_cells(_i: u64, cells: &[CellCompetitor]) -> Rational {
    // Each cell contributes 1/floor - 1/x = rem / (floor * num).
    sum_fraction_parts(
        cells
            .iter()
            .map(|c| {
                (
                    Integer::from(c.rem),
                    Integer::from(c.floor) * Integer::from(c.num),
                )
            })
            .collect(),
    )
}

/// Exact Lebesgue measure of the points of `(1/i, 1/(i-1)]` whose best
/// two-term underapproximation is strictly larger than the greedy one.
pub fn nongreedy_two_term_measure(i: u64) -> Result<Rational> {
    let cells = nongreedy_cells(i)?;
    Ok(nongreedy_measure_from_cells(i, &cells))
}

/// The non-greedy set of the slice as disjoint intervals `(lo, hi]`, sorted
/// from right to left (increasing cell index).
pub fn nongreedy_two_term_intervals(i: u64) -> Result<Vec<(Rational, Rational)>> {
    let base = Rational::ratio(1, i);
    Ok(nongreedy_cells(i)?
        .into_iter()
        .map(|c| {
            let lo = &base + Rational::ratio(Integer::from(c.den), Integer::from(c.num));
            let hi = &base + Rational::ratio(1, Integer::from(c.floor));
            (lo, hi)
        })
        .collect())
}
