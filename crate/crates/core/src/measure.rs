//! Chains of best underapproximations and measure bounds built on them.
//!
//! A point `x` lies in `X(s, t)` when one increasing denominator sequence has
//! the best `n`-term underapproximations of `x` as its prefix sums for every
//! `n` from `s` to `t`. [`chain_check`] decides membership exactly,
//! [`sample_chain_density`] estimates `|X(s, t)| / H_s`, and
//! [`cell_decay_bound`] bounds how much of one partition cell can survive
//! two more levels of the chain.

use std::fmt::Write as _;

use malachite::num::basic::traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{harmonic, smallest_unit_below, EgyptianRep, Integer, Natural, Rational};
use crate::error::{Error, Result};
use crate::lemma1::{nongreedy_two_term_intervals, nongreedy_two_term_measure};
use crate::partition::Cell;
use crate::search::{
    best_underapprox_seeded, best_underapprox_with, has_representation_with, SearchConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub x: Rational,
    pub n0: usize,
    pub t: usize,
    /// Best values for levels `n0, n0+1, …`, up to `t` or the failing level.
    pub best_values: Vec<Rational>,
    /// Consecutive differences of `best_values`.
    pub diffs: Vec<Rational>,
    pub verdict: Verdict,
    pub failure_level: Option<usize>,
    /// `n0`-term representation of the level-`n0` value whose denominators
    /// all lie below the first chain denominator.
    pub base_rep: Option<EgyptianRep>,
}

pub fn chain_check(x: &Rational, n0: usize, t: usize) -> Result<ChainReport> {
    chain_check_with(x, n0, t, &SearchConfig::default())
}

/// Decides `x ∈ X(n0, t)`.
///
/// A chain exists exactly when every difference of consecutive best values
/// is a unit fraction `1/u_n` with `u_(n0+1) < … < u_t`, and the level-`n0`
/// value has an `n0`-term representation using only denominators below
/// `u_(n0+1)`: any chain produces these, and these assemble into a chain.
pub fn chain_check_with(
    x: &Rational,
    n0: usize,
    t: usize,
    config: &SearchConfig,
) -> Result<ChainReport> {
    if n0 >= t {
        return Err(Error::invalid(format!(
            "chain needs n0 < t, got n0 = {n0}, t = {t}"
        )));
    }
    if !x.is_positive() {
        return Err(Error::invalid(format!("point must be positive, got {x}")));
    }
    if n0 >= 1 && *x > harmonic(n0 as u64) {
        return Err(Error::invalid(format!("point {x} lies above H_{n0}")));
    }

    let first = best_underapprox_with(x, n0, config)?;
    let mut report = ChainReport {
        x: x.clone(),
        n0,
        t,
        best_values: vec![first.value],
        diffs: Vec::new(),
        verdict: Verdict::Pass,
        failure_level: None,
        base_rep: None,
    };
    let mut rep = first.rep;
    let mut units: Vec<Natural> = Vec::new();
    for n in n0 + 1..=t {
        let previous = report.best_values.last().expect("nonempty").clone();
        // A chain step can only add the greedy term for the current gap, so
        // that sum seeds the search.
        let u = smallest_unit_below(&(x - &previous));
        let best = if rep.contains(&u) {
            best_underapprox_with(x, n, config)?
        } else {
            let mut seed = rep.denominators().to_vec();
            seed.push(u);
            seed.sort();
            best_underapprox_seeded(x, n, EgyptianRep::from_vec_unchecked(seed), config)?
        };
        let diff = &best.value - &previous;
        rep = best.rep;
        report.best_values.push(best.value);
        report.diffs.push(diff.clone());
        let extends = match diff.unit_denominator() {
            Some(u) if units.last().map_or(true, |prev| u > *prev) => {
                units.push(u);
                true
            }
            _ => false,
        };
        if !extends {
            report.verdict = Verdict::Fail;
            report.failure_level = Some(n);
            return Ok(report);
        }
    }

    let base = if n0 == 0 {
        Some(EgyptianRep::empty())
    } else {
        let cap = &units[0] - Natural::ONE;
        has_representation_with(&report.best_values[0], n0, Some(&cap), config)?
    };
    match base {
        Some(rep) => report.base_rep = Some(rep),
        None => {
            report.verdict = Verdict::Fail;
            report.failure_level = Some(n0);
        }
    }
    Ok(report)
}

/// Two-sided standard normal quantile for 99% coverage.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// Wilson score interval for `successes` out of `trials`, clamped to `[0, 1]`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let radius = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (
        ((center - radius) / denom).max(0.0),
        ((center + radius) / denom).min(1.0),
    )
}

/// [`wilson_interval`] at 99% with exact rational endpoints.
pub fn wilson_99(successes: u64, trials: u64) -> (Rational, Rational) {
    let (lo, hi) = wilson_interval(successes, trials, Z_99);
    (
        Rational::from_f64(lo).expect("finite"),
        Rational::from_f64(hi).expect("finite"),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub x: Rational,
    /// `None` when the solver ran out of budget on this sample.
    pub verdict: Option<Verdict>,
    pub failure_level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub s: usize,
    pub t: usize,
    pub count: u64,
    pub seed: u64,
    pub bits: u32,
    pub passed: u64,
    pub failed: u64,
    pub undecided: u64,
    /// `passed / (passed + failed)`.
    pub fraction: Rational,
    pub wilson_99: (Rational, Rational),
    #[serde(skip)]
    pub samples: Vec<SampleRecord>,
}

impl DensityReport {
    /// CSV with header `x,verdict,failure_level`.
    pub fn samples_csv(&self) -> String {
        let mut out = String::from("x,verdict,failure_level\n");
        for s in &self.samples {
            let verdict = match s.verdict {
                Some(Verdict::Pass) => "pass",
                Some(Verdict::Fail) => "fail",
                None => "undecided",
            };
            let level = s.failure_level.map(|l| l.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{}", s.x, verdict, level);
        }
        out
    }
}

/// Dyadic sample points `u / 2^bits` with `u` uniform on
/// `1..=floor(H_s 2^bits)`, drawn from ChaCha8 seeded with `seed`.
pub fn dyadic_samples(upper: &Rational, count: u64, seed: u64, bits: u32) -> Vec<Rational> {
    let scale = Integer::from(1) << bits as u64;
    let grid = (upper * Rational::from_integer(scale.clone())).floor();
    let grid = u128::try_from(&grid).expect("grid fits in 128 bits");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Rational::ratio(Integer::from(rng.gen_range(1..=grid)), scale.clone()))
        .collect()
}

/// Fraction of sampled points of `(0, H_s]` that lie in `X(s, t)`, with a
/// 99% Wilson interval. Samples that exhaust the node budget are counted as
/// undecided and left out of the fraction.
pub fn sample_chain_density(
    s: usize,
    t: usize,
    count: u64,
    seed: u64,
    bits: u32,
    config: &SearchConfig,
) -> Result<DensityReport> {
    if s < 1 || t <= s {
        return Err(Error::invalid(format!(
            "sampling needs 1 <= s < t, got s = {s}, t = {t}"
        )));
    }
    if count < 1 {
        return Err(Error::invalid("sample count must be positive"));
    }
    if !(16..=96).contains(&bits) {
        return Err(Error::invalid(format!(
            "bits must lie in 16..=96, got {bits}"
        )));
    }
    let points = dyadic_samples(&harmonic(s as u64), count, seed, bits);
    let samples = points
        .into_par_iter()
        .map(|x| -> Result<SampleRecord> {
            match chain_check_with(&x, s, t, config) {
                Ok(report) => Ok(SampleRecord {
                    x,
                    verdict: Some(report.verdict),
                    failure_level: report.failure_level,
                }),
                Err(e) if e.is_resource_limit() => Ok(SampleRecord {
                    x,
                    verdict: None,
                    failure_level: None,
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = samples
        .iter()
        .filter(|r| r.verdict == Some(Verdict::Pass))
        .count() as u64;
    let failed = samples
        .iter()
        .filter(|r| r.verdict == Some(Verdict::Fail))
        .count() as u64;
    let undecided = count - passed - failed;
    let decided = passed + failed;
    let fraction = if decided == 0 {
        Rational::zero()
    } else {
        Rational::ratio(passed, decided)
    };
    Ok(DensityReport {
        s,
        t,
        count,
        seed,
        bits,
        passed,
        failed,
        undecided,
        fraction,
        wilson_99: wilson_99(passed, decided),
        samples,
    })
}

/// Certified bracket `lower <= |A| <= upper` for a Lebesgue measure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureEnclosure {
    pub lower: Rational,
    pub upper: Rational,
}

/// Which slices of a cell receive credit for their non-greedy part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecayOptions {
    /// Slices with `i` up to this use the exact non-greedy measure.
    pub exact_slices_up_to: u64,
    /// Slices with `i >= 1000` beyond the exact range are credited the
    /// guaranteed 1/1000 share of their length.
    pub use_lemma_constant: bool,
}

impl Default for DecayOptions {
    fn default() -> Self {
        DecayOptions {
            exact_slices_up_to: 64,
            use_lemma_constant: true,
        }
    }
}

/// Smallest slice index covered by the guaranteed 1/1000 share.
pub const LEMMA_MIN_SLICE: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecayReport {
    pub level: usize,
    pub lower: Rational,
    pub upper: Rational,
    /// Smallest `i0` with `1/i0 < upper - lower`.
    pub i0: u64,
    pub i_max: u64,
    /// `|I'| = upper - lower - 1/i0`.
    pub exceptional: Rational,
    /// `1/i_max`: slices past `i_max`, counted as fully surviving.
    pub tail: Rational,
    pub exact_credit: Rational,
    pub lemma_credit: Rational,
    pub exact_slices: u64,
    pub lemma_slices: u64,
    /// Slices whose competitors may collide with the cell's own denominators.
    pub blocked_slices: u64,
    pub enclosure: MeasureEnclosure,
    /// `enclosure.upper / |I|`.
    pub ratio: Rational,
    /// `tail <= |I| / 4000`.
    pub tail_controlled: bool,
    /// `i_max <= i0`: no slice was examined.
    pub i_max_too_small: bool,
}

/// Inclusive index ranges `[lo, hi]`.
type Ranges = Vec<(u64, u64)>;

/// Slices whose competitor denominators (between `i` and `i(i+1)`) might
/// coincide with a denominator of the cell's best representation. Such
/// slices get no credit.
fn blocked_ranges(rep: &EgyptianRep, lo: u64, hi: u64) -> Ranges {
    let mut ranges: Ranges = Vec::new();
    for d in rep.denominators() {
        // i ranges over [smallest i with i(i+1) >= d, d].
        let d_top = u64::try_from(d).unwrap_or(u64::MAX);
        let mut i_min = (d_top as f64).sqrt() as u64;
        while i_min > 1 && i_min.saturating_mul(i_min - 1) >= d_top {
            i_min -= 1;
        }
        while (i_min as u128) * (i_min as u128 + 1) < d_top as u128 {
            i_min += 1;
        }
        let (a, b) = (i_min.max(lo), d_top.min(hi));
        if a <= b {
            ranges.push((a, b));
        }
    }
    ranges.sort_unstable();
    let mut merged: Ranges = Vec::new();
    for (a, b) in ranges {
        match merged.last_mut() {
            Some(last) if a <= last.1.saturating_add(1) => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    merged
}

/// `[lo, hi]` minus the blocked ranges.
fn unblocked(lo: u64, hi: u64, blocked: &Ranges) -> Ranges {
    let mut out = Vec::new();
    let mut start = lo;
    for &(a, b) in blocked {
        if b < start || a > hi {
            continue;
        }
        if a > start {
            out.push((start, a - 1));
        }
        start = b.saturating_add(1);
    }
    if start <= hi {
        out.push((start, hi));
    }
    out
}

fn count(ranges: &Ranges) -> u64 {
    ranges.iter().map(|(a, b)| b - a + 1).sum()
}

/// `Σ_{i=a}^{b} 1/((i-1)i) = 1/(a-1) - 1/b`.
fn slice_lengths_sum(a: u64, b: u64) -> Rational {
    Rational::ratio(1, a - 1) - Rational::ratio(1, b)
}

/// Upper bound on the part of the bounded cell `(q, r]` that can continue a
/// chain through levels `t+1` and `t+2`.
///
/// The cell splits into `I' = (q + 1/i0, r]` and the slices
/// `I_i = q + (1/i, 1/(i-1)]` for `i > i0`. A chain survivor in `I_i` has
/// `y - q` with greedy best two-term underapproximation, so the non-greedy
/// part of each slice is removed: exactly for small `i`, and as the
/// guaranteed 1/1000 share for `i >= 1000`. Slices past `i_max` are kept
/// whole, as is any slice whose competitors might reuse a denominator of
/// the cell's representation.
pub fn cell_decay_bound(cell: &Cell, i_max: u64, options: &DecayOptions) -> Result<DecayReport> {
    let Some(r) = cell.upper.clone() else {
        return Err(Error::invalid("decay bound needs a bounded cell"));
    };
    let q = cell.lower.clone();
    let length = &r - &q;
    let i0 = u64::try_from(&smallest_unit_below(&length))
        .map_err(|_| Error::invalid("cell too short for 64-bit slice indices"))?;
    let exceptional = &length - Rational::ratio(1, i0);
    let i_max_too_small = i_max <= i0;

    let mut exact_credit = Rational::zero();
    let mut lemma_credit = Rational::zero();
    let (mut exact_slices, mut lemma_slices, mut blocked_slices) = (0u64, 0u64, 0u64);
    if !i_max_too_small {
        let first = i0 + 1;
        let blocked = blocked_ranges(&cell.best_rep, first, i_max);
        blocked_slices = count(&blocked);

        let exact_hi = options.exact_slices_up_to.min(i_max);
        if first <= exact_hi {
            let free = unblocked(first, exact_hi, &blocked);
            exact_slices = count(&free);
            let indices: Vec<u64> = free.iter().flat_map(|&(a, b)| a..=b).collect();
            let measures = indices
                .into_par_iter()
                .map(nongreedy_two_term_measure)
                .collect::<Result<Vec<_>>>()?;
            exact_credit = measures.into_iter().sum();
        }

        let lemma_lo = first
            .max(LEMMA_MIN_SLICE)
            .max(options.exact_slices_up_to + 1);
        if options.use_lemma_constant && lemma_lo <= i_max {
            let free = unblocked(lemma_lo, i_max, &blocked);
            lemma_slices = count(&free);
            let covered: Rational = free.iter().map(|&(a, b)| slice_lengths_sum(a, b)).sum();
            lemma_credit = Rational::ratio(1, 1000) * covered;
        }
    }

    let upper = &length - &exact_credit - &lemma_credit;
    let tail = Rational::ratio(1, i_max.max(1));
    let ratio = &upper / &length;
    let tail_controlled = Rational::from(4000u64) * &tail <= length;
    Ok(DecayReport {
        level: cell.level,
        lower: q,
        upper: r,
        i0,
        i_max,
        exceptional,
        tail,
        exact_credit,
        lemma_credit,
        exact_slices,
        lemma_slices,
        blocked_slices,
        enclosure: MeasureEnclosure {
            lower: Rational::zero(),
            upper,
        },
        ratio,
        tail_controlled,
        i_max_too_small,
    })
}

/// The regions of `cell` that [`cell_decay_bound`] removes exactly, as
/// absolute intervals `(lo, hi]`. Slices credited through the 1/1000 share
/// have no explicit region and are not listed.
pub fn certified_nongreedy_regions(
    cell: &Cell,
    i_max: u64,
    options: &DecayOptions,
) -> Result<Vec<(Rational, Rational)>> {
    let Some(r) = cell.upper.clone() else {
        return Err(Error::invalid("decay bound needs a bounded cell"));
    };
    let q = &cell.lower;
    let length = &r - q;
    let i0 = u64::try_from(&smallest_unit_below(&length))
        .map_err(|_| Error::invalid("cell too short for 64-bit slice indices"))?;
    let exact_hi = options.exact_slices_up_to.min(i_max);
    if i0 + 1 > exact_hi {
        return Ok(Vec::new());
    }
    let blocked = blocked_ranges(&cell.best_rep, i0 + 1, exact_hi);
    let mut regions = Vec::new();
    for (a, b) in unblocked(i0 + 1, exact_hi, &blocked) {
        for i in a..=b {
            for (lo, hi) in nongreedy_two_term_intervals(i)? {
                regions.push((q + &lo, q + &hi));
            }
        }
    }
    Ok(regions)
}

/// Total length of the slices `i0+1 ..= i_max` of a cell of the given length.
pub fn slices_total(i0: u64, i_max: u64) -> Rational {
    if i_max <= i0 {
        Rational::zero()
    } else {
        slice_lengths_sum(i0 + 1, i_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemma1::slice_length;
    use crate::partition::cell_of;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn chain_fixtures() {
        let r = chain_check(&q("1"), 0, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.diffs, vec![q("1/2"), q("1/3"), q("1/7"), q("1/43")]);
        assert_eq!(r.base_rep, Some(EgyptianRep::empty()));

        let r = chain_check(&q("11/24"), 1, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.failure_level, Some(2));
        assert_eq!(r.best_values, vec![q("1/3"), q("9/20")]);
        assert_eq!(r.diffs, vec![q("7/60")]);

        let r = chain_check(&q("1/5"), 0, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn chain_preconditions() {
        assert!(chain_check(&q("1"), 2, 2).is_err());
        assert!(chain_check(&q("2"), 1, 3).is_err());
        assert!(chain_check(&q("0"), 0, 3).is_err());
    }

    #[test]
    fn chain_base_uses_small_denominators() {
        let r = chain_check(&q("1"), 2, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.base_rep, Some(EgyptianRep::from_u64s(&[2, 3]).unwrap()));
    }

    #[test]
    fn wilson_known_values() {
        // 50/100 at z = 1.96: center 0.5, half-width about 0.0962.
        let (lo, hi) = wilson_interval(50, 100, 1.96);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
        assert_eq!(wilson_interval(0, 0, Z_99), (0.0, 1.0));
        let (lo, hi) = wilson_interval(0, 10, Z_99);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 1.0);
    }

    #[test]
    fn sampling_is_deterministic_and_validated() {
        let cfg = SearchConfig::default();
        let a = sample_chain_density(1, 2, 50, 42, 32, &cfg).unwrap();
        let b = sample_chain_density(1, 2, 50, 42, 32, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.passed + a.failed + a.undecided, 50);
        assert!(a.fraction >= Rational::zero() && a.fraction <= Rational::one());
        assert!(sample_chain_density(2, 2, 10, 1, 32, &cfg).is_err());
        assert!(sample_chain_density(1, 2, 10, 1, 8, &cfg).is_err());
        assert!(dyadic_samples(&q("3/2"), 200, 7, 16)
            .iter()
            .all(|x| x.is_positive() && *x <= q("3/2")));
    }

    #[test]
    fn decay_bound_shapes() {
        // (1/3, 1/2] at level 1: i0 = 7.
        let cell = cell_of(&q("1/2"), 1).unwrap();
        let weak = cell_decay_bound(&cell, 8, &DecayOptions::default()).unwrap();
        assert_eq!(weak.i0, 7);
        assert!(weak.enclosure.upper <= q("1/6"));
        assert_eq!(weak.exact_credit, nongreedy_two_term_measure(8).unwrap());
        let none = cell_decay_bound(&cell, 7, &DecayOptions::default()).unwrap();
        assert!(none.i_max_too_small);
        assert_eq!(none.enclosure.upper, q("1/6"));
        assert!(cell_decay_bound(
            &crate::partition::Cell::unbounded(1),
            100,
            &DecayOptions::default()
        )
        .is_err());
    }

    #[test]
    fn blocked_ranges_cover_competitor_collisions() {
        let rep = EgyptianRep::from_u64s(&[2, 34]).unwrap();
        // 34 lies in [i, i(i+1)] for i = 6..=34.
        assert_eq!(blocked_ranges(&rep, 1, 1000), vec![(1, 2), (6, 34)]);
        assert_eq!(
            unblocked(1, 40, &vec![(1, 2), (6, 34)]),
            vec![(3, 5), (35, 40)]
        );
    }

    #[test]
    fn slice_sums_telescope() {
        let direct: Rational = (5..=40u64).map(slice_length).sum();
        assert_eq!(slices_total(4, 40), direct);
    }
}
