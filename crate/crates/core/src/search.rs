//! Exact combinatorial searches over Egyptian sums.
//!
//! * [`best_underapprox`]: the largest `n`-term sum strictly below `x`,
//!   by depth-first branch and bound seeded with the greedy sum.
//! * [`has_representation`]: exhaustive test for a `j`-term representation.
//! * [`next_point_above`]: the smallest sum of at most `n` terms strictly
//!   above a best value, i.e. the right endpoint of its partition cell.
//!
//! Every search is exact. When the configured node budget runs out the
//! search fails with [`Error::BudgetExhausted`]; it never returns a
//! truncated answer.

use malachite::num::arithmetic::traits::Abs;
use malachite::num::basic::traits::One;

use crate::arith::{
    harmonic, nat, smallest_unit_at_most, smallest_unit_below, EgyptianRep, Integer, Natural,
    Rational,
};
use crate::error::{Error, Result};
use crate::greedy::{greedy_with_gap, DEFAULT_MAX_GREEDY_TERMS};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Resource limits shared by all searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of node expansions per search call.
    pub node_budget: u64,
    /// Maximum number of terms for greedy seeds and best searches.
    pub max_terms: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            max_terms: DEFAULT_MAX_GREEDY_TERMS,
        }
    }
}

impl SearchConfig {
    pub fn with_node_budget(node_budget: u64) -> Self {
        SearchConfig {
            node_budget,
            ..SearchConfig::default()
        }
    }
}

/// Best `n`-term underapproximation together with its canonical witness.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BestApprox {
    pub value: Rational,
    pub rep: EgyptianRep,
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { used: 0, limit }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExhausted { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// `1/m + 1/(m+1) + … + 1/(m+count-1)`.
fn harmonic_block(m: &Natural, count: usize) -> Rational {
    let mut total = Rational::zero();
    let mut d = m.clone();
    for _ in 0..count {
        total += Rational::unit(&d);
        d += Natural::ONE;
    }
    total
}

/// Two-term tails `1/u + 1/v` with `u < v` measured against a gap `g = a/b`.
///
/// With `U = |a u - b|` and `V = |a v - b|`, the distance `|g - 1/u - 1/v|`
/// equals `N a² / (b (U + b)(V + b))` for a positive integer `N`, and the
/// partner `v` closest to `g` from either side has `V <= b²/U + a`. So the
/// distance is at least `a² U / (b (U + b)(b² + (a + b) U))`, a function that
/// rises and then falls in `U`: over a range of `u` it is smallest at an end.
struct PairBound {
    a: Integer,
    b: Integer,
}

impl PairBound {
    fn new(gap: &Rational) -> Self {
        PairBound {
            a: gap.numerator().abs(),
            b: Integer::from(gap.denominator().clone()),
        }
    }

    fn big_u(&self, u: &Natural) -> Integer {
        (&self.a * Integer::from(u.clone()) - &self.b).abs()
    }

    /// Whether every first term in `first..=last` stays at least `target` away.
    fn rules_out(&self, first: &Natural, last: &Natural, target: &Rational) -> bool {
        target.is_positive()
            && distance_floor_at_least(&self.a, &self.b, &self.big_u(first), target)
            && distance_floor_at_least(&self.a, &self.b, &self.big_u(last), target)
    }

    /// The same for three-term tails `1/m + 1/u + 1/v` with `m` in
    /// `first..=last`. After `m` the gap is `U/B` with `U = |a m - b|` and
    /// `B = b m`; its pairs have `1 <= U' < B`, so the pair floor over that
    /// range is its value at `U' = 1` or `U' = B`. That minimum grows with `U`
    /// and shrinks with `B`, so the smallest `U` and largest `B` bound it.
    fn rules_out_triple(&self, first: &Natural, last: &Natural, target: &Rational) -> bool {
        if !target.is_positive() {
            return false;
        }
        let u = self.big_u(first);
        let b = &self.b * Integer::from(last.clone());
        distance_floor_at_least(&u, &b, &Integer::from(1), target)
            && distance_floor_at_least(&u, &b, &b, target)
    }
}

/// `a² U / (b (U + b)(b² + (a + b) U)) >= target`.
fn distance_floor_at_least(a: &Integer, b: &Integer, big_u: &Integer, target: &Rational) -> bool {
    let lhs = a * a * big_u * Integer::from(target.denominator().clone());
    let rhs = target.numerator() * b * (big_u + b) * (b * b + (a + b) * big_u);
    lhs >= rhs
}

pub fn best_underapprox(x: &Rational, n: usize) -> Result<BestApprox> {
    best_underapprox_with(x, n, &SearchConfig::default())
}

/// Largest sum of `n` distinct unit fractions strictly below `x`.
///
/// Among representations of the optimal value the lexicographically smallest
/// denominator tuple is returned. The greedy tuple is the lexicographic
/// minimum of all admissible tuples, and the depth-first walk visits tuples in
/// lexicographic order replacing the incumbent only on strict improvement, so
/// the first optimal tuple reached is the canonical one.
pub fn best_underapprox_with(x: &Rational, n: usize, config: &SearchConfig) -> Result<BestApprox> {
    if !x.is_positive() {
        return Err(Error::invalid(format!("target must be positive, got {x}")));
    }
    if n == 0 {
        return Ok(BestApprox {
            value: Rational::zero(),
            rep: EgyptianRep::empty(),
        });
    }
    if n > config.max_terms {
        return Err(Error::TermLimit {
            requested: n,
            limit: config.max_terms,
        });
    }
    let h = harmonic(n as u64);
    if *x > h {
        return Ok(BestApprox {
            value: h,
            rep: EgyptianRep::from_vec_unchecked((1..=n as u64).map(nat).collect()),
        });
    }

    best_search(x, n, None, config)
}

/// Like [`best_underapprox_with`], but starting from `seed` (an `n`-term
/// sum below `x`) when it beats the greedy sum. The witness is then not
/// necessarily the canonical one.
pub(crate) fn best_underapprox_seeded(
    x: &Rational,
    n: usize,
    seed: EgyptianRep,
    config: &SearchConfig,
) -> Result<BestApprox> {
    debug_assert!(seed.len() == n && seed.value() < *x);
    let h = harmonic(n as u64);
    if n == 0 || *x > h {
        return best_underapprox_with(x, n, config);
    }
    best_search(x, n, Some(seed), config)
}

fn best_search(
    x: &Rational,
    n: usize,
    seed: Option<EgyptianRep>,
    config: &SearchConfig,
) -> Result<BestApprox> {
    let (greedy, gap) = greedy_with_gap(x, n, config.max_terms)?;
    let (mut best_value, mut best_rep) = (x - &gap, greedy.into_denominators());
    if let Some(seed) = seed {
        let value = seed.value();
        if value > best_value {
            best_value = value;
            best_rep = seed.into_denominators();
        }
    }
    let mut search = BestSearch {
        x,
        n,
        best_value,
        best_rep,
        stack: Vec::with_capacity(n),
        budget: Budget::new(config.node_budget),
    };
    search.descend(&Rational::zero(), &Natural::from(0u32))?;
    Ok(BestApprox {
        value: search.best_value,
        rep: EgyptianRep::from_vec_unchecked(search.best_rep),
    })
}

struct BestSearch<'a> {
    x: &'a Rational,
    n: usize,
    best_value: Rational,
    best_rep: Vec<Natural>,
    stack: Vec<Natural>,
    budget: Budget,
}

impl BestSearch<'_> {
    fn descend(&mut self, partial: &Rational, last: &Natural) -> Result<()> {
        let remaining = self.n - self.stack.len();
        let gap = self.x - partial;
        let floor_bound = smallest_unit_below(&gap);
        let mut m = if floor_bound > *last {
            floor_bound
        } else {
            last + Natural::ONE
        };

        if remaining == 1 {
            // The smallest admissible denominator is the best completion.
            self.budget.tick()?;
            let value = partial + Rational::unit(&m);
            if value > self.best_value {
                self.best_value = value;
                self.best_rep = self.stack.clone();
                self.best_rep.push(m);
            }
            return Ok(());
        }
        if remaining == 2 {
            return self.pair_stage(partial, &gap, m);
        }

        let pair = (remaining <= 3).then(|| PairBound::new(&gap));
        loop {
            // Every term after m is below 1/m, so the subtree cannot beat the
            // incumbent once m >= remaining / (incumbent - partial). The
            // harmonic block below is the sharper form of the same bound and
            // both decrease in m.
            let slack = &self.best_value - partial;
            if slack.is_positive()
                && Rational::from(m.clone()) * &slack >= Rational::from(remaining as u64)
            {
                break;
            }
            if partial + harmonic_block(&m, remaining) <= self.best_value {
                break;
            }
            if let Some(pair) = pair.as_ref().filter(|_| slack.is_positive()) {
                let last_m = Natural::try_from((Rational::from(remaining as u64) / &slack).floor())
                    .expect("positive");
                let target = self.x - &self.best_value;
                let done = if remaining == 2 {
                    pair.rules_out(&m, &last_m, &target)
                } else {
                    pair.rules_out_triple(&m, &last_m, &target)
                };
                if done {
                    break;
                }
            }
            self.budget.tick()?;
            let child = partial + Rational::unit(&m);
            self.stack.push(m.clone());
            self.descend(&child, &m)?;
            self.stack.pop();
            m += Natural::ONE;
        }
        Ok(())
    }

    /// The last two terms, in integers: with `gap = a/b` and first term
    /// `1/u`, the best partner is `v = max(u + 1, floor(b u / (a u - b)) + 1)`
    /// and the deficit is `(a u v - b (u + v)) / (b u v)`.
    fn pair_stage(&mut self, partial: &Rational, gap: &Rational, first: Natural) -> Result<()> {
        let bound = PairBound::new(gap);
        let (a, b) = (&bound.a, &bound.b);
        let one = Integer::from(1);
        let mut u = Integer::from(first);
        let mut big_u = a * &u - b;
        loop {
            let delta = self.x - &self.best_value;
            let slack = gap - &delta;
            if slack.is_positive() {
                let (sn, sd) = (
                    slack.numerator(),
                    Integer::from(slack.denominator().clone()),
                );
                // u slack >= 2, or 1/u + 1/(u+1) <= slack.
                if &u * &sn >= Integer::from(2) * &sd
                    || (Integer::from(2) * &u + &one) * &sd <= &sn * &u * (&u + &one)
                {
                    break;
                }
                let last_u =
                    Natural::try_from((Rational::from(2u64) / &slack).floor()).expect("positive");
                let first_u = Natural::try_from(u.clone()).expect("positive");
                if bound.rules_out(&first_u, &last_u, &delta) {
                    break;
                }
            }
            let (dn, dd) = (
                delta.numerator(),
                Integer::from(delta.denominator().clone()),
            );
            let scan_end = u.clone() + Integer::from(64);
            while u < scan_end {
                self.budget.tick()?;
                let v = (b * &u / &big_u + &one).max(&u + &one);
                let buv = b * &u * &v;
                let deficit = a * &u * &v - b * (&u + &v);
                if deficit * &dd < &dn * &buv {
                    let (un, vn) = (
                        Natural::try_from(u.clone()).expect("positive"),
                        Natural::try_from(v).expect("positive"),
                    );
                    self.best_value = partial + Rational::unit(&un) + Rational::unit(&vn);
                    self.best_rep = self.stack.clone();
                    self.best_rep.push(un);
                    self.best_rep.push(vn);
                    u += &one;
                    big_u += a;
                    break;
                }
                u += &one;
                big_u += a;
            }
        }
        Ok(())
    }
}

pub fn has_representation(
    q: &Rational,
    j: usize,
    max_denom: Option<&Natural>,
) -> Result<Option<EgyptianRep>> {
    has_representation_with(q, j, max_denom, &SearchConfig::default())
}

/// A `j`-term representation of `q` with all denominators at most
/// `max_denom`, if one exists. The witness is the lexicographically smallest.
pub fn has_representation_with(
    q: &Rational,
    j: usize,
    max_denom: Option<&Natural>,
    config: &SearchConfig,
) -> Result<Option<EgyptianRep>> {
    if !q.is_positive() {
        return Err(Error::invalid(format!(
            "represented value must be positive, got {q}"
        )));
    }
    if j == 0 {
        return Err(Error::invalid("number of terms must be positive"));
    }
    RepSearch::new(q, max_denom, false, config).run(q, j)
}

/// Some representation of `q` with at most `n` terms, if one exists.
pub(crate) fn short_representation(
    q: &Rational,
    n: usize,
    config: &SearchConfig,
) -> Result<Option<EgyptianRep>> {
    RepSearch::new(q, None, true, config).run(q, n)
}

/// Smallest sum of at most `n` distinct unit fractions that is `>= x`, for
/// `0 < x < H_n`.
pub(crate) fn min_sum_at_least(x: &Rational, n: usize, config: &SearchConfig) -> Result<Rational> {
    if short_representation(x, n, config)?.is_some() {
        return Ok(x.clone());
    }
    min_sum_above(x, n, config)
}

struct RepSearch<'a> {
    cap: Option<&'a Natural>,
    at_most: bool,
    stack: Vec<Natural>,
    // Prime divisors of the target's denominator and of each stacked term;
    // `None` where trial division gave up.
    base_primes: Option<Vec<u64>>,
    term_primes: Vec<Option<Vec<u64>>>,
    budget: Budget,
}

impl<'a> RepSearch<'a> {
    fn new(q: &Rational, cap: Option<&'a Natural>, at_most: bool, config: &SearchConfig) -> Self {
        RepSearch {
            cap,
            at_most,
            stack: Vec::new(),
            base_primes: u64::try_from(q.denominator()).ok().and_then(prime_divisors),
            term_primes: Vec::new(),
            budget: Budget::new(config.node_budget),
        }
    }

    fn run(mut self, q: &Rational, terms: usize) -> Result<Option<EgyptianRep>> {
        let found = self.find(q, terms, &Natural::from(0u32))?;
        Ok(found.then(|| EgyptianRep::from_vec_unchecked(self.stack)))
    }

    fn fits_cap(&self, m: &Natural) -> bool {
        self.cap.map_or(true, |c| m <= c)
    }

    fn push(&mut self, m: Natural) {
        self.term_primes
            .push(u64::try_from(&m).ok().and_then(prime_divisors));
        self.stack.push(m);
    }

    fn pop(&mut self) {
        self.stack.pop();
        self.term_primes.pop();
    }

    fn find(&mut self, rest: &Rational, terms: usize, last: &Natural) -> Result<bool> {
        self.budget.tick()?;
        if terms == 1 || self.at_most {
            if let Some(m) = rest.unit_denominator() {
                if m > *last && self.fits_cap(&m) {
                    self.push(m);
                    return Ok(true);
                }
            }
            if terms == 1 {
                return Ok(false);
            }
        }
        if terms == 2 {
            if let Some(pair) = self.pair_by_divisors(rest, last) {
                return Ok(match pair {
                    Some((u, v)) => {
                        self.push(u);
                        self.push(v);
                        true
                    }
                    None => false,
                });
            }
        }
        // The largest of `terms` unit fractions summing to `rest` is at least
        // rest/terms, so the next denominator is at most terms/rest.
        let lo = std::cmp::max(last + Natural::ONE, smallest_unit_at_most(rest));
        let mut hi =
            Natural::try_from((Rational::from(terms as u64) / rest).floor()).expect("positive");
        if let Some(cap) = self.cap {
            if *cap < hi {
                hi = cap.clone();
            }
        }
        let mut m = lo;
        while m <= hi {
            let next = rest - Rational::unit(&m);
            if next.is_positive() {
                self.push(m.clone());
                if self.find(&next, terms - 1, &m)? {
                    return Ok(true);
                }
                self.pop();
            }
            m += Natural::ONE;
        }
        Ok(false)
    }

    /// Solves `1/u + 1/v = a/b` with `last < u < v` through
    /// `(a u - b)(a v - b) = b^2`, returning the solution with the smallest `u`.
    /// `None` when `b` cannot be factored from the known primes.
    fn pair_by_divisors(
        &self,
        rest: &Rational,
        last: &Natural,
    ) -> Option<Option<(Natural, Natural)>> {
        let a = u128::try_from(&Natural::try_from(rest.numerator()).ok()?).ok()?;
        let b = u64::try_from(rest.denominator()).ok()? as u128;
        let mut primes: Vec<u64> = self.base_primes.clone()?;
        for p in &self.term_primes {
            primes.extend(p.as_ref()?);
        }
        primes.sort_unstable();
        primes.dedup();
        let mut factors = Vec::new();
        let mut left = b;
        for &p in &primes {
            let p = p as u128;
            let mut e = 0;
            while left % p == 0 {
                left /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, 2 * e));
            }
        }
        if left != 1 {
            return None;
        }
        let mut divisors = vec![1u128];
        for (p, e) in factors {
            let len = divisors.len();
            let mut power = 1u128;
            for _ in 0..e {
                power *= p;
                for i in 0..len {
                    match divisors[i].checked_mul(power) {
                        Some(d) if d < b => divisors.push(d),
                        _ => {}
                    }
                }
            }
        }
        divisors.sort_unstable();
        let last = u128::try_from(last).unwrap_or(u128::MAX);
        for d in divisors {
            // d < b keeps u < v.
            if d >= b || (d + b) % a != 0 {
                continue;
            }
            let u = (d + b) / a;
            let v = (b * b / d + b) / a;
            if u <= last {
                continue;
            }
            let (u, v) = (Natural::from(u), Natural::from(v));
            if self.fits_cap(&v) {
                return Some(Some((u, v)));
            }
        }
        Some(None)
    }
}

/// Distinct prime divisors of `n` by trial division up to 2^20, or `None`
/// if a cofactor above 2^40 is left.
fn prime_divisors(mut n: u64) -> Option<Vec<u64>> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if p > 1 << 20 {
            return None;
        }
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        primes.push(n);
    }
    Some(primes)
}

pub fn next_point_above(q: &Rational, n: usize) -> Result<Rational> {
    next_point_above_with(q, n, &SearchConfig::default())
}

/// Smallest Egyptian sum of at most `n` terms strictly greater than `q`.
///
/// `q` must be a possible best `n`-term value: positive, below `H_n`, and not
/// representable with fewer than `n` terms. A shorter representation is
/// reported as [`Error::ShorterRepresentation`] with the witness.
pub fn next_point_above_with(q: &Rational, n: usize, config: &SearchConfig) -> Result<Rational> {
    validate_point_above_input(q, n)?;
    for j in 1..n {
        if let Some(witness) = has_representation_with(q, j, None, config)? {
            return Err(Error::ShorterRepresentation {
                value: q.clone(),
                witness,
            });
        }
    }
    min_sum_above(q, n, config)
}

fn validate_point_above_input(q: &Rational, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    if !q.is_positive() {
        return Err(Error::invalid(format!(
            "{q} is not a left endpoint of a bounded cell (sums accumulate at 0)"
        )));
    }
    if *q >= harmonic(n as u64) {
        return Err(Error::invalid(format!(
            "{q} is at or above H_{n}; the cell above it is unbounded"
        )));
    }
    Ok(())
}

/// The cell search for a value already known to be a best value, e.g. one
/// produced by [`best_underapprox`].
pub(crate) fn min_sum_above(q: &Rational, n: usize, config: &SearchConfig) -> Result<Rational> {
    validate_point_above_input(q, n)?;
    let mut search = AboveSearch {
        q,
        n,
        best: None,
        stack: Vec::with_capacity(n),
        budget: Budget::new(config.node_budget),
    };
    search.descend(&Rational::zero(), &Natural::from(0u32))?;
    Ok(search.best.expect("H_n lies above q"))
}

struct AboveSearch<'a> {
    q: &'a Rational,
    n: usize,
    best: Option<Rational>,
    stack: Vec<Natural>,
    budget: Budget,
}

impl AboveSearch<'_> {
    // Invariant: partial < q. A sum whose proper prefix already exceeds q is
    // never minimal, because that prefix is itself a shorter candidate.
    fn descend(&mut self, partial: &Rational, last: &Natural) -> Result<()> {
        self.budget.tick()?;
        let remaining = self.n - self.stack.len();
        let gap = self.q - partial;

        // Closing term: the largest m with 1/m > gap.
        let close = smallest_unit_at_most(&gap) - Natural::ONE;
        if close > *last {
            let candidate = partial + Rational::unit(&close);
            if self.best.as_ref().map_or(true, |b| candidate < *b) {
                self.best = Some(candidate);
            }
        }
        if remaining < 2 {
            return Ok(());
        }

        let mut m = std::cmp::max(last + Natural::ONE, smallest_unit_at_most(&gap));
        if remaining == 2 {
            return self.pair_stage(partial, &gap, m);
        }
        let pair = (remaining <= 3).then(|| PairBound::new(&gap));
        // Carrying the sum past q with `remaining` terms from m on needs m < remaining/gap.
        let last_m =
            Natural::try_from((Rational::from(remaining as u64) / &gap).floor()).expect("positive");
        loop {
            if let (Some(pair), Some(best)) = (&pair, &self.best) {
                let target = best - self.q;
                let done = if remaining == 2 {
                    pair.rules_out(&m, &last_m, &target)
                } else {
                    pair.rules_out_triple(&m, &last_m, &target)
                };
                if done {
                    break;
                }
            }
            let child = partial + Rational::unit(&m);
            if child == *self.q {
                let mut witness = self.stack.clone();
                witness.push(m);
                return Err(Error::ShorterRepresentation {
                    value: self.q.clone(),
                    witness: EgyptianRep::from_vec_unchecked(witness),
                });
            }
            // Later terms are all below 1/m; once they cannot carry the sum
            // past q, no larger m can either.
            if &child + harmonic_block(&(&m + Natural::ONE), remaining - 1) <= *self.q {
                break;
            }
            self.stack.push(m.clone());
            self.descend(&child, &m)?;
            self.stack.pop();
            m += Natural::ONE;
        }
        Ok(())
    }
    /// The last two terms, in integers: with `gap = a/b` and first term
    /// `1/u <= gap`, the closest partner from above is
    /// `v = ceil(b u / (a u - b)) - 1` and the overshoot is
    /// `(b (u + v) - a u v) / (b u v)`.
    fn pair_stage(&mut self, partial: &Rational, gap: &Rational, first: Natural) -> Result<()> {
        let bound = PairBound::new(gap);
        let (a, b) = (&bound.a, &bound.b);
        let one = Integer::from(1);
        let last_u = Natural::try_from((Rational::from(2u64) / gap).floor()).expect("positive");
        let mut u = Integer::from(first);
        let mut big_u = a * &u - b;
        loop {
            let target = self.best.as_ref().map(|best| best - self.q);
            if let Some(t) = &target {
                if bound.rules_out(&Natural::try_from(u.clone()).expect("positive"), &last_u, t) {
                    return Ok(());
                }
            }
            let parts = target.map(|t| (t.numerator(), Integer::from(t.denominator().clone())));
            let scan_end = u.clone() + Integer::from(64);
            while u < scan_end {
                self.budget.tick()?;
                if big_u == 0 {
                    let mut witness = self.stack.clone();
                    witness.push(Natural::try_from(u).expect("positive"));
                    return Err(Error::ShorterRepresentation {
                        value: self.q.clone(),
                        witness: EgyptianRep::from_vec_unchecked(witness),
                    });
                }
                // 1/u + 1/(u+1) <= gap: no partner carries the sum past q.
                if (Integer::from(2) * &u + &one) * b <= a * &u * (&u + &one) {
                    return Ok(());
                }
                let v = (b * &u + &big_u - &one) / &big_u - &one;
                if v > u {
                    let buv = b * &u * &v;
                    let over = b * (&u + &v) - a * &u * &v;
                    if parts
                        .as_ref()
                        .map_or(true, |(tn, td)| over * td < tn * &buv)
                    {
                        let (un, vn) = (
                            Natural::try_from(u.clone()).expect("positive"),
                            Natural::try_from(v).expect("positive"),
                        );
                        self.best = Some(partial + Rational::unit(&un) + Rational::unit(&vn));
                        u += &one;
                        big_u += a;
                        break;
                    }
                }
                u += &one;
                big_u += a;
            }
        }
    }
}
