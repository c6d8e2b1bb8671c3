//! Exact rationals and Egyptian representations.
//!
//! Everything in the crate is computed with unbounded integers; nothing is
//! ever rounded. [`Rational`] is a thin newtype over malachite's rational so
//! that the serialized form (`"p/q"`) and the helper vocabulary (unit
//! fractions, floors of reciprocals, exact bulk sums) live in one place.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite::num::arithmetic::traits::{Ceiling, Floor, Reciprocal};
use malachite::num::basic::traits::{One, Zero};
use malachite::num::conversion::traits::RoundingFrom;
use malachite::rounding_modes::RoundingMode;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

pub use malachite::{Integer, Natural};

use crate::error::{Error, Result};

/// Exact reduced fraction with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(malachite::Rational);

impl Rational {
    pub fn zero() -> Self {
        Rational(malachite::Rational::ZERO)
    }

    pub fn one() -> Self {
        Rational(malachite::Rational::ONE)
    }

    pub fn from_integer(n: impl Into<Integer>) -> Self {
        Rational(malachite::Rational::from(n.into()))
    }

    /// `num / den`, reduced. Panics if `den` is zero.
    pub fn ratio(num: impl Into<Integer>, den: impl Into<Integer>) -> Self {
        let den = den.into();
        assert!(den != 0u32, "zero denominator");
        Rational(malachite::Rational::from_integers(num.into(), den))
    }

    /// `1/m`. Panics if `m` is zero.
    pub fn unit(m: &Natural) -> Self {
        assert!(*m != 0u32, "unit fraction with zero denominator");
        Rational(malachite::Rational::from_naturals_ref(&Natural::ONE, m))
    }

    pub fn numerator(&self) -> Integer {
        let n = Integer::from(self.0.numerator_ref().clone());
        if self.0 < 0u32 {
            -n
        } else {
            n
        }
    }

    pub fn denominator(&self) -> &Natural {
        self.0.denominator_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0u32
    }

    pub fn is_positive(&self) -> bool {
        self.0 > 0u32
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denominator_ref() == 1u32
    }

    pub fn floor(&self) -> Integer {
        (&self.0).floor()
    }

    pub fn ceil(&self) -> Integer {
        (&self.0).ceiling()
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational((&self.0).reciprocal()))
        }
    }

    pub fn abs(&self) -> Rational {
        if self.0 < 0u32 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// `Some(m)` when the value is exactly `1/m`.
    pub fn unit_denominator(&self) -> Option<Natural> {
        if *self.0.numerator_ref() == 1u32 && self.0 > 0u32 {
            Some(self.0.denominator_ref().clone())
        } else {
            None
        }
    }

    /// Fractional part `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        self - &Rational::from_integer(self.floor())
    }

    /// Nearest `f64`; for display and statistics only.
    pub fn to_f64(&self) -> f64 {
        f64::rounding_from(&self.0, RoundingMode::Nearest).0
    }

    /// The exact value of a finite `f64`.
    pub fn from_f64(x: f64) -> Option<Rational> {
        malachite::Rational::try_from(x).ok().map(Rational)
    }

    pub fn min(self, other: Rational) -> Rational {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Rational) -> Rational {
        std::cmp::max(self, other)
    }

    pub fn as_malachite(&self) -> &malachite::Rational {
        &self.0
    }
}

/// `floor(1/gap) + 1`: the smallest `m` with `1/m < gap`. `gap` must be positive.
pub(crate) fn smallest_unit_below(gap: &Rational) -> Natural {
    debug_assert!(gap.is_positive());
    let recip = gap.recip().expect("positive gap");
    Natural::try_from(recip.floor()).expect("positive") + Natural::ONE
}

/// `ceil(1/gap)`: the smallest `m` with `1/m <= gap`. `gap` must be positive.
pub(crate) fn smallest_unit_at_most(gap: &Rational) -> Natural {
    debug_assert!(gap.is_positive());
    let recip = gap.recip().expect("positive gap");
    Natural::try_from(recip.ceil()).expect("positive")
}

pub(crate) fn nat(n: u64) -> Natural {
    Natural::from(n)
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational(malachite::Rational::from(n))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(malachite::Rational::from(n))
    }
}

impl From<Natural> for Rational {
    fn from(n: Natural) -> Self {
        Rational(malachite::Rational::from(n))
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational(malachite::Rational::from(n))
    }
}

impl From<malachite::Rational> for Rational {
    fn from(r: malachite::Rational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let parse_err = || Error::Parse {
            input: s.to_string(),
        };
        if t.is_empty() || t.starts_with('+') || t.contains(char::is_whitespace) {
            return Err(parse_err());
        }
        malachite::Rational::from_str(t)
            .map(Rational)
            .map_err(|_| parse_err())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl PartialEq<u64> for Rational {
    fn eq(&self, other: &u64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<u64> for Rational {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        sum_exact(iter.collect())
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        sum_exact(iter.cloned().collect())
    }
}

/// Exact sum of many fractions.
///
/// Pairs are combined in a balanced tree without intermediate reduction and
/// the result is reduced once at the end. Sequential summation with a gcd
/// per step is quadratic in the final size, which matters once the common
/// denominator reaches millions of bits.
pub fn sum_exact(terms: Vec<Rational>) -> Rational {
    let parts = terms
        .into_iter()
        .map(|r| (r.numerator(), Integer::from(r.denominator().clone())))
        .collect::<Vec<_>>();
    sum_fraction_parts(parts)
}

/// Exact sum of `num / den` pairs (`den > 0`), reduced once at the end.
pub fn sum_fraction_parts(parts: Vec<(Integer, Integer)>) -> Rational {
    fn tree(parts: &[(Integer, Integer)]) -> (Integer, Integer) {
        match parts.len() {
            0 => (Integer::ZERO, Integer::ONE),
            1 => parts[0].clone(),
            len => {
                let (a, b) = tree(&parts[..len / 2]);
                let (c, d) = tree(&parts[len / 2..]);
                if b == d {
                    (a + c, b)
                } else {
                    (a * &d + c * &b, b * d)
                }
            }
        }
    }
    let (num, den) = tree(&parts);
    Rational::ratio(num, den)
}

/// Strictly increasing list of positive denominators `m_1 < … < m_n`,
/// standing for `1/m_1 + … + 1/m_n`. The empty list stands for 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EgyptianRep(Vec<Natural>);

impl EgyptianRep {
    pub fn empty() -> Self {
        EgyptianRep(Vec::new())
    }

    pub fn new(denominators: Vec<Natural>) -> Result<Self> {
        if let Some(first) = denominators.first() {
            if *first == 0u32 {
                return Err(Error::invalid("denominators must be positive"));
            }
        }
        if let Some(w) = denominators.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "denominators must be strictly increasing, found {} then {}",
                w[0], w[1]
            )));
        }
        Ok(EgyptianRep(denominators))
    }

    pub fn from_u64s(denominators: &[u64]) -> Result<Self> {
        Self::new(denominators.iter().map(|&d| Natural::from(d)).collect())
    }

    /// Caller guarantees the invariant.
    pub(crate) fn from_vec_unchecked(denominators: Vec<Natural>) -> Self {
        debug_assert!(denominators.windows(2).all(|w| w[0] < w[1]));
        EgyptianRep(denominators)
    }

    pub fn denominators(&self) -> &[Natural] {
        &self.0
    }

    pub fn into_denominators(self) -> Vec<Natural> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_denominator(&self) -> Option<&Natural> {
        self.0.last()
    }

    pub fn contains(&self, m: &Natural) -> bool {
        self.0.binary_search(m).is_ok()
    }

    /// The first `n` terms.
    pub fn prefix(&self, n: usize) -> EgyptianRep {
        EgyptianRep(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn value(&self) -> Rational {
        sum_fraction_parts(
            self.0
                .iter()
                .map(|m| (Integer::ONE, Integer::from(m.clone())))
                .collect(),
        )
    }

    /// Denominators joined by single spaces, as used in CSV output.
    pub fn to_spaced_string(&self) -> String {
        self.0
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for EgyptianRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, m) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

// Denominators are unbounded, so they go out as raw JSON numbers of any size.
impl Serialize for EgyptianRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for m in &self.0 {
            let number =
                serde_json::Number::from_str(&m.to_string()).map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&number)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for EgyptianRep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let numbers = Vec::<serde_json::Number>::deserialize(deserializer)?;
        let denominators = numbers
            .iter()
            .map(|n| Natural::from_str(&n.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| de::Error::custom("denominators must be nonnegative integers"))?;
        EgyptianRep::new(denominators).map_err(de::Error::custom)
    }
}

/// Exact value of a denominator list, validating strict increase.
pub fn rep_value(denominators: &[Natural]) -> Result<Rational> {
    Ok(EgyptianRep::new(denominators.to_vec())?.value())
}

/// `H_n = 1 + 1/2 + … + 1/n`; `H_0 = 0`.
pub fn harmonic(n: u64) -> Rational {
    sum_fraction_parts((1..=n).map(|k| (Integer::ONE, Integer::from(k))).collect())
}
