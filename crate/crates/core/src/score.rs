//! Exact rational scores and the harmonic weights behind PAV.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Sub};
use std::str::FromStr;

/// Arbitrary-precision rational. Renders as `p/q` with `q > 0` always
/// present, so an integer score of four prints as `4/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ExactScore(BigRational);

impl ExactScore {
    pub fn zero() -> Self {
        ExactScore(BigRational::zero())
    }

    pub fn from_integer(n: i128) -> Self {
        ExactScore(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        ExactScore(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        ExactScore(BigRational::new(numer, denom))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// `H(p) = 1 + 1/2 + ... + 1/p`, with `H(0) = 0`.
pub fn harmonic(p: usize) -> ExactScore {
    let mut acc = BigRational::zero();
    for j in 1..=p {
        acc += BigRational::new(BigInt::one(), BigInt::from(j));
    }
    ExactScore(acc)
}

impl fmt::Display for ExactScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("malformed rational {0:?}: expected p/q")]
pub struct ParseScoreError(String);

impl FromStr for ExactScore {
    type Err = ParseScoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScoreError(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        Ok(ExactScore(BigRational::new(p, q)))
    }
}

impl Serialize for ExactScore {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScore {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScore {
            type Output = ExactScore;
            fn $method(self, rhs: ExactScore) -> ExactScore {
                ExactScore($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactScore> for &'a ExactScore {
            type Output = ExactScore;
            fn $method(self, rhs: &'a ExactScore) -> ExactScore {
                ExactScore($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign for ExactScore {
    fn add_assign(&mut self, rhs: ExactScore) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a ExactScore> for ExactScore {
    fn add_assign(&mut self, rhs: &'a ExactScore) {
        self.0 += &rhs.0;
    }
}

impl std::iter::Sum for ExactScore {
    fn sum<I: Iterator<Item = ExactScore>>(iter: I) -> Self {
        iter.fold(ExactScore::zero(), |a, b| a + b)
    }
}

/// Harmonic numbers scaled by `lcm(1..=depth)` so that every `H(p)` with
/// `p <= depth` is an integer. PAV inner loops compare these integers; the
/// result is converted back to an [`ExactScore`] at the boundary.
///
/// `depth <= 64` keeps the scale below 2^93, leaving ample headroom in `u128`
/// for sums over large electorates.
#[derive(Clone, Debug)]
pub struct ScaledHarmonic {
    scale: u128,
    table: Vec<u128>,
}

impl ScaledHarmonic {
    pub fn new(depth: usize) -> Self {
        assert!(
            depth <= crate::sets::MAX_CANDIDATES,
            "harmonic depth {depth} too large"
        );
        let scale = (1..=depth.max(1) as u128).fold(1u128, |acc, j| acc.lcm(&j));
        let mut table = Vec::with_capacity(depth + 1);
        let mut acc = 0u128;
        table.push(0);
        for j in 1..=depth as u128 {
            acc += scale / j;
            table.push(acc);
        }
        ScaledHarmonic { scale, table }
    }

    pub fn scale(&self) -> u128 {
        self.scale
    }

    pub fn depth(&self) -> usize {
        self.table.len() - 1
    }

    /// `H(p) * scale`.
    #[inline]
    pub fn h(&self, p: usize) -> u128 {
        self.table[p]
    }

    /// `scale / (r + 1)`: the scaled weight a voter with `r` approved members
    /// contributes when one more is added.
    #[inline]
    pub fn marginal(&self, r: usize) -> u128 {
        self.table[r + 1] - self.table[r]
    }

    pub fn to_exact(&self, scaled: u128) -> ExactScore {
        ExactScore::from_big(BigInt::from(scaled), BigInt::from(self.scale))
    }
}
