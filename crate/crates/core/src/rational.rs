//! Exact rationals, extended by `+∞`, and the rational vector type used for
//! weights and polytope points.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::SubsetMask;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"` (or `"p"`) rendering used on the wire.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        location: format!("rational `{s}`"),
        message: "expected an integer or p/q".into(),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn ceil_to_usize(r: &Rational) -> usize {
    r.ceil().to_integer().to_usize().expect("non-negative value expected")
}

/// A non-negative rational or `+∞`.
///
/// Division follows the conventions `c/0 = ∞` for `c > 0`, `0/0 = 0`,
/// `0/∞ = 0`, and `⌈c/∞⌉ = 1` for `c > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinite => None,
        }
    }

    /// `num / den` where `den` may be infinite.
    pub fn ratio(num: &Rational, den: &ExtRational) -> Self {
        match den {
            ExtRational::Infinite => ExtRational::zero(),
            ExtRational::Finite(d) if d.is_zero() => {
                if num.is_zero() {
                    ExtRational::zero()
                } else {
                    ExtRational::Infinite
                }
            }
            ExtRational::Finite(d) => ExtRational::Finite(num / d),
        }
    }

    /// Ceiling, with `⌈∞⌉ = ∞`.
    pub fn ceil(&self) -> Self {
        match self {
            ExtRational::Finite(r) => ExtRational::Finite(r.ceil()),
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }

    pub fn to_wire(&self) -> String {
        match self {
            ExtRational::Finite(r) => format_rational(r),
            ExtRational::Infinite => "inf".into(),
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, _) => Ordering::Greater,
            (_, Infinite) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{}", format_rational(r)),
            ExtRational::Infinite => write!(f, "∞"),
        }
    }
}

/// A vector of exact rationals indexed by the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatVec(pub Vec<Rational>);

impl RatVec {
    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Rational::zero(); n])
    }

    pub fn ones(n: usize) -> Self {
        RatVec(vec![Rational::one(); n])
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        RatVec(vec![c; n])
    }

    /// Characteristic vector `1_A` of `a ⊆ [0, n)`.
    pub fn indicator(n: usize, a: SubsetMask) -> Self {
        RatVec((0..n).map(|i| if a.contains(i) { Rational::one() } else { Rational::zero() }).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVec(v.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    /// `f[U] = Σ_{v ∈ U} f(v)`.
    pub fn sum_over(&self, u: SubsetMask) -> Rational {
        u.iter().fold(Rational::zero(), |acc, i| acc + &self.0[i])
    }

    pub fn total(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn dot(&self, other: &RatVec) -> Rational {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Rational) -> RatVec {
        RatVec(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Support `{v : f(v) != 0}`.
    pub fn support(&self) -> SubsetMask {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn to_wire(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn from_wire(v: &[String]) -> Result<Self> {
        v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map(RatVec)
    }
}

impl Index<usize> for RatVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVec {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_wire().join(", "))
    }
}

impl Serialize for RatVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        RatVec::from_wire(&v).map_err(serde::de::Error::custom)
    }
}
