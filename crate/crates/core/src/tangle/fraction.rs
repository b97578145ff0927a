use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced rational number `p/q`, extended by the formal value `1/0`.
///
/// The sign lives in the numerator and the denominator is never negative.
/// Infinity has exactly one representation, `1/0`, so `-1/0` normalizes to
/// it; the mirror image of `[inf]` is `[inf]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    /// Builds and reduces `p/q`. Fails only for `0/0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::Indeterminate);
        }
        Ok(Self::reduce(p, q))
    }

    fn reduce(p: BigInt, q: BigInt) -> Self {
        debug_assert!(!(p.is_zero() && q.is_zero()));
        if q.is_zero() {
            return Self::infinity();
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        Self { p, q }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self {
            p: n.into(),
            q: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn infinity() -> Self {
        Self {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.q.is_one()
    }

    /// `true` when the value is `1/n` for an integer `n`, counting `1/0`.
    pub fn is_reciprocal_integer(&self) -> bool {
        self.p.abs().is_one()
    }

    /// Reciprocal with `1/0 = inf` and `1/inf = 0`.
    pub fn recip(&self) -> Self {
        if self.is_infinite() {
            return Self::zero();
        }
        Self::reduce(self.q.clone(), self.p.clone())
    }

    /// `F(T^r) = -1/F(T)`.
    pub fn rotate(&self) -> Self {
        -self.recip()
    }

    /// Product `1/(1/a + 1/b)`, the fraction of `T*S`.
    pub fn product(&self, other: &Self) -> Self {
        (self.recip() + other.recip()).recip()
    }

    pub fn abs(&self) -> Self {
        Self {
            p: self.p.abs(),
            q: self.q.clone(),
        }
    }
}

impl Add for Fraction {
    type Output = Fraction;

    fn add(self, rhs: Fraction) -> Fraction {
        &self + &rhs
    }
}

impl Add for &Fraction {
    type Output = Fraction;

    /// Formal addition: `a + inf = inf` for every `a`, including `inf`.
    fn add(self, rhs: &Fraction) -> Fraction {
        if self.is_infinite() || rhs.is_infinite() {
            return Fraction::infinity();
        }
        Fraction::reduce(&self.p * &rhs.q + &rhs.p * &self.q, &self.q * &rhs.q)
    }
}

impl Neg for Fraction {
    type Output = Fraction;

    fn neg(self) -> Fraction {
        if self.is_infinite() {
            return self;
        }
        Fraction {
            p: -self.p,
            q: self.q,
        }
    }
}

impl Neg for &Fraction {
    type Output = Fraction;

    fn neg(self) -> Fraction {
        -self.clone()
    }
}

impl Sub for &Fraction {
    type Output = Fraction;

    fn sub(self, rhs: &Fraction) -> Fraction {
        self + &(-rhs)
    }
}

impl Sub for Fraction {
    type Output = Fraction;

    fn sub(self, rhs: Fraction) -> Fraction {
        &self - &rhs
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on the finite values, with `inf` above everything.
impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.p * &other.q).cmp(&(&other.p * &self.q)),
        }
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigInt> for Fraction {
    fn from(n: BigInt) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `p/q`, a bare integer `p`, or `inf`. `p/0` parses as infinity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Self::infinity());
        }
        let bad = || Error::Parse {
            offset: 0,
            message: format!("`{s}` is not a fraction (expected p/q, an integer or inf)"),
        };
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
