use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::fraction::Fraction;
use crate::error::{Error, Result};

/// A continued fraction `[a1, a2, ..., an]` in integer tangles.
///
/// Every term after the first is non-zero. The empty term list is reserved
/// for the sentinel form of `[inf]` (printed `[inf]`), which is what inverting
/// `[0]` produces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn new<I, T>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let terms: Vec<BigInt> = terms.into_iter().map(Into::into).collect();
        if terms.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        if let Some(i) = terms.iter().skip(1).position(Zero::is_zero) {
            return Err(Error::ZeroInnerTerm { index: i + 2 });
        }
        Ok(Self { terms })
    }

    /// The sentinel form of `[inf]`.
    pub fn infinity() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn is_infinity(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of crossings of the standard diagram, `sum |a_i|`.
    pub fn crossing_count(&self) -> BigInt {
        self.terms.iter().map(|a| a.abs()).sum()
    }

    /// Odd length, and all non-zero terms of one sign (the first term may be 0).
    /// `[0]` and the infinity sentinel count as canonical.
    pub fn is_canonical(&self) -> bool {
        if self.is_infinity() {
            return true;
        }
        if self.terms.len().is_multiple_of(2) {
            return false;
        }
        let positive =
            self.terms.iter().skip(1).all(Signed::is_positive) && !self.terms[0].is_negative();
        let negative =
            self.terms.iter().skip(1).all(Signed::is_negative) && !self.terms[0].is_positive();
        positive || negative
    }

    /// Alternating: all non-zero terms share a sign.
    pub fn is_alternating(&self) -> bool {
        let mut nz = self.terms.iter().filter(|a| !a.is_zero());
        match nz.next() {
            None => true,
            Some(first) => {
                let s = first.signum();
                nz.all(|a| a.signum() == s)
            }
        }
    }

    /// Numerical value `a1 + 1/(a2 + 1/(... + 1/an))` with the formal rules
    /// `1/0 = inf`, `1/inf = 0`.
    pub fn eval(&self) -> Fraction {
        let mut it = self.terms.iter().rev();
        let Some(last) = it.next() else {
            return Fraction::infinity();
        };
        it.fold(Fraction::integer(last.clone()), |acc, a| {
            &Fraction::integer(a.clone()) + &acc.recip()
        })
    }

    /// The unique canonical form with value `f`.
    ///
    /// Positive values use the floor-style Euclidean expansion, negative ones
    /// the negated expansion of `|f|`; an even-length result gets its last term
    /// split as `a_n -> a_n - 1, 1`.
    pub fn expand_canonical(f: &Fraction) -> Self {
        if f.is_infinite() {
            return Self::infinity();
        }
        let negative = f.numer().is_negative();
        let (mut p, mut q) = (f.numer().abs(), f.denom().clone());
        let mut terms = Vec::new();
        loop {
            let (a, r) = p.div_rem(&q);
            terms.push(a);
            if r.is_zero() {
                break;
            }
            p = q;
            q = r;
        }
        if terms.len() % 2 == 0 {
            let last = terms.pop().expect("even length is at least 2");
            terms.push(last - 1u32);
            terms.push(BigInt::one());
        }
        if negative {
            terms.iter_mut().for_each(|a| *a = -&*a);
        }
        Self { terms }
    }

    /// `T + [±1] = [[a1 ± 1], [a2], ..., [an]]`.
    pub fn add_one(&self, positive: bool) -> Self {
        if self.is_infinity() {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        if positive {
            terms[0] += 1u32;
        } else {
            terms[0] -= 1u32;
        }
        Self { terms }
    }

    /// `1/T = [[0], [a1], ..., [an]]`, stripping a leading zero instead when
    /// there is one so that double inversion is the identity.
    pub fn invert(&self) -> Self {
        match self.terms.as_slice() {
            [] => Self {
                terms: vec![BigInt::zero()],
            },
            [a] if a.is_zero() => Self::infinity(),
            [a, rest @ ..] if a.is_zero() => Self {
                terms: rest.to_vec(),
            },
            terms => Self {
                terms: std::iter::once(BigInt::zero())
                    .chain(terms.iter().cloned())
                    .collect(),
            },
        }
    }

    /// `-T = [[-a1], ..., [-an]]`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|a| -a).collect(),
        }
    }

    /// Terms reversed. A leading zero would become an inner zero, so it is
    /// dropped from the reversed list (it contributes nothing to the tangle's
    /// crossings).
    pub fn palindrome(&self) -> Self {
        let mut terms: Vec<BigInt> = self.terms.iter().rev().cloned().collect();
        if terms.len() > 1 && terms.last().is_some_and(Zero::is_zero) {
            terms.pop();
        }
        Self { terms }
    }

    pub fn is_palindromic(&self) -> bool {
        self.terms.iter().eq(self.terms.iter().rev())
    }
}

/// `F(T * 1/[n]) = p/(np + q)`.
pub fn bottom_twist(f: &Fraction, n: &BigInt) -> Fraction {
    let (p, q) = (f.numer(), f.denom());
    Fraction::new(p.clone(), n * p + q).expect("p and np+q cannot both vanish for reduced p/q")
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            return f.write_str("[inf]");
        }
        f.write_str("[")?;
        for (i, a) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Bracketed integers separated by commas and/or whitespace, e.g.
    /// `[2,3,4]` or `[2 -3 5]`; `[inf]` is the infinity sentinel.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("`{trimmed}` is not a bracketed continued fraction"),
            })?;
        if inner.trim() == "inf" {
            return Ok(Self::infinity());
        }
        let mut terms = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let offset = tok.as_ptr() as usize - s.as_ptr() as usize;
            let v: BigInt = tok.parse().map_err(|_| Error::Parse {
                offset,
                message: format!("`{tok}` is not an integer"),
            })?;
            terms.push(v);
        }
        Self::new(terms)
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ContinuedFraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
