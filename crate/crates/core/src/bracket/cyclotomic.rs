use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

/// `c0 + c1 z + c2 z^2 + c3 z^3` in `Z[z]` with `z^4 = -1`, so `z = sqrt(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic8 {
    c: [BigInt; 4],
}

impl Cyclotomic8 {
    pub fn new(c: [BigInt; 4]) -> Self {
        Self { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Self {
            c: c.map(BigInt::from),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        let mut v = Self::zero();
        v.c[0] = n.into();
        v
    }

    /// `i = z^2`.
    pub fn i() -> Self {
        Self::zeta_pow(2)
    }

    /// `z^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut v = Self::zero();
        v.c[k % 4] = if k < 4 { 1.into() } else { (-1).into() };
        v
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            c: self.c.clone().map(|x| x * k),
        }
    }

    /// Complex conjugate: `z -> z^-1 = -z^3`.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.c;
        Self {
            c: [a.clone(), -d, -c, -b],
        }
    }

    /// The value as an integer when the `z`, `z^2`, `z^3` parts vanish.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    /// Writes a nonzero value as `z^k * m` with `m` a positive integer and
    /// `0 <= k < 8`, when that is possible.
    pub fn unit_times_integer(&self) -> Option<(u8, BigInt)> {
        let nz: Vec<usize> = (0..4).filter(|&i| !self.c[i].is_zero()).collect();
        let [i] = nz[..] else { return None };
        let m = &self.c[i];
        let k = if m.is_positive() { i } else { i + 4 };
        Some((k as u8, m.abs()))
    }
}

impl Add for &Cyclotomic8 {
    type Output = Cyclotomic8;
    fn add(self, rhs: Self) -> Cyclotomic8 {
        Cyclotomic8 {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl Sub for &Cyclotomic8 {
    type Output = Cyclotomic8;
    fn sub(self, rhs: Self) -> Cyclotomic8 {
        self + &-rhs
    }
}

impl Neg for &Cyclotomic8 {
    type Output = Cyclotomic8;
    fn neg(self) -> Cyclotomic8 {
        Cyclotomic8 {
            c: std::array::from_fn(|i| -&self.c[i]),
        }
    }
}

impl Mul for &Cyclotomic8 {
    type Output = Cyclotomic8;
    fn mul(self, rhs: Self) -> Cyclotomic8 {
        let mut out: [BigInt; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                let p = &self.c[i] * &rhs.c[j];
                if i + j < 4 {
                    out[i + j] += p;
                } else {
                    out[i + j - 4] -= p;
                }
            }
        }
        Cyclotomic8 { c: out }
    }
}

impl fmt::Display for Cyclotomic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.c;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl fmt::Debug for Cyclotomic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic8{self}")
    }
}

impl Serialize for Cyclotomic8 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.c.iter().map(|x| x.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_order_eight() {
        let z = Cyclotomic8::zeta_pow(1);
        let mut p = Cyclotomic8::integer(1);
        for k in 1..=8 {
            p = &p * &z;
            assert_eq!(p, Cyclotomic8::zeta_pow(k));
        }
        assert_eq!(p, Cyclotomic8::integer(1));
        assert_eq!(
            &Cyclotomic8::i() * &Cyclotomic8::i(),
            Cyclotomic8::integer(-1)
        );
    }

    #[test]
    fn conjugation_inverts_units() {
        for k in 0..8 {
            let z = Cyclotomic8::zeta_pow(k);
            assert_eq!(&z * &z.conj(), Cyclotomic8::integer(1));
            assert_eq!(z.conj(), Cyclotomic8::zeta_pow(-k));
        }
    }

    #[test]
    fn unit_extraction() {
        let v = Cyclotomic8::zeta_pow(5).scale(&BigInt::from(17));
        assert_eq!(v.unit_times_integer(), Some((5, BigInt::from(17))));
        assert_eq!(
            Cyclotomic8::from_ints([1, 1, 0, 0]).unit_times_integer(),
            None
        );
        assert_eq!(Cyclotomic8::zero().unit_times_integer(), None);
    }
}
