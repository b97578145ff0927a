use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::fraction::Fraction;

/// Even/odd pattern of a reduced fraction `p/q`. `e/e` cannot occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    #[serde(rename = "e/o")]
    EvenOdd,
    #[serde(rename = "o/e")]
    OddEven,
    #[serde(rename = "o/o")]
    OddOdd,
}

/// How the four end arcs of a rational tangle are joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Connectivity {
    /// NW-NE and SW-SE, like `[0]`.
    #[serde(rename = "[0]")]
    Zero,
    /// NW-SW and NE-SE, like `[inf]`.
    #[serde(rename = "[inf]")]
    Infinity,
    /// NW-SE and NE-SW, like `[+1]`.
    #[serde(rename = "[+1]")]
    PlusOne,
}

pub fn parity(f: &Fraction) -> Parity {
    match (f.numer().is_even(), f.denom().is_even()) {
        (true, false) => Parity::EvenOdd,
        (false, true) => Parity::OddEven,
        (false, false) => Parity::OddOdd,
        (true, true) => unreachable!("reduced fractions are never e/e"),
    }
}

pub fn connectivity(f: &Fraction) -> Connectivity {
    match parity(f) {
        Parity::EvenOdd => Connectivity::Zero,
        Parity::OddEven => Connectivity::Infinity,
        Parity::OddOdd => Connectivity::PlusOne,
    }
}

/// Components of the numerator closure `N(T)`: two exactly for parity `e/o`.
pub fn component_count(f: &Fraction) -> usize {
    match parity(f) {
        Parity::EvenOdd => 2,
        _ => 1,
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::EvenOdd => "e/o",
            Parity::OddEven => "o/e",
            Parity::OddOdd => "o/o",
        })
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connectivity::Zero => "[0]",
            Connectivity::Infinity => "[inf]",
            Connectivity::PlusOne => "[+1]",
        })
    }
}
