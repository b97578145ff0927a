//! Inputs shared by the benchmarks.

use tanglekit::ContinuedFraction;

/// Alternating continued fractions `[2,2,...,2]` with `len` terms.
pub fn twos(len: usize) -> ContinuedFraction {
    ContinuedFraction::new(vec![2i64; len]).unwrap()
}

/// A fixed spread of canonical forms with `crossings` crossings in total.
pub fn spread(crossings: i64) -> Vec<ContinuedFraction> {
    let mut out = Vec::new();
    for first in 1..crossings {
        let rest = crossings - first;
        for mid in 1..rest {
            out.push(ContinuedFraction::new(vec![first, mid, rest - mid]).unwrap());
        }
    }
    out.push(ContinuedFraction::new(vec![crossings]).unwrap());
    out
}
