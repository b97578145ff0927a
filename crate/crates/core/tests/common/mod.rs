#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use tanglekit::{ContinuedFraction, Fraction};

pub fn cf(s: &str) -> ContinuedFraction {
    s.parse().unwrap()
}

pub fn fr(p: i64, q: i64) -> Fraction {
    Fraction::new(p, q).unwrap()
}

fn compositions(total: u32, out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>) {
    if total == 0 {
        out.push(cur.clone());
        return;
    }
    for first in 1..=total {
        cur.push(first as i64);
        compositions(total - first, out, cur);
        cur.pop();
    }
}

/// Every canonical continued fraction with at most `max` crossings, so one
/// per rational tangle: odd length, all terms of one sign, and possibly a
/// leading zero. `[0]` and `[inf]` are included.
pub fn canonical_cfs(max: u32) -> Vec<ContinuedFraction> {
    let mut out = vec![ContinuedFraction::infinity(), cf("[0]")];
    for total in 1..=max {
        let mut comps = Vec::new();
        compositions(total, &mut comps, &mut Vec::new());
        for c in comps {
            let mut variants = vec![c.clone()];
            if c.len() > 1 {
                let mut z = vec![0];
                z.extend(&c);
                variants.push(z);
            }
            for v in variants {
                if v.len() % 2 == 0 {
                    continue;
                }
                for sign in [1, -1] {
                    let terms: Vec<i64> = v.iter().map(|a| a * sign).collect();
                    out.push(ContinuedFraction::new(terms).unwrap());
                }
            }
        }
    }
    out
}

/// A random continued fraction with nonzero terms (the first may be zero),
/// mixed signs, and at most `max_crossings` crossings.
pub fn random_cf(rng: &mut impl Rng, max_crossings: i64) -> ContinuedFraction {
    loop {
        let len = rng.gen_range(1..=4);
        let mut terms = Vec::with_capacity(len);
        for i in 0..len {
            let mut a: i64 = rng.gen_range(-4..=4);
            while a == 0 && i > 0 {
                a = rng.gen_range(-4..=4);
            }
            terms.push(a);
        }
        if terms.iter().map(|a| a.abs()).sum::<i64>() <= max_crossings {
            return ContinuedFraction::new(terms).unwrap();
        }
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// A random algebraic tangle tree with at most `max_crossings` crossings.
pub fn random_tree(rng: &mut impl Rng, max_crossings: i64) -> tanglekit::TangleExpr {
    loop {
        let t = tree(rng, 3);
        if t.crossing_count() <= BigInt::from(max_crossings) {
            return t;
        }
    }
}

fn tree(rng: &mut impl Rng, depth: u32) -> tanglekit::TangleExpr {
    use tanglekit::TangleExpr as T;
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.1) {
            T::Infinity
        } else {
            T::int(rng.gen_range(-3..=3))
        };
    }
    match rng.gen_range(0..5) {
        0 => T::mirror(tree(rng, depth - 1)),
        1 => T::invert(tree(rng, depth - 1)),
        2 => T::rotate(tree(rng, depth - 1)),
        3 => T::sum(tree(rng, depth - 1), tree(rng, depth - 1)),
        _ => T::product(tree(rng, depth - 1), tree(rng, depth - 1)),
    }
}
