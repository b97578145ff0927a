//! Recombination products `K_n = N(S + n R)` for a rational substrate `S`
//! with `F(S) = p/q` and an integer tangle `R = [r]`, and the inverse problem
//! of recovering `S` and `R` from observed products.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::classify::{normalize_unoriented, KnotClass};
use crate::error::{Error, Result};
use crate::serde_util::big;
use crate::tangle::Fraction;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Machine {
    #[serde(serialize_with = "big")]
    pub p: BigInt,
    #[serde(serialize_with = "big")]
    pub q: BigInt,
    #[serde(serialize_with = "big")]
    pub r: BigInt,
}

impl Machine {
    /// `p > 0`, `gcd(p, q) = 1`, `r != 0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, r: impl Into<BigInt>) -> Result<Self> {
        let (p, q, r) = (p.into(), q.into(), r.into());
        if !p.is_positive() {
            return Err(Error::InvalidMachine(format!("p = {p} must be positive")));
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::InvalidMachine(format!("gcd({p}, {q}) is not 1")));
        }
        if r.is_zero() {
            return Err(Error::InvalidMachine("r must be nonzero".into()));
        }
        Ok(Self { p, q, r })
    }

    /// Machine with substrate fraction `f`, written with positive numerator.
    pub fn from_fraction(f: &Fraction, r: impl Into<BigInt>) -> Result<Self> {
        let (n, d) = (f.numer(), f.denom());
        if n.is_negative() {
            Self::new(-n, -d, r)
        } else {
            Self::new(n.clone(), d.clone(), r)
        }
    }

    /// `F(S)`, as a signed fraction.
    pub fn substrate(&self) -> Fraction {
        Fraction::new(self.p.clone(), self.q.clone()).expect("p > 0")
    }

    /// `F(S + n R) = (p + q r n)/q`.
    pub fn product_fraction(&self, n: u64) -> Fraction {
        let num = &self.p + &self.q * &self.r * BigInt::from(n);
        Fraction::new(num, self.q.clone()).expect("p > 0 rules out 0/0")
    }

    pub fn product_class(&self, n: u64) -> KnotClass {
        normalize_unoriented(&self.product_fraction(n))
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, r={}", self.substrate(), self.r)
    }
}

/// Fractions of `K_0, ..., K_count`, reduced.
pub fn generate(m: &Machine, count: u64) -> Vec<Fraction> {
    (0..=count).map(|n| m.product_fraction(n)).collect()
}

/// `|q| - p/(qr)`; infinite when `q = 0`.
pub fn threshold(m: &Machine) -> Fraction {
    if m.q.is_zero() {
        return Fraction::infinity();
    }
    let qr = &m.q * &m.r;
    let correction = Fraction::new(m.p.clone(), qr).expect("qr != 0");
    &Fraction::integer(m.q.abs()) - &correction
}

/// Smallest index `N >= 1` with `N >= threshold(m)`.
pub fn sufficient_index(m: &Machine) -> Option<u64> {
    let t = threshold(m);
    if t.is_infinite() {
        return None;
    }
    let ceil = t.numer().div_ceil(t.denom());
    Some(ceil.max(BigInt::one()).to_u64().unwrap_or(u64::MAX))
}

/// Smallest `N >= 2` with `|p + q r N| >= |q^2 r| + 2`. Observing
/// `K_0..K_N` then pins the machine down: three indices fix `p` and `qr`,
/// and at `n = N` any competing `q'` (a divisor of `qr`) would need a
/// congruence mod `|p + q r N|` between numbers smaller than it.
pub fn safe_index(m: &Machine) -> Option<u64> {
    if m.q.is_zero() {
        return None;
    }
    let s = &m.q * &m.r;
    let need = (&m.q * &s).abs() + 2;
    // |p + sN| grows by |s| per step once past the sign change.
    let mut n = 2u64;
    loop {
        if (&m.p + &s * BigInt::from(n)).abs() >= need {
            return Some(n);
        }
        n += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub n: u64,
    pub class: KnotClass,
}

impl Observation {
    pub fn new(n: u64, class: KnotClass) -> Self {
        Self { n, class }
    }
}

/// Observations of `m` for `n = 0..=count`.
pub fn observe(m: &Machine, count: u64) -> Vec<Observation> {
    (0..=count)
        .map(|n| Observation::new(n, m.product_class(n)))
        .collect()
}

/// Search limits, used only when a single observation leaves the machine
/// underdetermined or the substrate is `[inf]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub pmax: u64,
    pub qmax: u64,
    pub rmax: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            pmax: 50,
            qmax: 50,
            rmax: 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Unique,
    Ambiguous,
    Inconsistent,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Unique => "unique",
            SolveStatus::Ambiguous => "ambiguous",
            SolveStatus::Inconsistent => "inconsistent",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub machine: Machine,
    pub threshold: Fraction,
    /// The largest observed index is at least the threshold.
    pub bound_met: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub status: SolveStatus,
    pub machines: Vec<Candidate>,
    /// The listed machines are all machines within `bounds` rather than all
    /// machines whatsoever.
    pub bounded: bool,
    pub bounds: SearchBounds,
}

impl Solution {
    pub fn unique(&self) -> Option<&Machine> {
        match (self.status, self.machines.as_slice()) {
            (SolveStatus::Unique, [c]) => Some(&c.machine),
            _ => None,
        }
    }
}

fn reproduces(m: &Machine, obs: &[Observation]) -> bool {
    obs.iter().all(|o| m.product_class(o.n) == o.class)
}

/// Signed divisors of a nonzero `s`, increasing.
fn signed_divisors(s: &BigInt) -> Vec<BigInt> {
    let s = s.abs();
    let mut small = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= s {
        if (&s % &d).is_zero() {
            small.push(d.clone());
            let other = &s / &d;
            if other != d {
                small.push(other);
            }
        }
        d += 1;
    }
    let mut out: Vec<BigInt> = small.iter().flat_map(|d| [d.clone(), -d]).collect();
    out.sort();
    out
}

fn check_indices(obs: &[Observation]) -> Result<()> {
    if obs.is_empty() {
        return Err(Error::EmptyObservations);
    }
    for w in obs.windows(2) {
        if w[1].n <= w[0].n {
            return Err(Error::NonIncreasingObservations(w[1].n));
        }
    }
    Ok(())
}

/// Recovers the machines consistent with every observation.
///
/// Each observation fixes `|p + q r n|` as the determinant of `K_n`, so two
/// of them leave at most four choices of `(p, qr)`; `q` then runs over the
/// divisors of `qr`. That search is exhaustive. With one observation, or when
/// `qr = 0` (every product an unknot, any `r` works), the search is limited
/// by `bounds` and the solution is marked `bounded`.
pub fn solve(obs: &[Observation], bounds: SearchBounds) -> Result<Solution> {
    check_indices(obs)?;
    let mut found: BTreeSet<Machine> = BTreeSet::new();
    let mut bounded = false;
    if obs.len() == 1 {
        bounded = true;
        let pmax = BigInt::from(bounds.pmax);
        let (qmax, rmax) = (bounds.qmax as i64, bounds.rmax as i64);
        let mut p = BigInt::one();
        while p <= pmax {
            for q in -qmax..=qmax {
                if !p.gcd(&BigInt::from(q)).is_one() {
                    continue;
                }
                for r in (-rmax..=rmax).filter(|&r| r != 0) {
                    let m = Machine {
                        p: p.clone(),
                        q: q.into(),
                        r: r.into(),
                    };
                    if reproduces(&m, obs) {
                        found.insert(m);
                    }
                }
            }
            p += 1;
        }
        if found.is_empty() {
            return Err(Error::BoundsExhausted {
                pmax: bounds.pmax,
                qmax: bounds.qmax,
                rmax: bounds.rmax,
            });
        }
    } else {
        let (o1, o2) = (&obs[0], &obs[1]);
        let (d1, d2) = (o1.class.p(), o2.class.p());
        let gap = BigInt::from(o2.n - o1.n);
        for e1 in [&d1, &-&d1] {
            for e2 in [&d2, &-&d2] {
                let (s, rem) = (e2 - e1).div_rem(&gap);
                if !rem.is_zero() {
                    continue;
                }
                let p = e1 - &s * BigInt::from(o1.n);
                if !p.is_positive() {
                    continue;
                }
                if s.is_zero() {
                    if !p.is_one() {
                        continue;
                    }
                    // Every `r` fits once one does, so only then is the
                    // list cut short by `rmax`.
                    for r in (-(bounds.rmax as i64)..=bounds.rmax as i64).filter(|&r| r != 0) {
                        let m = Machine {
                            p: p.clone(),
                            q: BigInt::zero(),
                            r: r.into(),
                        };
                        if reproduces(&m, obs) {
                            bounded = true;
                            found.insert(m);
                        }
                    }
                    continue;
                }
                for q in signed_divisors(&s) {
                    if !p.gcd(&q).is_one() {
                        continue;
                    }
                    let m = Machine {
                        r: &s / &q,
                        p: p.clone(),
                        q,
                    };
                    if reproduces(&m, obs) {
                        found.insert(m);
                    }
                }
            }
        }
    }
    let last = obs.last().map(|o| o.n).unwrap_or(0);
    let machines: Vec<Candidate> = found
        .into_iter()
        .map(|machine| {
            let t = threshold(&machine);
            let bound_met = !t.is_infinite() && Fraction::integer(last) >= t;
            Candidate {
                machine,
                threshold: t,
                bound_met,
            }
        })
        .collect();
    let status = match machines.len() {
        0 => SolveStatus::Inconsistent,
        1 if !bounded => SolveStatus::Unique,
        _ => SolveStatus::Ambiguous,
    };
    Ok(Solution {
        status,
        machines,
        bounded,
        bounds,
    })
}

impl fmt::Display for Observation {
    /// `n p qclass`, `n unknot` or `n unlink2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.class {
            KnotClass::Rational { p, qclass } => write!(f, "{} {p} {qclass}", self.n),
            other => write!(f, "{} {other}", self.n),
        }
    }
}

/// Observation file for `m` and `n = 0..=count`, each line annotated with
/// the product's fraction.
pub fn format_observations(m: &Machine, count: u64) -> String {
    let mut out = format!("# machine {m}\n");
    for (n, f) in generate(m, count).into_iter().enumerate() {
        let o = Observation::new(n as u64, normalize_unoriented(&f));
        out.push_str(&format!("{o}  # F = {f}\n"));
    }
    out
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Parses an observation file. Blank lines and `#` comments are skipped.
pub fn parse_observations(text: &str) -> Result<Vec<Observation>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let base = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut pos = 0;
        for tok in line.split_whitespace() {
            let at = line[pos..].find(tok).expect("token comes from this line") + pos;
            fields.push((base + at, tok));
            pos = at + tok.len();
        }
        if fields.is_empty() {
            continue;
        }
        let (at, ntok) = fields[0];
        let n: u64 = ntok
            .parse()
            .map_err(|_| parse_err(at, format!("expected an index, found {ntok:?}")))?;
        let class = match &fields[1..] {
            [(_, "unknot")] => KnotClass::Unknot,
            [(_, "unlink2")] => KnotClass::Unlink2,
            [(pa, ptok), (qa, qtok)] => {
                let p: BigInt = ptok
                    .parse()
                    .map_err(|_| parse_err(*pa, format!("expected p, found {ptok:?}")))?;
                let q: BigInt = qtok
                    .parse()
                    .map_err(|_| parse_err(*qa, format!("expected q, found {qtok:?}")))?;
                KnotClass::from_pq(p, q).map_err(|e| parse_err(*pa, e.to_string()))?
            }
            _ => {
                return Err(parse_err(
                    at,
                    "expected `n p qclass`, `n unknot` or `n unlink2`",
                ))
            }
        };
        out.push(Observation::new(n, class));
    }
    Ok(out)
}

impl FromStr for Machine {
    type Err = Error;

    /// `p/q r`, e.g. `-1/3 1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let (Some(f), Some(r), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(0, "expected `p/q r`"));
        };
        let f: Fraction = f.parse()?;
        let r: BigInt = r
            .parse()
            .map_err(|_| parse_err(s.find(r).unwrap_or(0), format!("expected r, found {r:?}")))?;
        Self::from_fraction(&f, r)
    }
}
