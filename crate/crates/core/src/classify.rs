//! Arithmetic classification of rational knots and links by their fractions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::serde_util::big;
use crate::tangle::{parity, ContinuedFraction, Fraction, Parity};

/// Unoriented type of `N(p/q)`. Mirror images are different classes unless
/// the congruences identify them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KnotClass {
    /// `p = 0`: two unlinked circles.
    Unlink2,
    /// `p = 1`.
    Unknot,
    /// `p >= 2`; `qclass` is the smaller of `q` and `q^-1` mod `p`.
    Rational {
        #[serde(serialize_with = "big")]
        p: BigInt,
        #[serde(serialize_with = "big")]
        qclass: BigInt,
    },
}

/// Oriented type of `N(p/q)` with `q` taken odd and reduced mod `2p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrientedKnotClass {
    Unlink2,
    Unknot,
    Rational {
        #[serde(serialize_with = "big")]
        p: BigInt,
        #[serde(serialize_with = "big")]
        qclass2: BigInt,
    },
}

impl KnotClass {
    pub fn p(&self) -> BigInt {
        match self {
            KnotClass::Unlink2 => BigInt::zero(),
            KnotClass::Unknot => BigInt::one(),
            KnotClass::Rational { p, .. } => p.clone(),
        }
    }

    /// A fraction whose numerator closure lies in this class.
    pub fn representative(&self) -> Fraction {
        match self {
            KnotClass::Unlink2 => Fraction::zero(),
            KnotClass::Unknot => Fraction::infinity(),
            KnotClass::Rational { p, qclass } => {
                Fraction::new(p.clone(), qclass.clone()).expect("class residues are coprime to p")
            }
        }
    }

    /// Builds the class of `N(p/q)` from `p` and any `q` coprime to it.
    pub fn from_pq(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_negative() {
            return Err(Error::InvalidMachine(format!(
                "class numerator {p} is negative"
            )));
        }
        if p.is_zero() && q.is_zero() {
            return Err(Error::Indeterminate);
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::InvalidMachine(format!("{q} is not coprime to {p}")));
        }
        Ok(normalize_unoriented(&Fraction::new(p, q)?))
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotClass::Unlink2 => f.write_str("unlink2"),
            KnotClass::Unknot => f.write_str("unknot"),
            KnotClass::Rational { p, qclass } => write!(f, "K({p}; {qclass})"),
        }
    }
}

impl fmt::Display for OrientedKnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrientedKnotClass::Unlink2 => f.write_str("unlink2"),
            OrientedKnotClass::Unknot => f.write_str("unknot"),
            OrientedKnotClass::Rational { p, qclass2 } => {
                write!(f, "K\u{20d7}({p}; {qclass2} mod {})", p * 2)
            }
        }
    }
}

/// `(p, q)` with `p = |numerator| >= 0` and the sign moved onto `q`.
fn positive_p(f: &Fraction) -> (BigInt, BigInt) {
    let (n, d) = (f.numer(), f.denom());
    if n.is_negative() {
        (-n, -d)
    } else {
        (n.clone(), d.clone())
    }
}

/// Inverse of `q` modulo `m > 1`; `q` must be a unit.
pub fn mod_inverse(q: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = q.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

pub fn normalize_unoriented(f: &Fraction) -> KnotClass {
    let (p, q) = positive_p(f);
    if p.is_zero() {
        return KnotClass::Unlink2;
    }
    if p.is_one() {
        return KnotClass::Unknot;
    }
    let r = q.mod_floor(&p);
    let inv = mod_inverse(&r, &p).expect("reduced fractions have q coprime to p");
    KnotClass::Rational {
        qclass: r.min(inv),
        p,
    }
}

/// Odd representative of `q` for the oriented theory: `q + p` when `p` is
/// odd and `q` even.
fn odd_rep(p: &BigInt, q: &BigInt) -> BigInt {
    if p.is_odd() && q.is_even() {
        q + p
    } else {
        q.clone()
    }
}

pub fn normalize_oriented(f: &Fraction) -> OrientedKnotClass {
    let (p, q) = positive_p(f);
    if p.is_zero() {
        return OrientedKnotClass::Unlink2;
    }
    if p.is_one() {
        return OrientedKnotClass::Unknot;
    }
    let m = &p * 2;
    let r = odd_rep(&p, &q).mod_floor(&m);
    let inv = mod_inverse(&r, &m).expect("odd q coprime to p is a unit mod 2p");
    OrientedKnotClass::Rational {
        qclass2: r.min(inv),
        p,
    }
}

/// Which congruence makes two fractions equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `q = q' (mod m)`.
    Congruent {
        #[serde(serialize_with = "big")]
        q: BigInt,
        #[serde(serialize_with = "big")]
        q2: BigInt,
        #[serde(serialize_with = "big")]
        modulus: BigInt,
    },
    /// `q q' = 1 (mod m)`.
    Inverse {
        #[serde(serialize_with = "big")]
        q: BigInt,
        #[serde(serialize_with = "big")]
        q2: BigInt,
        #[serde(serialize_with = "big")]
        modulus: BigInt,
    },
    /// Both close to the unknot, or both to the two-component unlink.
    Degenerate { class: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Congruent { q, q2, modulus } => write!(f, "{q} \u{2261} {q2} mod {modulus}"),
            Witness::Inverse { q, q2, modulus } => {
                write!(f, "{q}\u{b7}{q2} \u{2261} 1 mod {modulus}")
            }
            Witness::Degenerate { class } => write!(f, "both {class}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    pub witness: Option<Witness>,
}

fn congruence_test(m: &BigInt, q1: &BigInt, q2: &BigInt) -> Equivalence {
    let witness = if (q1 - q2).mod_floor(m).is_zero() {
        Some(Witness::Congruent {
            q: q1.clone(),
            q2: q2.clone(),
            modulus: m.clone(),
        })
    } else if (q1 * q2 - 1i32).mod_floor(m).is_zero() {
        Some(Witness::Inverse {
            q: q1.clone(),
            q2: q2.clone(),
            modulus: m.clone(),
        })
    } else {
        None
    };
    Equivalence {
        equivalent: witness.is_some(),
        witness,
    }
}

fn degenerate_test(p1: &BigInt, p2: &BigInt) -> Option<Equivalence> {
    if p1 > &BigInt::one() && p2 > &BigInt::one() {
        return None;
    }
    let same = p1 == p2;
    Some(Equivalence {
        equivalent: same,
        witness: same.then(|| Witness::Degenerate {
            class: if p1.is_zero() { "unlink2" } else { "unknot" }.to_string(),
        }),
    })
}

/// Unoriented equivalence of `N(f1)` and `N(f2)`: `p = p'` and either
/// `q = q'` or `q q' = 1` mod `p`.
pub fn unoriented_equiv(f1: &Fraction, f2: &Fraction) -> Equivalence {
    let ((p1, q1), (p2, q2)) = (positive_p(f1), positive_p(f2));
    if let Some(e) = degenerate_test(&p1, &p2) {
        return e;
    }
    if p1 != p2 {
        return Equivalence {
            equivalent: false,
            witness: None,
        };
    }
    congruence_test(&p1, &q1, &q2)
}

/// Oriented equivalence: odd representatives compared mod `2p`.
pub fn oriented_equiv(f1: &Fraction, f2: &Fraction) -> Equivalence {
    let ((p1, q1), (p2, q2)) = (positive_p(f1), positive_p(f2));
    if let Some(e) = degenerate_test(&p1, &p2) {
        return e;
    }
    if p1 != p2 {
        return Equivalence {
            equivalent: false,
            witness: None,
        };
    }
    congruence_test(&(&p1 * 2), &odd_rep(&p1, &q1), &odd_rep(&p2, &q2))
}

/// `N(p/q)` is isotopic to its mirror image iff `q^2 = -1 (mod p)`. The
/// unknot, the two-component unlink and the Hopf link all qualify.
pub fn is_achiral(f: &Fraction) -> bool {
    let (p, q) = positive_p(f);
    if p <= BigInt::one() {
        return true;
    }
    (&q * &q + 1i32).mod_floor(&p).is_zero()
}

/// Regular continued fraction `[a1, ..., an]` of `p/r` for `p > r > 0`, with
/// all terms positive and `an >= 2` unless `n = 1`.
fn regular_expansion(p: &BigInt, r: &BigInt) -> Vec<BigInt> {
    let (mut a, mut b) = (p.clone(), r.clone());
    let mut out = Vec::new();
    while !b.is_zero() {
        let (quo, rem) = a.div_mod_floor(&b);
        out.push(quo);
        a = b;
        b = rem;
    }
    out
}

/// Both expansions of `p/r`: the regular one and the one with its last
/// term split as `(an - 1, 1)`.
fn both_expansions(p: &BigInt, r: &BigInt) -> [Vec<BigInt>; 2] {
    let reg = regular_expansion(p, r);
    let mut split = reg.clone();
    let last = split.pop().expect("p/r has at least one term");
    split.push(last - 1);
    split.push(BigInt::one());
    [reg, split]
}

/// Residues mod `p` whose closures are isotopic to `N(p/q)` or its mirror.
fn class_residues(p: &BigInt, q: &BigInt, with_mirror: bool) -> Vec<BigInt> {
    let r = q.mod_floor(p);
    let inv = mod_inverse(&r, p).expect("q is a unit mod p");
    let mut v = vec![r.clone(), inv.clone()];
    if with_mirror {
        v.push((p - &r).mod_floor(p));
        v.push((p - &inv).mod_floor(p));
    }
    v.sort();
    v.dedup();
    v
}

fn palindromic_form(f: &Fraction, odd: bool, with_mirror: bool) -> Result<ContinuedFraction> {
    let (p, q) = positive_p(f);
    if p < BigInt::from(2) {
        return Err(Error::DegenerateClass(f.to_string()));
    }
    for r in class_residues(&p, &q, with_mirror) {
        for terms in both_expansions(&p, &r) {
            let cf = ContinuedFraction::new(terms).expect("positive terms");
            if (cf.len() % 2 == 1) == odd && cf.is_palindromic() {
                return Ok(cf);
            }
        }
    }
    Err(Error::NoPalindromicForm(f.to_string()))
}

/// Even-length palindrome `[a1..ak, ak..a1]` whose closure is `N(f)`.
pub fn achiral_form(f: &Fraction) -> Result<ContinuedFraction> {
    palindromic_form(f, false, true)
}

/// `N(p/q)` with `p` even is strongly invertible iff `q^2 = 1 + u p` with
/// `u` odd. Knots (odd `p`) are rejected.
pub fn is_strongly_invertible(f: &Fraction) -> Result<bool> {
    let par = parity(f);
    if par != Parity::EvenOdd {
        return Err(Error::NotTwoComponent(f.to_string(), par.to_string()));
    }
    let (p, q) = positive_p(f);
    if p.is_zero() {
        return Ok(true);
    }
    let (u, rem) = (&q * &q - 1i32).div_mod_floor(&p);
    Ok(rem.is_zero() && u.is_odd())
}

/// Odd-length palindrome `[a1..ak, b, ak..a1]` whose closure is `N(f)`.
pub fn strong_form(f: &Fraction) -> Result<ContinuedFraction> {
    if !is_strongly_invertible(f)? {
        return Err(Error::NotStronglyInvertible(f.to_string()));
    }
    palindromic_form(f, true, false)
}

/// The cut identity `N([1] + T) = N([-1] - 1/T)`: for `F(T) = p/q` the right
/// side has fraction `(p + q)/(-p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialCut {
    /// `F([1] + T) = (p + q)/q`.
    pub before: Fraction,
    /// `F([-1] - 1/T) = (p + q)/(-p)`.
    pub after: Fraction,
    /// `p + q = 0`: both sides close to the two-component unlink.
    pub degenerate: bool,
}

pub fn special_cut(f: &Fraction) -> SpecialCut {
    let (p, q) = (f.numer(), f.denom());
    let sum = p + q;
    let before = Fraction::new(sum.clone(), q.clone()).expect("p + q and q are not both 0");
    let after = if p.is_zero() {
        Fraction::infinity()
    } else {
        Fraction::new(sum.clone(), -p).expect("p is nonzero")
    };
    SpecialCut {
        before,
        after,
        degenerate: sum.is_zero(),
    }
}

/// Continuant `K(a1, ..., an)`, the numerator of `[a1, ..., an]` before
/// reduction. `K() = 1`.
pub fn continuant(terms: &[BigInt]) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for a in terms.iter().rev() {
        let next = a * &cur + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// For `[a1..an]` with `P/Q` and its reverse with `P'/Q'` (continuants):
/// `P = P'` and `Q Q' = (-1)^(n+1) (mod P)`.
pub fn palindrome_relation(terms: &[BigInt]) -> (bool, bool) {
    let n = terms.len();
    if n == 0 {
        return (true, true);
    }
    let rev: Vec<BigInt> = terms.iter().rev().cloned().collect();
    let (p, q) = (continuant(terms), continuant(&terms[1..]));
    let (p2, q2) = (continuant(&rev), continuant(&rev[1..]));
    let sign = if n % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let diff = &q * &q2 - sign;
    let congruent = if p.is_zero() {
        diff.is_zero()
    } else {
        diff.mod_floor(&p).is_zero()
    };
    (p == p2, congruent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    fn cls(p: i64, q: i64) -> KnotClass {
        KnotClass::Rational {
            p: p.into(),
            qclass: q.into(),
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_unoriented(&fr(3, 2)), cls(3, 2));
        assert_eq!(normalize_unoriented(&fr(-3, 1)), cls(3, 2));
        assert_eq!(normalize_unoriented(&fr(30, 13)), cls(30, 7));
        assert_eq!(normalize_unoriented(&fr(30, 7)), cls(30, 7));
        assert_eq!(normalize_unoriented(&fr(1, 1)), KnotClass::Unknot);
        assert_eq!(
            normalize_unoriented(&Fraction::infinity()),
            KnotClass::Unknot
        );
        assert_eq!(normalize_unoriented(&fr(0, 1)), KnotClass::Unlink2);
        assert_eq!(cls(30, 7).to_string(), "K(30; 7)");
    }

    #[test]
    fn schubert_examples() {
        let e = unoriented_equiv(&fr(3, 2), &fr(3, -1));
        assert!(e.equivalent);
        assert_eq!(e.witness.unwrap().to_string(), "2 \u{2261} -1 mod 3");
        let e = unoriented_equiv(&fr(30, 13), &fr(30, 7));
        assert!(e.equivalent);
        assert_eq!(
            e.witness.unwrap().to_string(),
            "13\u{b7}7 \u{2261} 1 mod 30"
        );
        assert!(!unoriented_equiv(&fr(30, 13), &fr(30, 11)).equivalent);
        // The trefoil is not its mirror.
        assert!(!unoriented_equiv(&fr(3, 1), &fr(3, -1)).equivalent);
    }

    #[test]
    fn oriented_refines() {
        // 4/1 and 4/5 differ by one bottom twist: same unoriented link,
        // different oriented links.
        assert!(unoriented_equiv(&fr(4, 1), &fr(4, 5)).equivalent);
        assert!(!oriented_equiv(&fr(4, 1), &fr(4, 5)).equivalent);
        for n in -3..4 {
            assert!(oriented_equiv(&fr(7, 3), &fr(7, 2 * n * 7 + 3)).equivalent);
        }
        assert!(oriented_equiv(&fr(5, 2), &fr(5, 7)).equivalent);
    }

    #[test]
    fn achirality() {
        assert!(is_achiral(&fr(5, 2)));
        assert!(!is_achiral(&fr(3, 1)));
        assert_eq!(achiral_form(&fr(5, 2)).unwrap().to_string(), "[2,2]");
        assert!(matches!(
            achiral_form(&fr(1, 1)),
            Err(Error::DegenerateClass(_))
        ));
        assert!(matches!(
            achiral_form(&fr(3, 1)),
            Err(Error::NoPalindromicForm(_))
        ));
        let f = achiral_form(&fr(13, 5)).unwrap();
        assert!(f.len().is_multiple_of(2) && f.is_palindromic());
        assert!(
            unoriented_equiv(&f.eval(), &fr(13, 5)).equivalent
                || unoriented_equiv(&f.eval(), &fr(13, -5)).equivalent
        );
    }

    #[test]
    fn strong_invertibility() {
        assert!(is_strongly_invertible(&fr(8, 3)).unwrap());
        assert!(is_strongly_invertible(&fr(40, 11)).unwrap());
        assert_eq!(strong_form(&fr(8, 3)).unwrap().to_string(), "[2,1,2]");
        assert_eq!(strong_form(&fr(40, 11)).unwrap().to_string(), "[3,1,1,1,3]");
        assert!(matches!(
            is_strongly_invertible(&fr(3, 1)),
            Err(Error::NotTwoComponent(..))
        ));
        // 2/1: q^2 - 1 = 0 = 0 * 2, u even.
        assert!(!is_strongly_invertible(&fr(2, 1)).unwrap());
        assert!(matches!(
            strong_form(&fr(8, 1)),
            Err(Error::NotStronglyInvertible(_))
        ));
    }

    #[test]
    fn strong_invertibility_ignores_representative() {
        for p in (4..40).step_by(2) {
            for q in 1..p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let base = is_strongly_invertible(&fr(p, q)).unwrap();
                let inv = mod_inverse(&q.into(), &p.into()).unwrap();
                let inv: i64 = inv.try_into().unwrap();
                for q2 in [q + p, q - 3 * p, inv, inv + p] {
                    assert_eq!(
                        is_strongly_invertible(&fr(p, q2)).unwrap(),
                        base,
                        "{p}/{q} vs {p}/{q2}"
                    );
                }
            }
        }
    }

    #[test]
    fn special_cuts() {
        let c = special_cut(&fr(1, 2));
        assert_eq!(c.before, fr(3, 2));
        assert_eq!(c.after, fr(-3, 1));
        assert!(unoriented_equiv(&c.before, &c.after).equivalent);
        assert!(special_cut(&fr(-1, 1)).degenerate);
    }

    #[test]
    fn palindrome_congruence_example() {
        let t: Vec<BigInt> = [2, 3, 4].map(BigInt::from).to_vec();
        assert_eq!(continuant(&t), BigInt::from(30));
        assert_eq!(continuant(&t[1..]), BigInt::from(13));
        assert_eq!(palindrome_relation(&t), (true, true));
    }
}
