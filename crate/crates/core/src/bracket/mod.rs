//! Bracket polynomial of tangles and links, its value at `A = sqrt(i)`, the
//! determinant and the bracket fraction.
//!
//! A tangle's bracket is written `<T> = d <[0]> + n <[inf]>`. The state sum
//! for a closed diagram is normalized so that a single crossingless circle
//! has bracket 1; for tangles every closed loop contributes a factor `delta`
//! and the residual arcs pick the basis element. Closing a tangle adds one
//! loop for `[0]` under `N` and none for `[inf]`, which is where the closure
//! formulas `N = d delta + n` and `D = d + n delta` come from, and matches the
//! knot-level `delta^(loops - 1)`.

mod cyclotomic;
mod laurent;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub use cyclotomic::Cyclotomic8;
pub use laurent::LaurentPoly;

use crate::diagram::{Closure, Orientation, PlanarDiagram, Residual, Smoothing, UnionFind};
use crate::error::{Error, Result};
use crate::tangle::{ContinuedFraction, Fraction, TangleExpr};

/// Default largest crossing count the state-sum oracle accepts.
pub const DEFAULT_ORACLE_CAP: usize = 24;

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_VAR: &str = "TANGLEKIT_ORACLE_MAXN";

pub fn oracle_cap() -> usize {
    std::env::var(ORACLE_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .map(|n: usize| n.min(63))
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

/// Coordinates of a tangle's bracket in the basis `<[0]>`, `<[inf]>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BracketPair {
    pub d: LaurentPoly,
    pub n: LaurentPoly,
}

impl BracketPair {
    pub fn new(d: LaurentPoly, n: LaurentPoly) -> Self {
        Self { d, n }
    }

    /// `<[0]> = (1, 0)`.
    pub fn zero() -> Self {
        Self::new(LaurentPoly::one(), LaurentPoly::zero())
    }

    /// `<[inf]> = (0, 1)`.
    pub fn infinity() -> Self {
        Self::new(LaurentPoly::zero(), LaurentPoly::one())
    }

    /// `<[1]> = A <[0]> + A^-1 <[inf]>`; `[-1]` swaps the powers.
    pub fn unit(positive: bool) -> Self {
        let s = if positive { 1 } else { -1 };
        Self::new(LaurentPoly::a_pow(s), LaurentPoly::a_pow(-s))
    }

    /// `<T + S>`. Adding two `[inf]` arcs side by side traps one loop.
    pub fn sum(&self, other: &Self) -> Self {
        let delta = LaurentPoly::delta();
        Self::new(
            &self.d * &other.d,
            &(&(&self.d * &other.n) + &(&self.n * &other.d)) + &(&(&self.n * &other.n) * &delta),
        )
    }

    /// `<T * S>`. Stacking two `[0]` tangles traps one loop.
    pub fn product(&self, other: &Self) -> Self {
        let delta = LaurentPoly::delta();
        Self::new(
            &(&(&self.d * &other.d) * &delta) + &(&(&self.d * &other.n) + &(&self.n * &other.d)),
            &self.n * &other.n,
        )
    }

    /// `<-T>`: `A` and `A^-1` exchanged.
    pub fn mirror(&self) -> Self {
        Self::new(self.d.mirror(), self.n.mirror())
    }

    /// `<T^r>`: a quarter turn exchanges `[0]` and `[inf]`.
    pub fn rotate(&self) -> Self {
        Self::new(self.n.clone(), self.d.clone())
    }

    /// `<1/T> = <(-T)^r>`.
    pub fn invert(&self) -> Self {
        self.mirror().rotate()
    }

    pub fn closure(&self, which: Closure) -> LaurentPoly {
        let delta = LaurentPoly::delta();
        match which {
            Closure::Numerator => &(&self.d * &delta) + &self.n,
            Closure::Denominator => &self.d + &(&self.n * &delta),
        }
    }

    /// `(d, n)` evaluated at `A = sqrt(i)`.
    pub fn eval_sqrt_i(&self) -> (Cyclotomic8, Cyclotomic8) {
        (self.d.eval_sqrt_i(), self.n.eval_sqrt_i())
    }

    /// `F = i n / d` at `A = sqrt(i)`.
    pub fn fraction(&self) -> Result<Fraction> {
        let (d, n) = self.eval_sqrt_i();
        fraction_from_values(&d, &n)
    }
}

/// `<N(T)> = d delta + n`, `<D(T)> = d + n delta`.
pub fn closure_bracket(bp: &BracketPair, which: Closure) -> LaurentPoly {
    bp.closure(which)
}

/// The sum formula on bracket pairs.
pub fn sum_formula(t: &BracketPair, s: &BracketPair) -> BracketPair {
    t.sum(s)
}

pub fn eval_sqrt_i(p: &LaurentPoly) -> Cyclotomic8 {
    p.eval_sqrt_i()
}

fn fraction_from_values(d: &Cyclotomic8, n: &Cyclotomic8) -> Result<Fraction> {
    if d.is_zero() {
        return if n.is_zero() {
            Err(Error::Indeterminate)
        } else {
            Ok(Fraction::infinity())
        };
    }
    let num = &(&Cyclotomic8::i() * n) * &d.conj();
    let den = d * &d.conj();
    match (num.as_integer(), den.as_integer()) {
        (Some(p), Some(q)) => Fraction::new(p.clone(), q.clone()),
        _ => Err(Error::BracketForm(format!("i*n/d with n = {n}, d = {d}"))),
    }
}

/// Recursive bracket of a tangle expression.
pub fn bracket_tangle(t: &TangleExpr) -> BracketPair {
    match t {
        TangleExpr::Int(k) => {
            let step = BracketPair::unit(k.is_positive());
            let mut bp = BracketPair::zero();
            let mut i = BigInt::zero();
            let n = k.abs();
            while i < n {
                bp = bp.sum(&step);
                i += 1;
            }
            bp
        }
        TangleExpr::Infinity => BracketPair::infinity(),
        TangleExpr::Mirror(t) => bracket_tangle(t).mirror(),
        TangleExpr::Invert(t) => bracket_tangle(t).invert(),
        TangleExpr::Rotate(t) => bracket_tangle(t).rotate(),
        TangleExpr::Sum(t, s) => bracket_tangle(t).sum(&bracket_tangle(s)),
        TangleExpr::Product(t, s) => bracket_tangle(t).product(&bracket_tangle(s)),
    }
}

/// Recursive bracket of the standard-form tangle of a continued fraction:
/// the same twist sequence the diagram builder uses.
pub fn bracket_contfrac(cf: &ContinuedFraction) -> BracketPair {
    let terms = cf.terms();
    let mut bp = if terms.len() % 2 == 1 {
        BracketPair::zero()
    } else {
        BracketPair::infinity()
    };
    for (i, a) in terms.iter().enumerate().rev() {
        let step = BracketPair::unit(a.is_positive());
        let mut k = a.abs();
        while k.is_positive() {
            bp = if i % 2 == 0 {
                bp.sum(&step)
            } else {
                bp.product(&step)
            };
            k -= 1;
        }
    }
    bp
}

type Census = HashMap<(i64, usize, Option<Residual>), u64>;

/// Tallies states by `(#L - #R, loops, residual)` over all `2^N` states.
fn state_census(d: &PlanarDiagram) -> Result<Census> {
    let n = d.crossing_count();
    let cap = oracle_cap();
    if n > cap {
        return Err(Error::OracleTooLarge { crossings: n, cap });
    }
    let mut uf = UnionFind::new(d.max_edge() as usize + 1);
    let mut census = HashMap::new();
    for bits in 0..1u64 << n {
        let out = d.smooth_with(&mut uf, |i| {
            if bits >> i & 1 == 1 {
                Smoothing::R
            } else {
                Smoothing::L
            }
        });
        let exp = n as i64 - 2 * i64::from(bits.count_ones());
        *census.entry((exp, out.loops, out.residual)).or_insert(0u64) += 1;
    }
    Ok(census)
}

fn delta_powers(max: usize) -> Vec<LaurentPoly> {
    let delta = LaurentPoly::delta();
    let mut v = vec![LaurentPoly::one()];
    for k in 1..=max {
        let next = &v[k - 1] * &delta;
        v.push(next);
    }
    v
}

/// Brute-force bracket of a tangle diagram: `sum_S A^(#L-#R) delta^loops
/// <residual>`.
pub fn bracket_tangle_oracle(d: &PlanarDiagram) -> Result<BracketPair> {
    if d.is_closed() {
        return Err(Error::NotATangle);
    }
    let census = state_census(d)?;
    let max_loops = census.keys().map(|k| k.1).max().unwrap_or(0);
    let pows = delta_powers(max_loops);
    let mut bp = BracketPair::new(LaurentPoly::zero(), LaurentPoly::zero());
    for ((exp, loops, res), count) in census {
        let term = pows[loops].shift(exp);
        let term = &term * &LaurentPoly::monomial(count, 0);
        match res {
            Some(Residual::Zero) => bp.d = &bp.d + &term,
            Some(Residual::Infinity) => bp.n = &bp.n + &term,
            None => unreachable!("tangle states have residual arcs"),
        }
    }
    Ok(bp)
}

/// Brute-force bracket of a closed diagram: `sum_S A^(#L-#R)
/// delta^(loops - 1)`, so a single circle has bracket 1.
pub fn bracket_knot(d: &PlanarDiagram) -> Result<LaurentPoly> {
    if d.is_tangle() {
        return Err(Error::NotClosed);
    }
    if d.crossing_count() == 0 && d.free_loops() == 0 {
        return Err(Error::EmptyDiagram);
    }
    let census = state_census(d)?;
    let max_loops = census.keys().map(|k| k.1).max().unwrap_or(1);
    let pows = delta_powers(max_loops);
    let mut p = LaurentPoly::zero();
    for ((exp, loops, _), count) in census {
        let term = &pows[loops - 1].shift(exp) * &LaurentPoly::monomial(count, 0);
        p = &p + &term;
    }
    Ok(p)
}

/// `(-A^3)^(-w) <K>` for a writhe `w`.
pub fn normalize_by_writhe(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    &bracket.shift(-3 * writhe) * &LaurentPoly::monomial(sign, 0)
}

/// Writhe-normalized bracket `f_K` of an oriented closed diagram.
pub fn normalized_f(d: &PlanarDiagram, o: &Orientation) -> Result<LaurentPoly> {
    let w = d.writhe(o)?;
    Ok(normalize_by_writhe(&bracket_knot(d)?, w))
}

/// `|v|` for a value of the form `z^k * m`; 0 for 0.
pub fn determinant_of_value(v: &Cyclotomic8) -> Result<BigInt> {
    if v.is_zero() {
        return Ok(BigInt::zero());
    }
    v.unit_times_integer()
        .map(|(_, m)| m)
        .ok_or_else(|| Error::BracketForm(v.to_string()))
}

pub fn determinant_of_poly(p: &LaurentPoly) -> Result<BigInt> {
    determinant_of_value(&p.eval_sqrt_i())
}

/// `|<K>(sqrt(i))|` of a closed diagram by the state sum.
pub fn determinant(d: &PlanarDiagram) -> Result<BigInt> {
    determinant_of_poly(&bracket_knot(d)?)
}

/// Bracket fraction of a tangle expression, via the recursive bracket.
pub fn fraction_bracket(t: &TangleExpr) -> Result<Fraction> {
    bracket_tangle(t).fraction()
}

/// Bracket fraction of a tangle diagram, via the state sum.
pub fn fraction_bracket_diagram(d: &PlanarDiagram) -> Result<Fraction> {
    bracket_tangle_oracle(d)?.fraction()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_standard;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    fn poly(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn basis_and_unit() {
        assert_eq!(bracket_tangle(&TangleExpr::int(0)), BracketPair::zero());
        assert_eq!(
            bracket_tangle(&TangleExpr::Infinity),
            BracketPair::infinity()
        );
        let one = bracket_tangle(&TangleExpr::int(1));
        assert_eq!(one, BracketPair::new(poly(&[(1, 1)]), poly(&[(-1, 1)])));
        let d = build_standard(&cf("[1]")).unwrap();
        assert_eq!(bracket_tangle_oracle(&d).unwrap(), one);
    }

    #[test]
    fn closures_of_basis() {
        assert_eq!(
            BracketPair::zero().closure(Closure::Numerator),
            LaurentPoly::delta()
        );
        assert_eq!(
            BracketPair::infinity().closure(Closure::Numerator),
            LaurentPoly::one()
        );
    }

    #[test]
    fn unknot_and_curl() {
        assert_eq!(
            bracket_knot(&PlanarDiagram::unknot()).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            bracket_knot(&PlanarDiagram::curl(true)).unwrap(),
            poly(&[(3, -1)])
        );
        assert_eq!(
            bracket_knot(&PlanarDiagram::curl(false)).unwrap(),
            poly(&[(-3, -1)])
        );
        assert!(matches!(
            bracket_knot(&PlanarDiagram::unlink(0)),
            Err(Error::EmptyDiagram)
        ));
    }

    #[test]
    fn trefoil_fixture() {
        // Hand state sum: A^3 delta + 3A + 3A^-1 delta + A^-3 delta^2.
        let k = build_standard(&cf("[3]")).unwrap().numerator().unwrap();
        let expect = poly(&[(-7, 1), (-3, -1), (5, -1)]);
        assert_eq!(bracket_knot(&k).unwrap(), expect);
        assert_eq!(
            bracket_contfrac(&cf("[3]")).closure(Closure::Numerator),
            expect
        );
    }

    #[test]
    fn sum_formula_matches_oracle() {
        let one = build_standard(&cf("[1]")).unwrap();
        let two = one.sum(&one).unwrap();
        let u = BracketPair::unit(true);
        assert_eq!(sum_formula(&u, &u), bracket_tangle_oracle(&two).unwrap());
        assert_eq!(sum_formula(&u, &u), bracket_tangle(&TangleExpr::int(2)));
        let z = BracketPair::zero();
        assert_eq!(sum_formula(&z, &z), z);
    }

    #[test]
    fn recursion_matches_oracle_on_small_examples() {
        for s in [
            "[2,3,4]", "[2,-3,5]", "[1,1]", "[0,2]", "[-2,1,1]", "[0,-1,3]",
        ] {
            let c = cf(s);
            let d = build_standard(&c).unwrap();
            assert_eq!(
                bracket_contfrac(&c),
                bracket_tangle_oracle(&d).unwrap(),
                "{s}"
            );
            assert_eq!(
                bracket_contfrac(&c),
                bracket_tangle(&TangleExpr::from_contfrac(&c)),
                "{s}"
            );
        }
    }

    #[test]
    fn fractions() {
        assert_eq!(
            fraction_bracket(&TangleExpr::int(1)).unwrap(),
            Fraction::one()
        );
        assert_eq!(
            fraction_bracket(&TangleExpr::int(0)).unwrap(),
            Fraction::zero()
        );
        assert_eq!(
            fraction_bracket(&TangleExpr::Infinity).unwrap(),
            Fraction::infinity()
        );
        let f = bracket_contfrac(&cf("[2,3,4]")).fraction().unwrap();
        assert_eq!(f, Fraction::new(30, 13).unwrap());
        let inf2 = TangleExpr::sum(TangleExpr::Infinity, TangleExpr::Infinity);
        assert_eq!(fraction_bracket(&inf2), Err(Error::Indeterminate));
    }

    #[test]
    fn determinants() {
        let k = build_standard(&cf("[2,2,3]")).unwrap().numerator().unwrap();
        assert_eq!(determinant(&k).unwrap(), BigInt::from(17));
        let t = build_standard(&cf("[3]")).unwrap().numerator().unwrap();
        assert_eq!(determinant(&t).unwrap(), BigInt::from(3));
        assert_eq!(
            determinant(&PlanarDiagram::unknot()).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            determinant(&PlanarDiagram::unlink(2)).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn trefoil_is_chiral_figure_eight_is_not() {
        let (k, o) = build_standard(&cf("[3]"))
            .unwrap()
            .close_oriented(Closure::Numerator)
            .unwrap();
        let f = normalized_f(&k, &o).unwrap();
        assert_ne!(f, f.mirror());
        let (k, o) = build_standard(&cf("[2,2]"))
            .unwrap()
            .close_oriented(Closure::Numerator)
            .unwrap();
        let f = normalized_f(&k, &o).unwrap();
        assert_eq!(f, f.mirror());
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let d = build_standard(&cf("[30]")).unwrap();
        assert!(matches!(
            bracket_tangle_oracle(&d),
            Err(Error::OracleTooLarge { crossings: 30, .. })
        ));
    }
}
