use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::contfrac::ContinuedFraction;
use super::fraction::Fraction;

/// Algebraic 2-tangle expression built from integer tangles and `[inf]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TangleExpr {
    /// `[n]`: `|n|` horizontal half-twists.
    Int(BigInt),
    /// `[inf]`: two vertical arcs.
    Infinity,
    /// `-T`
    Mirror(Box<TangleExpr>),
    /// `1/T`
    Invert(Box<TangleExpr>),
    /// `T^r`: rotation by 90 degrees.
    Rotate(Box<TangleExpr>),
    /// `T + S`
    Sum(Box<TangleExpr>, Box<TangleExpr>),
    /// `T * S`
    Product(Box<TangleExpr>, Box<TangleExpr>),
}

/// Result of evaluating an expression's fraction by arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprFraction {
    pub value: Fraction,
    /// The tree describes a rational tangle, so `value` classifies it.
    pub rational: bool,
    /// Some sub-sum had two infinite summands (or a sub-product two zero
    /// factors). The tangle then contains a split loop and `value` is only the
    /// formal arithmetic result.
    pub degenerate: bool,
}

impl TangleExpr {
    pub fn int(n: impl Into<BigInt>) -> Self {
        Self::Int(n.into())
    }

    pub fn infinity() -> Self {
        Self::Infinity
    }

    pub fn mirror(t: Self) -> Self {
        Self::Mirror(Box::new(t))
    }

    pub fn invert(t: Self) -> Self {
        Self::Invert(Box::new(t))
    }

    pub fn rotate(t: Self) -> Self {
        Self::Rotate(Box::new(t))
    }

    pub fn sum(t: Self, s: Self) -> Self {
        Self::Sum(Box::new(t), Box::new(s))
    }

    pub fn product(t: Self, s: Self) -> Self {
        Self::Product(Box::new(t), Box::new(s))
    }

    /// `[[a1], ..., [an]] = [a1] + 1/([a2] + 1/(... + 1/[an]))`.
    ///
    /// A leading zero term is kept as an explicit `[0] +` summand except for
    /// the one-term form `[0]`.
    pub fn from_contfrac(cf: &ContinuedFraction) -> Self {
        let mut it = cf.terms().iter().rev();
        let Some(last) = it.next() else {
            return Self::Infinity;
        };
        it.fold(Self::Int(last.clone()), |acc, a| {
            Self::sum(Self::Int(a.clone()), Self::invert(acc))
        })
    }

    /// Number of crossings of the diagram this expression draws.
    pub fn crossing_count(&self) -> BigInt {
        match self {
            Self::Int(n) => n.abs(),
            Self::Infinity => BigInt::zero(),
            Self::Mirror(t) | Self::Invert(t) | Self::Rotate(t) => t.crossing_count(),
            Self::Sum(t, s) | Self::Product(t, s) => t.crossing_count() + s.crossing_count(),
        }
    }

    /// Fraction by the arithmetic of the operations: sums add, inversion takes
    /// reciprocals, mirror negates, rotation is `-1/F`, and `T * S` is
    /// `1/(1/F(T) + 1/F(S))`.
    pub fn eval(&self) -> ExprFraction {
        match self {
            Self::Int(n) => ExprFraction {
                value: Fraction::integer(n.clone()),
                rational: true,
                degenerate: false,
            },
            Self::Infinity => ExprFraction {
                value: Fraction::infinity(),
                rational: true,
                degenerate: false,
            },
            Self::Mirror(t) => t.eval().map(|f| -f),
            Self::Invert(t) => t.eval().map(|f| f.recip()),
            Self::Rotate(t) => t.eval().map(|f| f.rotate()),
            Self::Sum(t, s) => {
                let (a, b) = (t.eval(), s.eval());
                let clash = a.value.is_infinite() && b.value.is_infinite();
                ExprFraction {
                    rational: a.rational
                        && b.rational
                        && !clash
                        && (a.value.is_integer() || b.value.is_integer()),
                    degenerate: a.degenerate || b.degenerate || clash,
                    value: &a.value + &b.value,
                }
            }
            Self::Product(t, s) => {
                let (a, b) = (t.eval(), s.eval());
                let clash = a.value.is_zero() && b.value.is_zero();
                ExprFraction {
                    rational: a.rational
                        && b.rational
                        && !clash
                        && (a.value.is_reciprocal_integer() || b.value.is_reciprocal_integer()),
                    degenerate: a.degenerate || b.degenerate || clash,
                    value: a.value.product(&b.value),
                }
            }
        }
    }

    /// Rational when every sum has an integer-tangle summand and every product
    /// a vertical-twist factor `1/[n]`, so the tree is a sequence of twists on
    /// `[0]` or `[inf]` up to isotopy.
    pub fn is_rational(&self) -> bool {
        self.eval().rational
    }
}

impl ExprFraction {
    fn map(self, f: impl FnOnce(Fraction) -> Fraction) -> Self {
        Self {
            value: f(self.value),
            ..self
        }
    }
}

impl fmt::Display for TangleExpr {
    /// Prints in the command-line notation; `*` binds tighter than `+`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Int(n) => write!(f, "[{n}]"),
            Self::Infinity => f.write_str("[inf]"),
            Self::Mirror(t) => match **t {
                Self::Sum(..) | Self::Product(..) => write!(f, "-({t})"),
                _ => write!(f, "-{t}"),
            },
            Self::Invert(t) => write!(f, "inv({t})"),
            Self::Rotate(t) => write!(f, "rot({t})"),
            Self::Sum(t, s) => match **s {
                Self::Sum(..) => write!(f, "{t} + ({s})"),
                _ => write!(f, "{t} + {s}"),
            },
            Self::Product(t, s) => {
                let paren = |e: &TangleExpr| matches!(e, Self::Sum(..));
                match (paren(t), paren(s) || matches!(**s, Self::Product(..))) {
                    (false, false) => write!(f, "{t} * {s}"),
                    (true, false) => write!(f, "({t}) * {s}"),
                    (false, true) => write!(f, "{t} * ({s})"),
                    (true, true) => write!(f, "({t}) * ({s})"),
                }
            }
        }
    }
}
