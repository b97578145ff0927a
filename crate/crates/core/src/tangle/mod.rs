//! Exact tangle fractions, continued fraction forms and the arithmetic of
//! tangle operations.

mod contfrac;
mod expr;
mod fraction;
mod parity;

pub use contfrac::{bottom_twist, ContinuedFraction};
pub use expr::{ExprFraction, TangleExpr};
pub use fraction::Fraction;
pub use parity::{component_count, connectivity, parity, Connectivity, Parity};
