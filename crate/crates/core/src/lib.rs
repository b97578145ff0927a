//! Exact calculus of rational tangles and the knots and links they close to.
//!
//! Fractions are computed three ways (continued fractions, the bracket
//! polynomial at `A = sqrt(i)`, integral colorings), rational knots are
//! classified arithmetically, and tangle equations from the recombination
//! model are solved.
//!
//! ```
//! use tanglekit::{bracket, classify, ContinuedFraction, Fraction, TangleExpr};
//!
//! let cf: ContinuedFraction = "[2,2,3]".parse()?;
//! assert_eq!(cf.eval(), Fraction::new(17, 7)?);
//! assert_eq!(bracket::fraction_bracket(&TangleExpr::from_contfrac(&cf))?, cf.eval());
//! assert!(classify::is_achiral(&Fraction::new(5, 2)?));
//! # Ok::<(), tanglekit::Error>(())
//! ```

pub mod bracket;
pub mod classify;
pub mod coloring;
pub mod diagram;
pub mod dna;
mod error;
mod serde_util;
pub mod tangle;

pub use diagram::PlanarDiagram;
pub use error::{Error, Result};
pub use tangle::{ContinuedFraction, Fraction, TangleExpr};
