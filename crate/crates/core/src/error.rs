use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every domain error names the precondition it enforces.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0/0 is not a fraction")]
    Indeterminate,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("continued fraction term {index} is zero; only the first term may be 0")]
    ZeroInnerTerm { index: usize },

    #[error("continued fraction must have at least one term")]
    EmptyContinuedFraction,

    #[error("continued fraction term {value} does not fit a diagram (too many crossings)")]
    TermTooLarge { value: String },

    #[error("expected a tangle diagram with four endpoints, got a closed diagram")]
    NotATangle,

    #[error("expected a closed diagram, got a tangle with endpoints")]
    NotClosed,

    #[error("diagram has no components")]
    EmptyDiagram,

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("orientation does not match the diagram ({0})")]
    OrientationMismatch(String),

    #[error("state has {got} smoothings but the diagram has {expected} crossings")]
    StateLength { expected: usize, got: usize },

    #[error("state-sum oracle refuses {crossings} crossings (cap is {cap})")]
    OracleTooLarge { crossings: usize, cap: usize },

    #[error("bracket value {0} is not a unit times an integer")]
    BracketForm(String),

    #[error("tangle is not integrally colorable from two starting colors")]
    NotColorable,

    #[error("coloring is degenerate: b - a and b - d are both zero")]
    DegenerateColoring,

    #[error("fraction {0} has parity {1}; a two-component link needs parity e/o")]
    NotTwoComponent(String, String),

    #[error("fraction {0} closes to an unknot or unlink; no palindromic form exists")]
    DegenerateClass(String),

    #[error("{0} is not strongly invertible: q^2 = 1 + u p needs u odd")]
    NotStronglyInvertible(String),

    #[error("no palindromic form found for {0}")]
    NoPalindromicForm(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("no observations given")]
    EmptyObservations,

    #[error("observation indices must be strictly increasing (index {0} repeats or decreases)")]
    NonIncreasingObservations(u64),

    #[error("search bounds exhausted without a consistent machine (pmax={pmax}, qmax={qmax}, rmax={rmax})")]
    BoundsExhausted { pmax: u64, qmax: u64, rmax: u64 },
}
