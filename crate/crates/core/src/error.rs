use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value violates a type invariant (bad uniformity, vertex out of
    /// range, duplicate edge, color inside its own edge, ...).
    Invalid(String),
    /// A text format could not be parsed.
    Parse(String),
    /// A budgeted search hit its node limit before exhausting the space.
    /// Distinct from a negative answer: nothing can be concluded.
    BudgetExhausted,
    /// A stated precondition does not hold for the given input.
    Precondition(String),
    /// The requested parameters are outside the exact-computation regime;
    /// the operation refuses rather than approximate.
    OutOfBudget(String),
    /// An internal consistency guarantee failed. Reaching this falsifies a
    /// theorem the implementation relies on, so it is surfaced loudly.
    Contradiction(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(m) => write!(f, "invalid value: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::BudgetExhausted => write!(f, "search budget exhausted"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::OutOfBudget(m) => write!(f, "out of budget: {m}"),
            Error::Contradiction(m) => write!(f, "internal contradiction: {m}"),
        }
    }
}

impl std::error::Error for Error {}
