use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
///
/// Out-of-space inputs (a coefficient outside the index set of a space) are
/// not errors: the norm routines return `f64::INFINITY` for them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HartogsError {
    /// An argument lies outside the domain of a special function or formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series failed to reach its stopping tolerance within the term cap.
    #[error("series did not converge within {terms} terms (last partial sum {last})")]
    Divergence { terms: usize, last: f64 },

    /// A point that was required to lie in the Hartogs triangle does not.
    #[error("point ({z1}, {z2}) is not in the Hartogs triangle")]
    NotInDomain { z1: String, z2: String },

    /// A term of a mixed polynomial is not square integrable for the weight.
    #[error("integrability violation: {0}")]
    Integrability(String),

    /// Coefficients outside the index set an operation requires.
    #[error("support violation: {0}")]
    Support(String),

    /// A configuration value (order, grid size, nu regime) is unusable.
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, HartogsError>;
