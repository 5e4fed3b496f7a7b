use num_complex::Complex64;

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument sits outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series failed to meet its tail tolerance within the term budget.
    #[error(
        "series did not converge within {max_terms} terms (last term magnitude {last_term:.3e})"
    )]
    NonConvergence { max_terms: usize, last_term: f64 },

    /// The result exceeds the representable range of f64.
    #[error("overflow: Gamma({x}) exceeds the f64 range")]
    Overflow { x: f64 },

    /// A functional's denominator vanished (to within 1e-14) at a grid point.
    #[error("pole proximity at z = {point} (denominator magnitude {magnitude:.3e})")]
    PoleProximity { point: Complex64, magnitude: f64 },

    /// A root bracket does not satisfy the sign-change invariants.
    #[error("bracket error: {0}")]
    Bracket(String),

    /// Structurally invalid input (short tables, bad grids, bad controls).
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
