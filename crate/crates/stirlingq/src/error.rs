//! Error types shared across the crate.

/// Which end of a scan bracket a monotone profile ran into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Lower,
    Upper,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Boundary::Lower => write!(f, "lower"),
            Boundary::Upper => write!(f, "upper"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    /// Invalid medium parameters or an unsupported medium/barrier combination.
    #[error("configuration error: {0}")]
    Config(String),

    /// A series summation hit the term cap before meeting the tolerance.
    /// Carries the partial Boltzmann sum and the number of terms consumed.
    #[error("series did not converge within {terms_used} terms (partial sum {partial_sum:e})")]
    Convergence { partial_sum: f64, terms_used: usize },

    /// A scan found no interior extremum: the profile is monotone up to the
    /// named end of the bracket.
    #[error("no interior maximum: profile is monotone toward the {0} end of the scan bracket")]
    MonotoneProfile(Boundary),

    /// No operating point with positive work and positive heat input exists
    /// anywhere on the scan grid.
    #[error("no engine-regime point found on the scan grid")]
    NoEngineRegime,

    /// Root bracketing failed: the target function does not change sign.
    #[error("no sign change of net work on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
