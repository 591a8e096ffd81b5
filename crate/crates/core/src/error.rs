use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// The translational kinetic energy is not positive, the wave does not
    /// propagate.
    #[error("evanescent regime: total energy {total_energy:e} J does not exceed internal energy {internal_energy:e} J")]
    Evanescent {
        total_energy: f64,
        internal_energy: f64,
    },

    /// The request is valid but beyond what the numerical path supports.
    #[error("capability error: {0}")]
    Capability(String),

    /// Inconsistent or incomplete configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// `true` for errors caused by configuration rather than physics.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}
