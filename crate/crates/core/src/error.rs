use thiserror::Error;

/// Errors produced by the modulation, theory and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// No closed-form error probability exists for this noise family.
    #[error("no closed-form error probability for {0} noise")]
    UnsupportedTheory(String),

    #[error(
        "target power {target:e} V^2 is infeasible; minimum achievable power is {minimum:e} V^2"
    )]
    InfeasiblePower { target: f64, minimum: f64 },

    #[error("sweep point {variable}={value:e} for scheme {scheme}: {source}")]
    SweepPoint {
        variable: &'static str,
        value: f64,
        scheme: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
