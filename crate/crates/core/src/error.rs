use crate::C64;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("pole at s = {0}")]
    PoleAt(C64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("tolerance not met: best value {value}, error estimate {estimate:e}")]
    ToleranceNotMet { value: C64, estimate: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("too close to the pole of the moment series at m = {0}")]
    PoleProximity(u32),
    #[error("contour abscissa not admissible: {0}")]
    ContourTooClose(String),
    #[error("contour tail bound failed: {0}")]
    TailBoundFailed(String),
    #[error("q-expansion tail too large: {0}")]
    TailTooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by the caller's arguments rather than by a
    /// numerical failure. The CLI maps these to exit code 2.
    pub fn is_domain_violation(&self) -> bool {
        matches!(
            self,
            Error::PoleAt(_)
                | Error::OutOfRange(_)
                | Error::Domain(_)
                | Error::PoleProximity(_)
                | Error::ContourTooClose(_)
                | Error::Precondition(_)
                | Error::Unknown(_)
        )
    }
}
