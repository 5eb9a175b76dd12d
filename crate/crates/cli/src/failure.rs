use expander_forge::Error;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const INVALID: u8 = 2;
pub const GUARD: u8 = 3;
pub const CERTIFICATION: u8 = 4;
const OTHER: u8 = 1;

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { code: INVALID, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parity { .. }
            | Error::InvalidPartition(_)
            | Error::InvalidArgument(_)
            | Error::Parse { .. }
            | Error::Disconnected
            | Error::IsolatedVertex(_)
            | Error::Degree { .. }
            | Error::TooFewBoundary { .. }
            | Error::ZeroBoundaryNorm => INVALID,
            Error::GuardExceeded { .. } => GUARD,
            Error::Certification(_) => CERTIFICATION,
            Error::SingularInterior | Error::Solver(_) | Error::Internal(_) => OTHER,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: OTHER, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: OTHER, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: OTHER, message: e.to_string() }
    }
}
