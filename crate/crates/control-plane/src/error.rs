use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RouteError {
    #[error("source and destination are both MCM {0}")]
    SelfRoute(u32),

    #[error("demand must be positive, got {0} Gbps")]
    NonPositiveDemand(f64),

    #[error("destination {dst} outside the {mcm_count}-MCM fabric")]
    UnknownDestination { dst: u32, mcm_count: usize },

    #[error("wavelength {0} released while already free")]
    DoubleRelease(u32),

    #[error("wavelength {lambda} out of range for a {count}-wavelength source")]
    LambdaOutOfRange { lambda: u32, count: usize },
}
