use thiserror::Error;

/// Errors raised by the switch-routing primitives.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OpticsError {
    #[error("input port {port} out of range for radix {radix}")]
    InputPortOutOfRange { port: usize, radix: usize },

    #[error("output port {port} out of range for radix {radix}")]
    OutputPortOutOfRange { port: usize, radix: usize },

    #[error("wavelength index {wavelength} out of range for {limit} wavelengths")]
    WavelengthOutOfRange { wavelength: usize, limit: usize },

    #[error("switch radix must be at least 1, got {0}")]
    ZeroRadix(usize),
}
