use thiserror::Error;

use crate::ChipType;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RackError {
    #[error("chip type {chip_type} needs {needed_gbyte_s} GB/s of escape bandwidth but an MCM only offers {available_gbyte_s} GB/s")]
    InfeasiblePacking {
        chip_type: ChipType,
        needed_gbyte_s: u64,
        available_gbyte_s: u64,
    },

    #[error("{mcm_count} MCMs exceed the {radix}-port switch radix")]
    CapacityExceeded { mcm_count: usize, radix: usize },

    #[error("wave-selective plan needs at least one fully attachable switch: {mcm_count} MCMs < {radix} ports")]
    TooFewMcmsForWss { mcm_count: usize, radix: usize },

    #[error("{roles} role labels for {mcm_count} MCMs")]
    RoleCountMismatch { roles: usize, mcm_count: usize },

    #[error("switch port {port} on switch {switch} assigned twice")]
    PortDoubleBooked { switch: usize, port: usize },
}
