//! Wave-selective switch configuration.
//!
//! A wave-selective switch can steer any subset of an input port's
//! wavelengths to any output port, subject to one physical rule: two input
//! ports must never deliver the same wavelength index to the same output
//! port. The configurator here is a greedy first-fit that walks demands in
//! order and grants each one every wavelength that is still conflict-free.

use serde::{Deserialize, Serialize};

use crate::SwitchSpec;

/// A request for `wavelength_count` channels from `input_port` to
/// `output_port`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WssDemand {
    pub input_port: usize,
    pub output_port: usize,
    pub wavelength_count: usize,
}

/// Outcome of one demand: how many wavelengths were granted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WssGrant {
    pub demand: WssDemand,
    pub granted: usize,
}

/// Per-input wavelength steering table of a wave-selective switch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WssConfig {
    radix: usize,
    wavelengths_per_port: usize,
    /// `routes[input][wavelength]` is the output port, if steered.
    routes: Vec<Vec<Option<usize>>>,
    grants: Vec<WssGrant>,
}

impl WssConfig {
    pub fn radix(&self) -> usize {
        self.radix
    }

    pub fn wavelengths_per_port(&self) -> usize {
        self.wavelengths_per_port
    }

    pub fn route(&self, input_port: usize, wavelength: usize) -> Option<usize> {
        self.routes[input_port][wavelength]
    }

    pub fn grants(&self) -> &[WssGrant] {
        &self.grants
    }

    pub fn total_granted(&self) -> usize {
        self.grants.iter().map(|g| g.granted).sum()
    }

    /// No two input ports steer the same wavelength index to the same
    /// output port.
    pub fn is_conflict_free(&self) -> bool {
        let mut taken = vec![vec![false; self.wavelengths_per_port]; self.radix];
        for input in &self.routes {
            for (w, out) in input.iter().enumerate() {
                if let Some(out) = *out {
                    if taken[out][w] {
                        return false;
                    }
                    taken[out][w] = true;
                }
            }
        }
        true
    }
}

/// Configure a wave-selective switch for a list of demands, processed in
/// input order. Each demand receives `min(requested, remaining
/// conflict-free wavelengths)`; shortfalls are reported in the grants, not
/// errored.
pub fn wss_configure(spec: &SwitchSpec, demands: &[WssDemand]) -> WssConfig {
    let radix = spec.radix;
    let per_port = spec.wavelengths_per_port;
    let mut routes: Vec<Vec<Option<usize>>> = vec![vec![None; per_port]; radix];
    // taken[output][wavelength]: some input already sends this color there.
    let mut taken = vec![vec![false; per_port]; radix];
    let mut grants = Vec::with_capacity(demands.len());

    for &demand in demands {
        assert!(demand.input_port < radix, "input port out of range");
        assert!(demand.output_port < radix, "output port out of range");
        let mut granted = 0;
        for w in 0..per_port {
            if granted == demand.wavelength_count {
                break;
            }
            if routes[demand.input_port][w].is_none() && !taken[demand.output_port][w] {
                routes[demand.input_port][w] = Some(demand.output_port);
                taken[demand.output_port][w] = true;
                granted += 1;
            }
        }
        grants.push(WssGrant { demand, granted });
    }

    WssConfig {
        radix,
        wavelengths_per_port: per_port,
        routes,
        grants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn study_switch() -> SwitchSpec {
        SwitchSpec::study_wave_selective()
    }

    #[test]
    fn single_demand_fully_granted() {
        let config = wss_configure(
            &study_switch(),
            &[WssDemand {
                input_port: 0,
                output_port: 1,
                wavelength_count: 256,
            }],
        );
        assert_eq!(config.grants()[0].granted, 256);
        assert!(config.is_conflict_free());
    }

    #[test]
    fn two_inputs_one_output_split_without_collision() {
        // Both inputs want all 256 colors at output 2; conflict-freedom
        // caps the total at 256.
        let config = wss_configure(
            &study_switch(),
            &[
                WssDemand {
                    input_port: 0,
                    output_port: 2,
                    wavelength_count: 256,
                },
                WssDemand {
                    input_port: 1,
                    output_port: 2,
                    wavelength_count: 256,
                },
            ],
        );
        assert_eq!(config.total_granted(), 256);
        assert!(config.is_conflict_free());
    }

    #[test]
    fn grants_processed_in_input_order() {
        let config = wss_configure(
            &study_switch(),
            &[
                WssDemand {
                    input_port: 0,
                    output_port: 3,
                    wavelength_count: 200,
                },
                WssDemand {
                    input_port: 1,
                    output_port: 3,
                    wavelength_count: 200,
                },
            ],
        );
        assert_eq!(config.grants()[0].granted, 200);
        assert_eq!(config.grants()[1].granted, 56);
    }
}
