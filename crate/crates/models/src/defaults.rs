use serde::{Deserialize, Serialize};

use crate::{IsoPerfInputs, LatencyParams, PowerParams};

/// One versioned table collecting every model constant, so that each number
/// can be overridden from a config file and reports can state which defaults
/// produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelDefaults {
    pub version: String,
    pub latency: LatencyParams,
    pub power: PowerParams,
    pub iso: IsoPerfInputs,
    /// End-to-end bit-error-rate target for memory traffic.
    pub memory_ber_target: f64,
}

impl Default for ModelDefaults {
    fn default() -> Self {
        Self {
            version: "study-defaults-1".to_string(),
            latency: LatencyParams::default(),
            power: PowerParams::default(),
            iso: IsoPerfInputs::default(),
            memory_ber_target: crate::MEMORY_BER_TARGET,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_versioned() {
        assert!(!ModelDefaults::default().version.is_empty());
    }
}
