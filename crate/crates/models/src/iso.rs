use serde::{Deserialize, Serialize};

/// Baseline module census and the scaling factors that hold computational
/// throughput equal after disaggregation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IsoPerfInputs {
    pub baseline_cpus: u64,
    pub baseline_gpus: u64,
    pub baseline_memory_modules: u64,
    pub baseline_nics: u64,
    /// Extra CPUs needed to absorb the added memory latency.
    pub cpu_overhead: f64,
    /// Extra GPUs needed to absorb the added memory latency.
    pub gpu_overhead: f64,
    /// Pooling factor for memory modules.
    pub memory_reduction: f64,
    /// Pooling factor for NICs.
    pub nic_reduction: f64,
}

impl Default for IsoPerfInputs {
    fn default() -> Self {
        Self {
            baseline_cpus: 128,
            baseline_gpus: 512,
            baseline_memory_modules: 1024,
            baseline_nics: 256,
            cpu_overhead: 0.13,
            gpu_overhead: 0.08,
            memory_reduction: 4.0,
            nic_reduction: 2.0,
        }
    }
}

impl IsoPerfInputs {
    pub fn baseline_total(&self) -> u64 {
        self.baseline_cpus + self.baseline_gpus + self.baseline_memory_modules + self.baseline_nics
    }

    pub fn is_valid(&self) -> bool {
        self.memory_reduction >= 1.0
            && self.nic_reduction >= 1.0
            && self.cpu_overhead >= 0.0
            && self.gpu_overhead >= 0.0
    }
}

/// Module counts of the throughput-equivalent disaggregated system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoPerfReport {
    pub cpus: u64,
    pub gpus: u64,
    pub memory_modules: u64,
    pub nics: u64,
    pub disaggregated_total: u64,
    pub baseline_total: u64,
    pub reduction_fraction: f64,
}

/// Size a disaggregated system to match the baseline's throughput: more
/// compute to cover the latency overheads, fewer memory modules and NICs
/// thanks to pooling.
pub fn iso_performance(inputs: &IsoPerfInputs) -> IsoPerfReport {
    assert!(inputs.is_valid(), "invalid iso-performance inputs");
    let cpus = (inputs.baseline_cpus as f64 * (1.0 + inputs.cpu_overhead)).ceil() as u64;
    let gpus = (inputs.baseline_gpus as f64 * (1.0 + inputs.gpu_overhead)).ceil() as u64;
    let memory_modules =
        (inputs.baseline_memory_modules as f64 / inputs.memory_reduction).ceil() as u64;
    let nics = (inputs.baseline_nics as f64 / inputs.nic_reduction).ceil() as u64;
    let disaggregated_total = cpus + gpus + memory_modules + nics;
    let baseline_total = inputs.baseline_total();
    IsoPerfReport {
        cpus,
        gpus,
        memory_modules,
        nics,
        disaggregated_total,
        baseline_total,
        reduction_fraction: 1.0 - disaggregated_total as f64 / baseline_total as f64,
    }
}

/// Alternative framing: keep the rack as-is and add compute instead; returns
/// the fractional chip increase.
pub fn chip_increase_fraction(added_chips: u64, inputs: &IsoPerfInputs) -> f64 {
    added_chips as f64 / inputs.baseline_total() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_census_reduces_1920_to_1082() {
        let report = iso_performance(&IsoPerfInputs::default());
        assert_eq!(report.cpus, 145);
        assert_eq!(report.gpus, 553);
        assert_eq!(report.memory_modules, 256);
        assert_eq!(report.nics, 128);
        assert_eq!(report.disaggregated_total, 1082);
        assert_eq!(report.baseline_total, 1920);
        assert!(report.reduction_fraction >= 0.43 && report.reduction_fraction <= 0.44);
    }

    #[test]
    fn identity_factors_change_nothing() {
        let inputs = IsoPerfInputs {
            cpu_overhead: 0.0,
            gpu_overhead: 0.0,
            memory_reduction: 1.0,
            nic_reduction: 1.0,
            ..IsoPerfInputs::default()
        };
        let report = iso_performance(&inputs);
        assert_eq!(report.disaggregated_total, report.baseline_total);
        assert_eq!(report.reduction_fraction, 0.0);
    }

    #[test]
    fn adding_128_compute_chips_is_seven_percent() {
        let f = chip_increase_fraction(128, &IsoPerfInputs::default());
        assert_eq!((f * 100.0).round() as u64, 7);
    }
}
