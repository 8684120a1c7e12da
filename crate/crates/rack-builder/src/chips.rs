use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Chip families packed into MCMs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChipType {
    Cpu,
    Gpu,
    Nic,
    Hbm,
    Ddr4,
}

impl std::fmt::Display for ChipType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ChipType::Cpu => "cpu",
            ChipType::Gpu => "gpu",
            ChipType::Nic => "nic",
            ChipType::Hbm => "hbm",
            ChipType::Ddr4 => "ddr4",
        };
        f.write_str(s)
    }
}

/// Escape-bandwidth requirement and rack census of one chip type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChipSpec {
    pub chip_type: ChipType,
    /// Off-chip bandwidth the chip must keep after packing, GB/s.
    pub escape_gbytes_per_s: f64,
    pub count_per_rack: u64,
}

/// Optional per-type limit on chips per MCM, for constraints other than
/// bandwidth (package area, controller fan-out).
pub type ChipCaps = BTreeMap<ChipType, u64>;

/// Baseline rack contents: 128 GPU-accelerated nodes.
///
/// Per node: one CPU with eight DDR4-3200 channels (204.8 GB/s) plus four
/// 31.5 GB/s PCIe Gen4 GPU links plus four 25 GB/s NIC links; four GPUs,
/// each with 1555.2 GB/s of HBM, twelve 25 GB/s NVLinks, and a 31.5 GB/s
/// PCIe link; four 200 Gbps NICs counted at their PCIe-side rate.
pub fn baseline_rack() -> Vec<ChipSpec> {
    vec![
        ChipSpec {
            chip_type: ChipType::Cpu,
            escape_gbytes_per_s: 204.8 + 4.0 * 31.5 + 4.0 * 25.0,
            count_per_rack: 128,
        },
        ChipSpec {
            chip_type: ChipType::Gpu,
            escape_gbytes_per_s: 1555.2 + 12.0 * 25.0 + 31.5,
            count_per_rack: 512,
        },
        ChipSpec {
            chip_type: ChipType::Nic,
            escape_gbytes_per_s: 31.5,
            count_per_rack: 512,
        },
        ChipSpec {
            chip_type: ChipType::Hbm,
            escape_gbytes_per_s: 1555.2,
            count_per_rack: 512,
        },
        ChipSpec {
            chip_type: ChipType::Ddr4,
            escape_gbytes_per_s: 25.6,
            count_per_rack: 1024,
        },
    ]
}

/// Default packing caps: DDR4 is limited to 27 modules per MCM, well below
/// what bandwidth alone would allow.
pub fn default_chip_caps() -> ChipCaps {
    let mut caps = ChipCaps::new();
    caps.insert(ChipType::Ddr4, 27);
    caps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_has_five_types() {
        let rack = baseline_rack();
        assert_eq!(rack.len(), 5);
        for chip in &rack {
            assert!(chip.escape_gbytes_per_s > 0.0);
            assert!(chip.count_per_rack > 0);
        }
    }

    #[test]
    fn gpu_escape_sums_hbm_nvlink_pcie() {
        let gpu = baseline_rack()[1];
        assert_eq!(gpu.chip_type, ChipType::Gpu);
        assert!((gpu.escape_gbytes_per_s - 1886.7).abs() < 1e-9);
    }
}
