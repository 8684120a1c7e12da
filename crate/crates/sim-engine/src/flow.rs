use serde::{Deserialize, Serialize};

use rack_builder::ChipType;

/// Traffic classes of the disaggregated rack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowClass {
    CpuMem,
    NicMem,
    GpuHbm,
    GpuGpu,
    HbmHbm,
}

impl FlowClass {
    /// Source and destination chip roles this class runs between.
    pub fn roles(self) -> (ChipType, ChipType) {
        match self {
            FlowClass::CpuMem => (ChipType::Cpu, ChipType::Ddr4),
            FlowClass::NicMem => (ChipType::Nic, ChipType::Ddr4),
            FlowClass::GpuHbm => (ChipType::Gpu, ChipType::Hbm),
            FlowClass::GpuGpu => (ChipType::Gpu, ChipType::Gpu),
            FlowClass::HbmHbm => (ChipType::Hbm, ChipType::Hbm),
        }
    }
}

impl std::fmt::Display for FlowClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FlowClass::CpuMem => "cpu_mem",
            FlowClass::NicMem => "nic_mem",
            FlowClass::GpuHbm => "gpu_hbm",
            FlowClass::GpuGpu => "gpu_gpu",
            FlowClass::HbmHbm => "hbm_hbm",
        };
        f.write_str(s)
    }
}

/// One offered demand between two MCMs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowSpec {
    pub src: u32,
    pub dst: u32,
    pub demand_gbps: f64,
    pub arrival_s: f64,
    pub duration_s: f64,
    pub class: FlowClass,
}

impl FlowSpec {
    pub fn is_valid(&self) -> bool {
        self.demand_gbps > 0.0 && self.duration_s > 0.0 && self.src != self.dst
    }
}
