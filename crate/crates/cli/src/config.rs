//! The run configuration: one human-editable TOML file with nested sections
//! mirroring the toolkit's types. Every constant of the study ships as the
//! default, so a partial file overrides just what it names and a missing
//! file reproduces the study exactly.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};

use models::{IsoPerfInputs, LatencyParams, PowerParams};
use optics_core::SwitchSpec;
use rack_builder::{
    baseline_rack, build_awgr_fabric_with_stride, build_wss_fabric, default_chip_caps, pack_mcms,
    ChipSpec, ChipType, McmSpec, PackingTable, TopologyPlan, DEFAULT_STAGGER_STRIDE,
};
use sim_engine::{ClassProfile, DurationDist, FlowClass, FlowSpec, SimConfig, TrafficProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum, Default)]
#[serde(rename_all = "snake_case")]
pub enum FabricChoice {
    #[default]
    Awgr,
    Wss,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FabricSection {
    pub kind: FabricChoice,
    pub stagger_stride: usize,
}

impl Default for FabricSection {
    fn default() -> Self {
        Self {
            kind: FabricChoice::Awgr,
            stagger_stride: DEFAULT_STAGGER_STRIDE,
        }
    }
}

/// Stage shape of the cascaded AWGR switch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CascadeSection {
    pub k: usize,
    pub m: usize,
    pub n_rear: usize,
    pub effective_ports: usize,
}

impl Default for CascadeSection {
    fn default() -> Self {
        Self {
            k: 3,
            m: 12,
            n_rear: 11,
            effective_ports: 370,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SwitchSection {
    pub cascaded_awgr: SwitchSpec,
    pub wave_selective: SwitchSpec,
}

impl Default for SwitchSection {
    fn default() -> Self {
        Self {
            cascaded_awgr: SwitchSpec::study_cascaded_awgr(),
            wave_selective: SwitchSpec::study_wave_selective(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FecSection {
    pub default_raw_ber: f64,
}

impl Default for FecSection {
    fn default() -> Self {
        Self {
            default_raw_ber: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrafficSection {
    pub worst_case_gpu: bool,
    pub classes: BTreeMap<FlowClass, ClassProfile>,
    pub pinned: Vec<FlowSpec>,
}

impl Default for TrafficSection {
    fn default() -> Self {
        // Production-profile anchors: a quarter of the time demand clears
        // the P75 line, single-wavelength bandwidth covers 97%, and the
        // five-wavelength direct floor covers 99.5%.
        let mut classes = BTreeMap::new();
        classes.insert(
            FlowClass::CpuMem,
            ClassProfile {
                demand_percentiles: vec![(75.0, 3.68), (97.0, 25.0), (99.5, 125.0)],
                arrival_rate_per_s: 0.0,
                duration: DurationDist::Fixed { seconds: 1.0 },
            },
        );
        classes.insert(
            FlowClass::NicMem,
            ClassProfile {
                demand_percentiles: vec![(75.0, 2.5), (97.0, 25.0), (99.9, 125.0)],
                arrival_rate_per_s: 0.0,
                duration: DurationDist::Fixed { seconds: 1.0 },
            },
        );
        Self {
            worst_case_gpu: false,
            classes,
            pinned: Vec::new(),
        }
    }
}

/// Everything a run needs, with the study's constants as defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct RunConfig {
    pub version: ConfigVersion,
    pub mcm: McmSpec,
    pub chips: ChipsSection,
    pub fabric: FabricSection,
    pub cascade: CascadeSection,
    pub switch: SwitchSection,
    pub latency: LatencyParams,
    pub power: PowerParams,
    pub iso: IsoPerfInputs,
    pub fec: FecSection,
    pub sim: SimConfig,
    pub traffic: TrafficSection,
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfigVersion(pub String);

impl Default for ConfigVersion {
    fn default() -> Self {
        Self("study-defaults-1".to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ChipsSection {
    pub specs: Vec<ChipSpec>,
    pub caps: BTreeMap<ChipType, u64>,
}

impl Default for ChipsSection {
    fn default() -> Self {
        Self {
            specs: baseline_rack(),
            caps: default_chip_caps(),
        }
    }
}

impl RunConfig {
    /// The full study-default profile.
    pub fn study_defaults() -> Self {
        Self::default()
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: Self =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn pack(&self) -> Result<PackingTable, rack_builder::RackError> {
        pack_mcms(&self.chips.specs, &self.mcm, &self.chips.caps)
    }

    /// Build the configured fabric plan, labeled with chip roles.
    pub fn build_plan(&self, fabric: FabricChoice) -> anyhow::Result<TopologyPlan> {
        let table = self.pack()?;
        let mcm_count = table.total_mcms as usize;
        let plan = match fabric {
            FabricChoice::Awgr => build_awgr_fabric_with_stride(
                mcm_count,
                &self.switch.cascaded_awgr,
                &self.mcm,
                self.fabric.stagger_stride,
            )?,
            FabricChoice::Wss => {
                build_wss_fabric(mcm_count, &self.switch.wave_selective, &self.mcm)?
            }
        };
        Ok(plan.with_roles(table.inventory())?)
    }

    pub fn traffic_profile(&self, plan: &TopologyPlan) -> anyhow::Result<TrafficProfile> {
        if self.traffic.worst_case_gpu {
            return Ok(sim_engine::worst_case_gpu_traffic(plan)?);
        }
        Ok(TrafficProfile {
            classes: self.traffic.classes.clone(),
            pinned_flows: self.traffic.pinned.clone(),
            gpu_worst_case: false,
        })
    }

    /// Engine settings with the shared latency table folded in.
    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            latency: self.latency.clone(),
            ..self.sim.clone()
        }
    }
}
