use serde::{Deserialize, Serialize};

/// The three switch families considered for the rack fabric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwitchKind {
    CascadedAwgr,
    Spatial,
    WaveSelective,
}

/// Datasheet-level parameters of one optical switch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwitchSpec {
    pub kind: SwitchKind,
    pub radix: usize,
    pub wavelengths_per_port: usize,
    pub gbps_per_wavelength: f64,
    pub insertion_loss_db: f64,
    pub crosstalk_db: f64,
    /// Zero for AWGRs, which are passive and never reconfigure.
    pub reconfig_time_s: f64,
}

impl SwitchSpec {
    /// Cascaded-AWGR entry used for the rack study: a 3x12x11 assembly
    /// truncated to 370 usable ports, 370 wavelengths per port at 25 Gbps.
    pub fn study_cascaded_awgr() -> Self {
        Self {
            kind: SwitchKind::CascadedAwgr,
            radix: 370,
            wavelengths_per_port: 370,
            gbps_per_wavelength: 25.0,
            insertion_loss_db: 15.0,
            crosstalk_db: -35.0,
            reconfig_time_s: 0.0,
        }
    }

    /// Wave-selective entry used for the rack study: 256 ports with 256
    /// wavelengths per port at 25 Gbps, projected from smaller demonstrated
    /// building blocks.
    pub fn study_wave_selective() -> Self {
        Self {
            kind: SwitchKind::WaveSelective,
            radix: 256,
            wavelengths_per_port: 256,
            gbps_per_wavelength: 25.0,
            insertion_loss_db: 10.0,
            crosstalk_db: -35.0,
            reconfig_time_s: 1e-3,
        }
    }

    /// MEMS-actuated spatial switch entry: one broadband channel per port.
    pub fn study_spatial() -> Self {
        Self {
            kind: SwitchKind::Spatial,
            radix: 240,
            wavelengths_per_port: 1,
            gbps_per_wavelength: 25.0,
            insertion_loss_db: 9.8,
            crosstalk_db: -70.0,
            reconfig_time_s: 1e-3,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.radix >= 2
            && self.wavelengths_per_port >= 1
            && self.gbps_per_wavelength > 0.0
            && self.reconfig_time_s >= 0.0
    }

    /// Aggregate rate of one fully-driven port, in Gbps.
    pub fn port_gbps(&self) -> f64 {
        self.wavelengths_per_port as f64 * self.gbps_per_wavelength
    }
}
