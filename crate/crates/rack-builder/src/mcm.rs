use serde::{Deserialize, Serialize};

/// Optical escape configuration shared by every MCM in the rack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct McmSpec {
    pub fibers: usize,
    pub wavelengths_per_fiber: usize,
    pub gbps_per_wavelength: f64,
    /// Fraction of escape bandwidth reserved for the protocol controller.
    pub controller_overhead: f64,
}

impl Default for McmSpec {
    fn default() -> Self {
        Self {
            fibers: 32,
            wavelengths_per_fiber: 64,
            gbps_per_wavelength: 25.0,
            controller_overhead: 0.0,
        }
    }
}

impl McmSpec {
    pub fn total_wavelengths(&self) -> usize {
        self.fibers * self.wavelengths_per_fiber
    }

    /// Raw escape bandwidth in GB/s.
    pub fn escape_gbytes_per_s(&self) -> f64 {
        self.total_wavelengths() as f64 * self.gbps_per_wavelength / 8.0
    }

    /// Escape bandwidth left for payload after the controller reservation.
    pub fn usable_escape_gbytes_per_s(&self) -> f64 {
        self.escape_gbytes_per_s() * (1.0 - self.controller_overhead)
    }
}
