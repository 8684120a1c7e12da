use serde::{Deserialize, Serialize};

/// Electrical/optical constants of the fabric power model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PowerParams {
    /// Optical output per laser, dBm.
    pub laser_optical_dbm: f64,
    /// Laser wall-plug efficiency.
    pub laser_wpe: f64,
    pub modulator_pj_per_bit: f64,
    pub receiver_pj_per_bit: f64,
    pub gbps_per_wavelength: f64,
    /// Worst-case draw of one switch, W.
    pub switch_w_max: f64,
}

impl Default for PowerParams {
    fn default() -> Self {
        Self {
            laser_optical_dbm: 10.0,
            laser_wpe: 0.11,
            modulator_pj_per_bit: 0.8,
            receiver_pj_per_bit: 2.12,
            gbps_per_wavelength: 25.0,
            switch_w_max: 1000.0,
        }
    }
}

/// Itemized fabric power totals, in watts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerModel {
    pub laser_count: u64,
    pub laser_w: f64,
    pub modulator_w: f64,
    pub receiver_w: f64,
    pub switch_w: f64,
    pub total_w: f64,
}

impl PowerModel {
    pub fn is_consistent(&self) -> bool {
        let sum = self.laser_w + self.modulator_w + self.receiver_w + self.switch_w;
        sum == self.total_w
    }

    pub fn total_kw(&self) -> f64 {
        self.total_w / 1000.0
    }
}

/// Fabric power for a rack of `mcm_count` packages, each escaping on
/// `wavelengths_per_mcm` channels, connected through `switch_count`
/// switches. One always-on laser feeds each escape wavelength.
pub fn power_total(
    mcm_count: u64,
    wavelengths_per_mcm: u64,
    switch_count: u64,
    params: &PowerParams,
) -> PowerModel {
    assert!(
        mcm_count > 0 && wavelengths_per_mcm > 0,
        "counts must be positive"
    );
    let laser_count = mcm_count * wavelengths_per_mcm;
    let optical_w_per_laser = 10f64.powf(params.laser_optical_dbm / 10.0) / 1000.0;
    let laser_w = laser_count as f64 * optical_w_per_laser / params.laser_wpe;

    let bits_per_s = params.gbps_per_wavelength * 1e9;
    let modulator_w = laser_count as f64 * params.modulator_pj_per_bit * 1e-12 * bits_per_s;
    let receiver_w = laser_count as f64 * params.receiver_pj_per_bit * 1e-12 * bits_per_s;

    let switch_w = switch_count as f64 * params.switch_w_max;

    let model = PowerModel {
        laser_count,
        laser_w,
        modulator_w,
        receiver_w,
        switch_w,
        total_w: laser_w + modulator_w + receiver_w + switch_w,
    };
    debug_assert!(model.is_consistent());
    model
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> PowerParams {
        PowerParams::default()
    }

    #[test]
    fn laser_total_near_quoted_figure() {
        // Independent arithmetic: 716800 lasers, 10 mW optical each, 11% WPE.
        let expected = 716_800.0 * 0.010 / 0.11;
        let model = power_total(350, 2048, 6, &defaults());
        assert_eq!(model.laser_count, 716_800);
        assert!((model.laser_w - expected).abs() < 1e-6);
        // Within 5% of the rounded 64.5 kW figure.
        assert!((model.laser_w - 64_500.0).abs() / 64_500.0 < 0.05);
    }

    #[test]
    fn modulator_receiver_total_near_quoted_figure() {
        // 716800 x 2.92 pJ/bit x 25 Gbps.
        let expected = 716_800.0 * 2.92e-12 * 25e9;
        let model = power_total(350, 2048, 6, &defaults());
        let modrx = model.modulator_w + model.receiver_w;
        assert!((modrx - expected).abs() < 1e-6);
        assert!((modrx - 52_500.0).abs() / 52_500.0 < 0.05);
    }

    #[test]
    fn rack_total_under_150kw() {
        let model = power_total(350, 2048, 6, &defaults());
        assert!(model.total_w <= 150_000.0);
        assert!(model.is_consistent());
    }

    #[test]
    fn linear_in_wavelengths_and_mcms() {
        let p = defaults();
        let base = power_total(350, 2048, 0, &p);
        let double_w = power_total(350, 4096, 0, &p);
        let double_m = power_total(700, 2048, 0, &p);
        assert!((double_w.total_w - 2.0 * base.total_w).abs() < 1e-6);
        assert!((double_m.total_w - 2.0 * base.total_w).abs() < 1e-6);
    }
}
