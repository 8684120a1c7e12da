use serde::{Deserialize, Serialize};

/// One WDM channel on a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wavelength {
    /// Channel number within the carrying fiber, `0..W`.
    pub index: usize,
    /// Data rate carried by the channel, in Gbps.
    pub rate_gbps: f64,
}

impl Wavelength {
    pub fn new(index: usize) -> Self {
        Self {
            index,
            rate_gbps: 25.0,
        }
    }

    pub fn with_rate(index: usize, rate_gbps: f64) -> Self {
        assert!(rate_gbps > 0.0, "wavelength rate must be positive");
        Self { index, rate_gbps }
    }
}

/// A WDM link technology entry: aggregate rate, energy cost, channel plan,
/// and the fiber count / power to escape 2 TB/s off a package.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkTech {
    pub name: String,
    pub gbps_total: f64,
    pub energy_pj_per_bit: f64,
    pub channels: usize,
    pub gbps_per_channel: f64,
    pub links_for_2tbps_escape: usize,
    pub watts_for_2tbps_escape: f64,
}

impl LinkTech {
    fn new(
        name: &str,
        energy_pj_per_bit: f64,
        gbps_per_channel: f64,
        channels: usize,
        links_for_2tbps_escape: usize,
        watts_for_2tbps_escape: f64,
    ) -> Self {
        let tech = Self {
            name: name.to_string(),
            gbps_total: gbps_per_channel * channels as f64,
            energy_pj_per_bit,
            channels,
            gbps_per_channel,
            links_for_2tbps_escape,
            watts_for_2tbps_escape,
        };
        debug_assert!(tech.is_consistent());
        tech
    }

    /// Aggregate rate equals channels times per-channel rate and all fields
    /// are positive.
    pub fn is_consistent(&self) -> bool {
        (self.gbps_total - self.channels as f64 * self.gbps_per_channel).abs() < 1e-9
            && self.gbps_total > 0.0
            && self.energy_pj_per_bit > 0.0
            && self.channels > 0
            && self.gbps_per_channel > 0.0
            && self.links_for_2tbps_escape > 0
            && self.watts_for_2tbps_escape > 0.0
    }
}

/// Catalog of link technologies, from commodity Ethernet optics up to
/// research-grade co-packaged DWDM parts.
pub fn link_catalog() -> Vec<LinkTech> {
    vec![
        LinkTech::new("100G Ethernet", 30.0, 25.0, 4, 160, 480.0),
        LinkTech::new("400G Ethernet", 30.0, 100.0, 4, 40, 197.0),
        LinkTech::new("TeraPHY", 0.9, 32.0, 24, 21, 14.4),
        LinkTech::new("DWDM 1T", 0.45, 16.0, 64, 16, 7.2),
        LinkTech::new("DWDM 2T", 0.3, 16.0, 128, 8, 4.8),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_consistent() {
        let catalog = link_catalog();
        assert_eq!(catalog.len(), 5);
        for tech in &catalog {
            assert!(tech.is_consistent(), "{} inconsistent", tech.name);
        }
    }

    #[test]
    fn catalog_totals() {
        let totals: Vec<f64> = link_catalog().iter().map(|t| t.gbps_total).collect();
        assert_eq!(totals, vec![100.0, 400.0, 768.0, 1024.0, 2048.0]);
    }

    #[test]
    fn default_wavelength_rate() {
        assert_eq!(Wavelength::new(3).rate_gbps, 25.0);
    }
}
