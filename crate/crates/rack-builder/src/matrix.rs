use serde::{Deserialize, Serialize};

use crate::{FabricKind, TopologyPlan};

/// Ordered-pair table of direct wavelength counts between MCMs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectPathMatrix {
    n: usize,
    counts: Vec<u32>,
    gbps_per_wavelength: f64,
}

impl DirectPathMatrix {
    pub fn mcm_count(&self) -> usize {
        self.n
    }

    pub fn count(&self, src: u32, dst: u32) -> u32 {
        self.counts[src as usize * self.n + dst as usize]
    }

    pub fn gbps(&self, src: u32, dst: u32) -> f64 {
        self.count(src, dst) as f64 * self.gbps_per_wavelength
    }

    /// No ordered pairs to report (zero or one MCM).
    pub fn is_empty(&self) -> bool {
        self.n <= 1
    }

    fn off_diagonal(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n).flat_map(move |s| {
            (0..self.n)
                .filter(move |&d| d != s)
                .map(move |d| self.counts[s * self.n + d])
        })
    }

    pub fn min_count(&self) -> Option<u32> {
        self.off_diagonal().min()
    }

    pub fn max_count(&self) -> Option<u32> {
        self.off_diagonal().max()
    }

    pub fn mean_count(&self) -> Option<f64> {
        if self.is_empty() {
            return None;
        }
        let pairs = (self.n * (self.n - 1)) as f64;
        Some(self.off_diagonal().map(|c| c as f64).sum::<f64>() / pairs)
    }

    pub fn min_gbps(&self) -> Option<f64> {
        self.min_count()
            .map(|c| c as f64 * self.gbps_per_wavelength)
    }

    /// Every ordered pair sees the same count in both directions.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|s| {
            (0..self.n).all(|d| self.counts[s * self.n + d] == self.counts[d * self.n + s])
        })
    }
}

/// Materialize the per-pair direct bandwidth guarantees of a plan.
///
/// Case A counts wavelengths through the AWGR routing function of every
/// shared switch. Case B counts shared switches times the wavelengths per
/// port, the bandwidth available once the switches are configured for a
/// full direct path.
pub fn direct_path_matrix(plan: &TopologyPlan) -> DirectPathMatrix {
    let n = plan.mcm_count;
    let mut counts = vec![0u32; n * n];
    match plan.fabric {
        FabricKind::AwgrCaseA => {
            for (src, targets) in plan.transmit_targets().iter().enumerate() {
                for dst in targets.iter().flatten() {
                    counts[src * n + *dst as usize] += 1;
                }
            }
        }
        FabricKind::WssCaseB => {
            let per_port = plan.switch.wavelengths_per_port as u32;
            let mut members: Vec<Vec<u32>> = vec![Vec::new(); plan.switch_count];
            for a in &plan.attachments {
                members[a.switch as usize].push(a.mcm);
            }
            for peers in &members {
                for &a in peers {
                    for &b in peers {
                        if a != b {
                            counts[a as usize * n + b as usize] += per_port;
                        }
                    }
                }
            }
        }
    }
    DirectPathMatrix {
        n,
        counts,
        gbps_per_wavelength: plan.switch.gbps_per_wavelength,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_awgr_fabric, McmSpec};
    use optics_core::SwitchSpec;

    #[test]
    fn degenerate_single_mcm_matrix_is_empty() {
        let plan =
            build_awgr_fabric(1, &SwitchSpec::study_cascaded_awgr(), &McmSpec::default()).unwrap();
        let matrix = direct_path_matrix(&plan);
        assert!(matrix.is_empty());
        assert_eq!(matrix.min_count(), None);
        assert_eq!(matrix.mean_count(), None);
    }

    #[test]
    fn toy_pair_sees_symmetric_counts() {
        let toy = SwitchSpec {
            radix: 2,
            wavelengths_per_port: 2,
            ..SwitchSpec::study_cascaded_awgr()
        };
        let plan = build_awgr_fabric(2, &toy, &McmSpec::default()).unwrap();
        let matrix = direct_path_matrix(&plan);
        assert!(matrix.is_symmetric());
        assert_eq!(matrix.count(0, 1), matrix.count(1, 0));
    }
}
