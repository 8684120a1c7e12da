use serde::{Deserialize, Serialize};

/// Static wavelength map of the fabric as one source sees it: for every
/// source, the destination each transmit wavelength reaches. Built once
/// from a topology plan and shared read-only by all controllers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FabricView {
    /// `targets[src][lambda]` is the MCM that wavelength lands on, if any.
    targets: Vec<Vec<Option<u32>>>,
    /// `toward[src][dst]`: transmit wavelengths of `src` reaching `dst`,
    /// ascending.
    toward: Vec<Vec<Vec<u32>>>,
    gbps_per_wavelength: f64,
}

impl FabricView {
    pub fn new(targets: Vec<Vec<Option<u32>>>, gbps_per_wavelength: f64) -> Self {
        let n = targets.len();
        let mut toward = vec![vec![Vec::new(); n]; n];
        for (src, lambdas) in targets.iter().enumerate() {
            for (lambda, dst) in lambdas.iter().enumerate() {
                if let Some(dst) = dst {
                    toward[src][*dst as usize].push(lambda as u32);
                }
            }
        }
        Self {
            targets,
            toward,
            gbps_per_wavelength,
        }
    }

    /// All-to-all fabric of `n` nodes with exactly one wavelength per
    /// ordered pair, the shape a single cyclic AWGR gives. Handy for tests
    /// and small demos.
    pub fn single_awgr(n: usize, gbps_per_wavelength: f64) -> Self {
        let targets = (0..n)
            .map(|src| {
                (0..n)
                    .map(|w| {
                        let dst = (src + w) % n;
                        (dst != src).then_some(dst as u32)
                    })
                    .collect()
            })
            .collect();
        Self::new(targets, gbps_per_wavelength)
    }

    pub fn mcm_count(&self) -> usize {
        self.targets.len()
    }

    pub fn lambda_count(&self, src: u32) -> usize {
        self.targets[src as usize].len()
    }

    pub fn target(&self, src: u32, lambda: u32) -> Option<u32> {
        self.targets[src as usize][lambda as usize]
    }

    pub fn toward(&self, src: u32, dst: u32) -> &[u32] {
        &self.toward[src as usize][dst as usize]
    }

    pub fn gbps_per_wavelength(&self) -> f64 {
        self.gbps_per_wavelength
    }
}
