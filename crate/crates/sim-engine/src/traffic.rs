//! Traffic profiles: stochastic per-class demand described by percentile
//! anchors, plus explicitly pinned flow lists for constructed scenarios.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use rack_builder::{ChipType, DirectPathMatrix, TopologyPlan};

use crate::{FlowClass, FlowSpec, SimError};

/// Flow holding time distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DurationDist {
    Fixed { seconds: f64 },
    Exponential { mean_s: f64 },
}

/// Demand statistics of one traffic class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassProfile {
    /// (percentile, demand Gbps) anchors with nondecreasing demands, e.g.
    /// [(75, 3.7), (97, 25), (99.5, 125)].
    pub demand_percentiles: Vec<(f64, f64)>,
    /// New flows per simulated second across the whole rack.
    pub arrival_rate_per_s: f64,
    pub duration: DurationDist,
}

impl ClassProfile {
    pub fn is_valid(&self) -> bool {
        self.demand_percentiles
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1)
            && self
                .demand_percentiles
                .iter()
                .all(|&(p, d)| (0.0..=100.0).contains(&p) && d >= 0.0)
            && self.arrival_rate_per_s >= 0.0
    }

    /// Inverse CDF at `u` in [0, 1): linear up to the first anchor,
    /// log-linear between anchors (demand spans orders of magnitude),
    /// clamped at the last anchor.
    pub fn sample_demand(&self, u: f64) -> f64 {
        let anchors = &self.demand_percentiles;
        if anchors.is_empty() {
            return 0.0;
        }
        let pct = u * 100.0;
        let (p0, d0) = anchors[0];
        if pct <= p0 {
            return d0 * pct / p0;
        }
        for w in anchors.windows(2) {
            let (pa, da) = w[0];
            let (pb, db) = w[1];
            if pct <= pb {
                let t = (pct - pa) / (pb - pa);
                if da > 0.0 && db > 0.0 {
                    return (da.ln() + t * (db.ln() - da.ln())).exp();
                }
                return da + t * (db - da);
            }
        }
        anchors.last().unwrap().1
    }
}

/// Offered load for one simulation: stochastic classes and/or a pinned
/// flow list.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrafficProfile {
    pub classes: BTreeMap<FlowClass, ClassProfile>,
    pub pinned_flows: Vec<FlowSpec>,
    /// Constructed worst-case GPU scenario: restricts GPU-to-GPU traffic to
    /// HBM intermediates and adds headroom accounting to the report.
    pub gpu_worst_case: bool,
}

impl TrafficProfile {
    pub fn validate(&self) -> Result<(), SimError> {
        for (class, profile) in &self.classes {
            if !profile.is_valid() {
                return Err(SimError::InvalidProfile {
                    class: *class,
                    reason: "percentiles must increase and demands be nondecreasing".into(),
                });
            }
        }
        for flow in &self.pinned_flows {
            if !flow.is_valid() {
                return Err(SimError::InvalidFlow {
                    src: flow.src,
                    dst: flow.dst,
                });
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.pinned_flows.is_empty() && self.classes.values().all(|c| c.arrival_rate_per_s == 0.0)
    }
}

/// Probability that a class's demand fits within `capacity_gbps`,
/// interpolated from its percentile anchors the same way demands are
/// sampled (log-linear between anchors).
pub fn prob_direct_suffices(capacity_gbps: f64, anchors: &[(f64, f64)]) -> f64 {
    if anchors.is_empty() {
        return 1.0;
    }
    let (_, d_last) = *anchors.last().unwrap();
    if anchors.iter().all(|&(_, d)| d == 0.0) {
        return 1.0;
    }
    if capacity_gbps > d_last {
        return 1.0;
    }
    let (p0, d0) = anchors[0];
    if capacity_gbps < d0 || (capacity_gbps == d0 && anchors.len() == 1) {
        if d0 == 0.0 {
            return p0 / 100.0;
        }
        return (p0 / 100.0) * (capacity_gbps / d0).max(0.0);
    }
    if capacity_gbps == d0 {
        return p0 / 100.0;
    }
    for w in anchors.windows(2) {
        let (pa, da) = w[0];
        let (pb, db) = w[1];
        if capacity_gbps <= db {
            if capacity_gbps == db {
                return pb / 100.0;
            }
            let t = if da > 0.0 && db > 0.0 {
                (capacity_gbps.ln() - da.ln()) / (db.ln() - da.ln())
            } else {
                (capacity_gbps - da) / (db - da)
            };
            return (pa + t * (pb - pa)) / 100.0;
        }
    }
    anchors.last().unwrap().0 / 100.0
}

/// Analytic feasibility table: per class, the probability that the plan's
/// minimum direct bandwidth covers the class demand. No simulation.
pub fn percentile_feasibility(
    matrix: &DirectPathMatrix,
    profile: &TrafficProfile,
) -> BTreeMap<FlowClass, f64> {
    let capacity = matrix.min_gbps().unwrap_or(0.0);
    profile
        .classes
        .iter()
        .map(|(class, cp)| {
            (
                *class,
                prob_direct_suffices(capacity, &cp.demand_percentiles),
            )
        })
        .collect()
}

/// Constructed worst case for the GPU population: every GPU MCM drives its
/// full NVLink-replacement bandwidth (900 GB/s) at its cyclic GPU neighbor,
/// on top of each GPU's full HBM bandwidth (1555.2 GB/s) toward the MCMs
/// holding its memory stacks. GPU-to-GPU demand arrives first, mirroring
/// its higher scheduling priority in the headroom argument.
pub fn worst_case_gpu_traffic(plan: &TopologyPlan) -> Result<TrafficProfile, SimError> {
    let roles = plan.roles.as_ref().ok_or(SimError::MissingRoles)?;
    let gpu_mcms: Vec<u32> = roles
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == ChipType::Gpu)
        .map(|(i, _)| i as u32)
        .collect();
    let hbm_mcms: Vec<u32> = roles
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == ChipType::Hbm)
        .map(|(i, _)| i as u32)
        .collect();
    if gpu_mcms.len() < 2 || hbm_mcms.is_empty() {
        return Err(SimError::MissingRoles);
    }

    const GPUS_PER_GPU_MCM: usize = 3;
    const STACKS_PER_HBM_MCM: usize = 4;
    const HBM_GBYTE_S_PER_GPU: f64 = 1555.2;
    const GPU_GPU_GBYTE_S_PER_MCM: f64 = 900.0;
    let long = 1e9; // outlives any horizon

    let mut flows = Vec::new();
    // GPU-to-GPU at full NVLink-replacement bandwidth toward the next GPU MCM.
    for (i, &src) in gpu_mcms.iter().enumerate() {
        let dst = gpu_mcms[(i + 1) % gpu_mcms.len()];
        flows.push(FlowSpec {
            src,
            dst,
            demand_gbps: GPU_GPU_GBYTE_S_PER_MCM * 8.0,
            arrival_s: 0.0,
            duration_s: long,
            class: FlowClass::GpuGpu,
        });
    }
    // Each GPU chip drives its own HBM stack; stacks live four to an HBM
    // MCM, and the stack census is what pins the number of paired GPUs
    // (the last GPU MCM may hold fewer than three).
    let gpu_chips = (gpu_mcms.len() * GPUS_PER_GPU_MCM).min(hbm_mcms.len() * STACKS_PER_HBM_MCM);
    let mut demand: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    for chip in 0..gpu_chips {
        let src = gpu_mcms[chip / GPUS_PER_GPU_MCM];
        let dst = hbm_mcms[chip / STACKS_PER_HBM_MCM];
        *demand.entry((src, dst)).or_insert(0.0) += HBM_GBYTE_S_PER_GPU * 8.0;
    }
    for ((src, dst), gbps) in demand {
        flows.push(FlowSpec {
            src,
            dst,
            demand_gbps: gbps,
            arrival_s: 1e-6,
            duration_s: long,
            class: FlowClass::GpuHbm,
        });
    }

    Ok(TrafficProfile {
        classes: BTreeMap::new(),
        pinned_flows: flows,
        gpu_worst_case: true,
    })
}
