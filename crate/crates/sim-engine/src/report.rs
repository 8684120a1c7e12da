use serde::{Deserialize, Serialize};

use crate::FlowClass;

/// Offered versus delivered bandwidth of one traffic class, averaged over
/// the horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassStats {
    pub class: FlowClass,
    pub offered_gbps: f64,
    pub delivered_gbps: f64,
    /// Share of delivered bandwidth that rode indirect paths.
    pub indirect_fraction: f64,
}

/// Headroom accounting for the constructed worst-case GPU scenario.
///
/// The budget line is the closed-form indirect capacity of one GPU
/// (minimum direct pair bandwidth times the rack's GPU census, in GB/s);
/// the usage lines are the offered HBM bandwidth per GPU and the offered
/// GPU-to-GPU bandwidth per GPU MCM. Headroom is budget minus both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GpuWorstCaseStats {
    pub gpu_mcm_count: u64,
    pub gpu_chip_count: u64,
    pub min_gpu_gpu_delivered_gbps: f64,
    pub gpu_gpu_indirect_fraction: f64,
    pub per_gpu_budget_gbyte_s: f64,
    pub per_gpu_hbm_gbyte_s: f64,
    pub per_mcm_gpu_gpu_gbyte_s: f64,
    pub per_gpu_headroom_gbyte_s: f64,
}

/// Everything one simulation run reports. Serialization is deterministic,
/// so identical (plan, profile, seed, horizon) inputs produce byte-identical
/// reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub seed: u64,
    pub horizon_s: f64,
    /// Hash of plan, profile, and engine configuration.
    pub config_digest: String,
    pub flows_arrived: u64,
    pub per_class: Vec<ClassStats>,
    pub offered_gbps: f64,
    pub delivered_gbps: f64,
    pub indirect_fraction: f64,
    /// Stale-knowledge discoveries at intermediates.
    pub fallback_events: u64,
    /// Path re-queues at the source after hop-limit or candidate exhaustion.
    pub requeue_events: u64,
    pub capacity_violations: u64,
    /// Fraction of the horizon with at least one under-served flow.
    pub blocked_time_fraction: f64,
    /// (latency ns, flow count); latency reflects the paths established at
    /// admission. One entry bucket per distinct latency.
    pub latency_histogram_ns: Vec<(u64, u64)>,
    pub gpu_worst_case: Option<GpuWorstCaseStats>,
}

impl SimReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn histogram_total(&self) -> u64 {
        self.latency_histogram_ns.iter().map(|(_, c)| c).sum()
    }

    /// One-line CSV summary plus header, for spreadsheet plumbing.
    pub fn to_csv_summary(&self) -> String {
        let mut out = String::from(
            "seed,horizon_s,flows,offered_gbps,delivered_gbps,indirect_fraction,\
             fallback_events,requeue_events,capacity_violations,blocked_time_fraction\n",
        );
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            self.seed,
            self.horizon_s,
            self.flows_arrived,
            self.offered_gbps,
            self.delivered_gbps,
            self.indirect_fraction,
            self.fallback_events,
            self.requeue_events,
            self.capacity_violations,
            self.blocked_time_fraction,
        ));
        out
    }
}

/// One routing decision, for the optional line-delimited debug trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub time_s: f64,
    pub src: u32,
    pub dst: u32,
    pub decision: TraceDecision,
    pub hops: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceDecision {
    /// Flow admitted on direct wavelengths only.
    AdmitDirect,
    /// Flow admitted with at least one indirect path.
    AdmitIndirect,
    /// Admission left part of the demand unserved.
    AdmitSaturated,
    /// An intermediate repaired a stale onward wavelength.
    Fallback,
    /// Paths re-queued at the source.
    Requeue,
    Complete,
}

/// FNV-1a over the canonical JSON of anything serializable; stable across
/// runs and platforms, used to fingerprint configurations in reports.
pub(crate) fn digest<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_string(value).expect("digest input serializes");
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in json.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        assert_eq!(digest(&42u32), digest(&42u32));
        assert_ne!(digest(&42u32), digest(&43u32));
    }
}
