//! Flow-level discrete-event simulation binding a rack topology, the
//! distributed routing logic, and a traffic profile into delivered
//! bandwidth, indirect-fraction, and latency reports.
//!
//! The event loop is single-threaded and fully deterministic: events are
//! ordered by (timestamp, sequence number) and all randomness flows from
//! one seeded generator, so identical inputs produce byte-identical
//! reports. Independent runs (seed sweeps) can execute in parallel since
//! nothing is shared.

mod engine;
mod flow;
mod report;
mod traffic;

pub use engine::{run, run_traced, run_with_seed, SimConfig, SimError};
pub use flow::{FlowClass, FlowSpec};
pub use report::{ClassStats, GpuWorstCaseStats, SimReport, TraceDecision, TraceRecord};
pub use traffic::{
    percentile_feasibility, prob_direct_suffices, worst_case_gpu_traffic, ClassProfile,
    DurationDist, TrafficProfile,
};
