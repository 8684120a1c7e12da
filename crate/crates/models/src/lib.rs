//! Closed-form side models for the disaggregated rack: added-latency
//! budgets, FEC error arithmetic, fabric power totals, and iso-performance
//! module counts. All functions are pure and thread-safe.

mod defaults;
mod fec;
mod iso;
mod latency;
mod power;

pub use defaults::ModelDefaults;
pub use fec::{fec_evaluate, FecModel, MEMORY_BER_TARGET};
pub use iso::{chip_increase_fraction, iso_performance, IsoPerfInputs, IsoPerfReport};
pub use latency::{latency_budget, FabricTech, LatencyBudget, LatencyParams};
pub use power::{power_total, PowerModel, PowerParams};
