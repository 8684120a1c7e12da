//! Distributed per-source routing over a wavelength-routed fabric.
//!
//! Every module tracks which of its own transmit wavelengths are busy
//! (authoritative), learns peer state through piggybacked occupancy vectors
//! (possibly stale), serves demand direct-first, and spills excess onto
//! indirect paths through intermediates chosen uniformly at random among
//! the candidates that look viable. Stale knowledge is repaired by letting
//! the intermediate re-route and, past a hop limit, re-queueing at the
//! source.
//!
//! Controllers are logically independent state machines; a routing decision
//! reads only the deciding node's local state and its knowledge base.

mod controller;
mod error;
mod fabric;
mod knowledge;
mod occupancy;

pub use controller::{Controller, FallbackOutcome, FlowAssignment, IndirectPath, RouteOptions};
pub use error::RouteError;
pub use fabric::FabricView;
pub use knowledge::{KbEntry, KnowledgeBase};
pub use occupancy::{OccupancyMode, OccupancyVector};
