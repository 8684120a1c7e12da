//! Core optical-fabric primitives: wavelengths, WDM link technologies, and
//! the three switch families used for rack-scale interconnects (monolithic
//! AWGRs, cascaded AWGRs, and wave-selective switches), each modeled as a
//! deterministic routing function with insertion-loss book-keeping.
//!
//! Everything here is a pure function over immutable inputs and safe to call
//! from any number of threads.

mod awgr;
mod cascade;
mod error;
mod loss;
mod switch;
mod wavelength;
mod wss;

pub mod verify;

pub use awgr::{awgr_route, awgr_wavelength_for, AwgrPermutation};
pub use cascade::{build_cascaded_awgr, CascadedAwgr, InterconnectLink};
pub use error::OpticsError;
pub use loss::{path_loss, PathSegment, DEFAULT_FIBER_DB_PER_M};
pub use switch::{SwitchKind, SwitchSpec};
pub use wavelength::{link_catalog, LinkTech, Wavelength};
pub use wss::{wss_configure, WssConfig, WssDemand, WssGrant};
