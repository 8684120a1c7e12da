//! Packs baseline-rack chips into multi-chip modules under escape-bandwidth
//! parity and wires the modules into one of two optical fabrics: six
//! parallel cascaded AWGRs (case A) or eleven wave-selective switches
//! (case B), both with staggered port assignment.

mod chips;
mod error;
mod matrix;
mod mcm;
mod packing;
mod plan;

pub use chips::{baseline_rack, default_chip_caps, ChipCaps, ChipSpec, ChipType};
pub use error::RackError;
pub use matrix::{direct_path_matrix, DirectPathMatrix};
pub use mcm::McmSpec;
pub use packing::{pack_mcms, PackingRow, PackingTable};
pub use plan::{
    build_awgr_fabric, build_awgr_fabric_with_stride, build_wss_fabric, Attachment, FabricKind,
    TopologyPlan, DEFAULT_STAGGER_STRIDE,
};
