use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Interconnect technologies compared by the added-latency model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FabricTech {
    /// Optical fabric: one OEO conversion plus fiber propagation.
    Photonic,
    /// Two-level PCIe Gen5 switch tree: photonic-style endpoint costs plus
    /// four electronic switch hops.
    PcieGen5Tree,
    /// One hop of an Anton 3 style electronic torus.
    Anton3Hop,
}

impl std::str::FromStr for FabricTech {
    type Err = UnknownTech;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "photonic" => Ok(Self::Photonic),
            "pcie_gen5_tree" | "pcie-gen5-tree" => Ok(Self::PcieGen5Tree),
            "anton3_hop" | "anton3-hop" => Ok(Self::Anton3Hop),
            other => Err(UnknownTech(other.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown fabric technology `{0}` (expected photonic, pcie_gen5_tree, or anton3_hop)")]
pub struct UnknownTech(pub String);

/// Tunable constants of the latency model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LatencyParams {
    /// Electrical-optical-electrical conversion cost per traversal, ns.
    pub oeo_ns: f64,
    /// Fiber propagation, ns per meter.
    pub ns_per_m: f64,
    /// Forward-error-correction cost charged on relayed hops, ns.
    pub fec_ns: f64,
    /// Optional serialization line; the inter-module budget keeps it
    /// separate rather than folding it into the endpoint cost.
    pub serialization_ns: f64,
    /// Electronic switch hops in the PCIe tree.
    pub pcie_tree_hops: u32,
    /// Per-hop cost of a PCIe Gen5 switch. Tuned so the default four-hop
    /// tree lands on an 85 ns total.
    pub pcie_hop_ns: f64,
    /// Per-hop cost of an Anton 3 style network.
    pub anton3_hop_ns: f64,
}

impl Default for LatencyParams {
    fn default() -> Self {
        Self {
            oeo_ns: 15.0,
            ns_per_m: 5.0,
            fec_ns: 3.0,
            serialization_ns: 0.0,
            pcie_tree_hops: 4,
            pcie_hop_ns: 12.5,
            anton3_hop_ns: 90.0,
        }
    }
}

impl LatencyParams {
    /// Latency added per relayed (indirect) hop: one extra OEO conversion
    /// plus one extra FEC pass.
    pub fn per_extra_hop_ns(&self) -> f64 {
        self.oeo_ns + self.fec_ns
    }
}

/// Itemized added-latency budget between two modules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencyBudget {
    pub tech: FabricTech,
    pub propagation_ns: f64,
    pub oeo_ns: f64,
    pub fec_ns: f64,
    pub serialization_ns: f64,
    pub switch_hop_ns: f64,
    pub hops: u32,
    pub total_ns: f64,
}

impl LatencyBudget {
    /// The itemized lines always sum to the stated total.
    pub fn is_consistent(&self) -> bool {
        let sum = self.propagation_ns
            + self.oeo_ns
            + self.fec_ns
            + self.serialization_ns
            + self.switch_hop_ns * self.hops as f64;
        (sum - self.total_ns).abs() < 1e-9
    }
}

/// Added latency between two modules `distance_m` apart, with `extra_hops`
/// relayed traversals beyond the direct path.
pub fn latency_budget(
    distance_m: f64,
    extra_hops: u32,
    tech: FabricTech,
    params: &LatencyParams,
) -> LatencyBudget {
    assert!(distance_m >= 0.0, "distance must be nonnegative");
    let extra = extra_hops as f64;
    let budget = match tech {
        FabricTech::Photonic => {
            let propagation_ns = params.ns_per_m * distance_m;
            let oeo_ns = params.oeo_ns * (1.0 + extra);
            let fec_ns = params.fec_ns * extra;
            LatencyBudget {
                tech,
                propagation_ns,
                oeo_ns,
                fec_ns,
                serialization_ns: params.serialization_ns,
                switch_hop_ns: 0.0,
                hops: 0,
                total_ns: propagation_ns + oeo_ns + fec_ns + params.serialization_ns,
            }
        }
        FabricTech::PcieGen5Tree => {
            let propagation_ns = params.ns_per_m * distance_m;
            let oeo_ns = params.oeo_ns;
            let hops = params.pcie_tree_hops + extra_hops;
            LatencyBudget {
                tech,
                propagation_ns,
                oeo_ns,
                fec_ns: 0.0,
                serialization_ns: params.serialization_ns,
                switch_hop_ns: params.pcie_hop_ns,
                hops,
                total_ns: propagation_ns
                    + oeo_ns
                    + params.serialization_ns
                    + params.pcie_hop_ns * hops as f64,
            }
        }
        FabricTech::Anton3Hop => {
            let hops = 1 + extra_hops;
            LatencyBudget {
                tech,
                propagation_ns: 0.0,
                oeo_ns: 0.0,
                fec_ns: 0.0,
                serialization_ns: 0.0,
                switch_hop_ns: params.anton3_hop_ns,
                hops,
                total_ns: params.anton3_hop_ns * hops as f64,
            }
        }
    };
    debug_assert!(budget.is_consistent());
    budget
}
