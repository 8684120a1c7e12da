use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{FabricView, KnowledgeBase, OccupancyMode, OccupancyVector, RouteError};

/// One indirect path of a flow: a relay through `via`, taking one of the
/// source's wavelengths to the intermediate and one of the intermediate's
/// wavelengths onward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndirectPath {
    pub via: u32,
    pub src_lambda: u32,
    pub mid_lambda: u32,
}

/// The wavelengths serving one flow. Packets of the flow stay pinned to
/// these paths from assignment until release.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowAssignment {
    pub flow: u64,
    pub src: u32,
    pub dst: u32,
    pub direct: Vec<u32>,
    pub indirect: Vec<IndirectPath>,
    pub granted_gbps: f64,
    /// Demand could not be met even using every viable candidate.
    pub saturated: bool,
}

impl FlowAssignment {
    pub fn path_count(&self) -> usize {
        self.direct.len() + self.indirect.len()
    }
}

/// Knobs for one routing decision.
#[derive(Debug, Clone, Copy, Default)]
pub struct RouteOptions<'a> {
    /// When set, only these MCMs may serve as intermediates.
    pub allowed_intermediates: Option<&'a [bool]>,
}

/// What an intermediate does when the wavelength a source counted on turns
/// out busy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FallbackOutcome {
    /// The intermediate had its own free direct wavelength to the
    /// destination and took it.
    Direct { lambda: u32 },
    /// The intermediate relays through a second intermediate; the onward
    /// wavelength is still only believed free.
    Via {
        via: u32,
        src_lambda: u32,
        mid_lambda: u32,
    },
    /// Nothing viable from here.
    Exhausted,
}

/// Per-MCM routing state machine: authoritative local wavelength occupancy
/// plus a possibly stale view of everyone else.
#[derive(Debug, Clone)]
pub struct Controller {
    index: u32,
    /// Flow slots per local transmit wavelength; 0 means free.
    slots: Vec<u8>,
    version: u64,
    dirty: bool,
    kb: KnowledgeBase,
}

impl Controller {
    pub fn new(index: u32, fabric: &FabricView) -> Self {
        Self {
            index,
            slots: vec![0; fabric.lambda_count(index)],
            version: 0,
            dirty: false,
            kb: KnowledgeBase::new(fabric.mcm_count()),
        }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn kb_mut(&mut self) -> &mut KnowledgeBase {
        &mut self.kb
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn is_free(&self, lambda: u32) -> bool {
        self.slots[lambda as usize] == 0
    }

    pub fn busy_lambdas(&self) -> usize {
        self.slots.iter().filter(|&&s| s > 0).count()
    }

    /// True once after each state change; cleared by `encode_occupancy`.
    pub fn dirty(&self) -> bool {
        self.dirty
    }

    /// Snapshot local occupancy for dissemination. Bumps the version so
    /// receivers can order updates.
    pub fn encode_occupancy(&mut self, mode: OccupancyMode) -> Arc<OccupancyVector> {
        self.version += 1;
        self.dirty = false;
        Arc::new(OccupancyVector::new(
            self.index,
            mode,
            self.version,
            self.slots.clone(),
        ))
    }

    fn occupy(&mut self, lambda: u32) {
        debug_assert_eq!(self.slots[lambda as usize], 0, "wavelength double-booked");
        self.slots[lambda as usize] = 1;
        self.version += 1;
        self.dirty = true;
    }

    /// Claim a relay wavelength if it really is free. This is the moment a
    /// stale source decision gets caught.
    pub fn try_occupy(&mut self, lambda: u32) -> bool {
        if self.slots[lambda as usize] == 0 {
            self.occupy(lambda);
            true
        } else {
            false
        }
    }

    /// Free previously assigned wavelengths. Releasing an already-free
    /// wavelength is an error so accounting bugs surface immediately.
    pub fn release(&mut self, lambdas: &[u32]) -> Result<(), RouteError> {
        for (i, &lambda) in lambdas.iter().enumerate() {
            if lambda as usize >= self.slots.len() {
                return Err(RouteError::LambdaOutOfRange {
                    lambda,
                    count: self.slots.len(),
                });
            }
            if self.slots[lambda as usize] == 0 || lambdas[..i].contains(&lambda) {
                return Err(RouteError::DoubleRelease(lambda));
            }
        }
        for &lambda in lambdas {
            self.slots[lambda as usize] = 0;
        }
        if !lambdas.is_empty() {
            self.version += 1;
            self.dirty = true;
        }
        Ok(())
    }

    /// First free wavelength of `self` reaching `dst`.
    fn first_free_toward(&self, dst: u32, fabric: &FabricView) -> Option<u32> {
        fabric
            .toward(self.index, dst)
            .iter()
            .copied()
            .find(|&l| self.is_free(l))
    }

    fn count_free_toward(&self, dst: u32, fabric: &FabricView) -> u32 {
        fabric
            .toward(self.index, dst)
            .iter()
            .filter(|&&l| self.is_free(l))
            .count() as u32
    }

    /// How many wavelengths of peer `mid` toward `dst` the knowledge base
    /// believes are free. With no entry for the peer the vector is taken
    /// as idle, which matches a fabric that has not spoken yet.
    fn kb_count_free(&self, mid: u32, dst: u32, fabric: &FabricView) -> u32 {
        let lambdas = fabric.toward(mid, dst);
        match self.kb.entry(mid) {
            Some(entry) => lambdas.iter().filter(|&&l| entry.vector.is_free(l)).count() as u32,
            None => lambdas.len() as u32,
        }
    }

    /// The `skip`-th believed-free wavelength of peer `mid` toward `dst`,
    /// counting from zero in ascending order.
    fn kb_nth_free(&self, mid: u32, dst: u32, skip: u32, fabric: &FabricView) -> Option<u32> {
        let lambdas = fabric.toward(mid, dst);
        match self.kb.entry(mid) {
            Some(entry) => lambdas
                .iter()
                .copied()
                .filter(|&l| entry.vector.is_free(l))
                .nth(skip as usize),
            None => lambdas.get(skip as usize).copied(),
        }
    }

    /// Route a flow to `dst`: free direct wavelengths first, then one
    /// wavelength per additional path through intermediates where both the
    /// local leg (authoritative) and the onward leg (per knowledge base)
    /// look free, picked uniformly at random among the viable candidates.
    pub fn select_route(
        &mut self,
        flow: u64,
        dst: u32,
        demand_gbps: f64,
        fabric: &FabricView,
        opts: &RouteOptions,
        rng: &mut impl Rng,
    ) -> Result<FlowAssignment, RouteError> {
        if dst == self.index {
            return Err(RouteError::SelfRoute(dst));
        }
        if demand_gbps.is_nan() || demand_gbps <= 0.0 {
            return Err(RouteError::NonPositiveDemand(demand_gbps));
        }
        if dst as usize >= fabric.mcm_count() {
            return Err(RouteError::UnknownDestination {
                dst,
                mcm_count: fabric.mcm_count(),
            });
        }

        let lambda_gbps = fabric.gbps_per_wavelength();
        let paths_needed = (demand_gbps / lambda_gbps).ceil() as usize;

        let mut direct = Vec::new();
        while direct.len() < paths_needed {
            match self.first_free_toward(dst, fabric) {
                Some(lambda) => {
                    self.occupy(lambda);
                    direct.push(lambda);
                }
                None => break,
            }
        }

        let mut indirect = Vec::new();
        let mut remaining = paths_needed - direct.len();
        if remaining > 0 {
            // Candidate intermediates, ascending. Wavelength identities are
            // materialized lazily at pick time; until then only the counts
            // matter. `mid_taken` tracks this flow's tentative consumption
            // of the peer's believed-free wavelengths.
            struct Candidate {
                via: u32,
                src_left: u32,
                mid_left: u32,
                mid_taken: u32,
            }
            let mut candidates: Vec<Candidate> = Vec::new();
            for mid in 0..fabric.mcm_count() as u32 {
                if mid == self.index || mid == dst {
                    continue;
                }
                if let Some(mask) = opts.allowed_intermediates {
                    if !mask[mid as usize] {
                        continue;
                    }
                }
                let src_left = self.count_free_toward(mid, fabric);
                if src_left == 0 {
                    continue;
                }
                let mid_left = self.kb_count_free(mid, dst, fabric);
                if mid_left == 0 {
                    continue;
                }
                candidates.push(Candidate {
                    via: mid,
                    src_left,
                    mid_left,
                    mid_taken: 0,
                });
            }

            while remaining > 0 && !candidates.is_empty() {
                let pick = rng.gen_range(0..candidates.len());
                let chosen = &mut candidates[pick];
                let via = chosen.via;
                let src_lambda = self
                    .first_free_toward(via, fabric)
                    .expect("candidate kept a free source leg");
                let mid_lambda = self
                    .kb_nth_free(via, dst, chosen.mid_taken, fabric)
                    .expect("candidate kept a believed-free onward leg");
                chosen.src_left -= 1;
                chosen.mid_left -= 1;
                chosen.mid_taken += 1;
                if chosen.src_left == 0 || chosen.mid_left == 0 {
                    candidates.swap_remove(pick);
                }
                self.occupy(src_lambda);
                indirect.push(IndirectPath {
                    via,
                    src_lambda,
                    mid_lambda,
                });
                remaining -= 1;
            }
        }

        let granted = lambda_gbps * (direct.len() + indirect.len()) as f64;
        Ok(FlowAssignment {
            flow,
            src: self.index,
            dst,
            direct,
            indirect,
            granted_gbps: granted,
            saturated: remaining > 0,
        })
    }

    /// Claim this node's lowest free direct wavelength toward `dst`, if any.
    pub fn take_free_direct(&mut self, dst: u32, fabric: &FabricView) -> Option<u32> {
        let lambda = self.first_free_toward(dst, fabric)?;
        self.occupy(lambda);
        Some(lambda)
    }

    /// Re-route one wavelength of demand from this node, used when a relay
    /// arrived here and the onward wavelength the source believed free is
    /// actually busy: direct first, then one more intermediate, and so on
    /// up the caller's hop budget.
    pub fn fallback_at_intermediate(
        &mut self,
        dst: u32,
        fabric: &FabricView,
        opts: &RouteOptions,
        rng: &mut impl Rng,
    ) -> FallbackOutcome {
        if let Some(lambda) = self.take_free_direct(dst, fabric) {
            return FallbackOutcome::Direct { lambda };
        }
        match self.select_route(
            u64::MAX,
            dst,
            fabric.gbps_per_wavelength(),
            fabric,
            opts,
            rng,
        ) {
            Ok(assignment) if !assignment.saturated => {
                let path = assignment.indirect[0];
                FallbackOutcome::Via {
                    via: path.via,
                    src_lambda: path.src_lambda,
                    mid_lambda: path.mid_lambda,
                }
            }
            _ => FallbackOutcome::Exhausted,
        }
    }
}
