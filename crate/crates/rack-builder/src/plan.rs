//! Fabric wiring plans.
//!
//! Case A attaches every MCM to six parallel cascaded AWGRs: the 32 escape
//! fibers split into five groups of six (384 wavelengths, of which the
//! switch port carries 370) plus a tail of two fibers whose 128 wavelengths,
//! together with one group's 14 overflow wavelengths, light 142 channels on
//! a sixth AWGR. Ports are staggered across switches so that the sixth
//! AWGR's partial coverage spreads evenly.
//!
//! Case B attaches each MCM to eight of eleven wave-selective switches at a
//! full 256-wavelength port per attachment; switch `I` scans the 256
//! consecutive MCM indices starting at `(32 * I) mod mcm_count` and skips
//! MCMs that already hold eight attachments, leaving a handful of switch
//! ports unconnected.

use serde::{Deserialize, Serialize};

use optics_core::{awgr_route, SwitchKind, SwitchSpec};

use crate::{ChipType, McmSpec, RackError};

/// Per-switch port offset between consecutive fiber groups of one MCM in
/// case A; co-prime with the 370-port radix.
pub const DEFAULT_STAGGER_STRIDE: usize = 59;

/// Fiber groups feeding full-width switch attachments in case A.
const FULL_GROUPS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FabricKind {
    AwgrCaseA,
    WssCaseB,
}

/// One MCM fiber group landed on one switch port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub mcm: u32,
    pub fiber_group: u32,
    pub switch: u32,
    pub port: u32,
    /// Wavelengths actually lit on this attachment.
    pub wavelengths: u32,
}

/// Fabric wiring: which MCM fiber group drives which switch port, and at
/// how many wavelengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyPlan {
    pub fabric: FabricKind,
    pub mcm_count: usize,
    pub switch_count: usize,
    pub switch: SwitchSpec,
    pub mcm: McmSpec,
    pub attachments: Vec<Attachment>,
    /// Case A port stagger stride; unused for case B.
    pub stagger_stride: usize,
    /// Chip type per MCM index, when known.
    pub roles: Option<Vec<ChipType>>,
}

impl TopologyPlan {
    pub fn with_roles(mut self, roles: Vec<ChipType>) -> Result<Self, RackError> {
        if roles.len() != self.mcm_count {
            return Err(RackError::RoleCountMismatch {
                roles: roles.len(),
                mcm_count: self.mcm_count,
            });
        }
        self.roles = Some(roles);
        Ok(self)
    }

    pub fn attachments_of(&self, mcm: u32) -> impl Iterator<Item = &Attachment> {
        self.attachments.iter().filter(move |a| a.mcm == mcm)
    }

    /// Port of `mcm` on `switch`, if attached.
    pub fn port_of(&self, mcm: u32, switch: u32) -> Option<u32> {
        self.attachments
            .iter()
            .find(|a| a.mcm == mcm && a.switch == switch)
            .map(|a| a.port)
    }

    /// Switches shared by two MCMs.
    pub fn shared_switches(&self, a: u32, b: u32) -> usize {
        (0..self.switch_count as u32)
            .filter(|&s| self.port_of(a, s).is_some() && self.port_of(b, s).is_some())
            .count()
    }

    pub fn switches_of(&self, mcm: u32) -> Vec<u32> {
        let mut switches: Vec<u32> = self.attachments_of(mcm).map(|a| a.switch).collect();
        switches.sort_unstable();
        switches.dedup();
        switches
    }

    pub fn unconnected_ports(&self) -> usize {
        self.switch_count * self.switch.radix - self.attachments.len()
    }

    /// Wavelengths lit by one MCM across all of its attachments.
    pub fn wavelengths_of(&self, mcm: u32) -> u32 {
        self.attachments_of(mcm).map(|a| a.wavelengths).sum()
    }

    /// Destination MCM of every transmit wavelength of every source, in
    /// (switch, wavelength) order. `None` marks channels that terminate on
    /// the source's own port or on an unoccupied port.
    ///
    /// For case A the targets follow the AWGR routing function; for case B
    /// they follow a round-robin wave-selective configuration that spreads
    /// each port's wavelengths one per peer, which is conflict-free for the
    /// same reason an AWGR is.
    pub fn transmit_targets(&self) -> Vec<Vec<Option<u32>>> {
        match self.fabric {
            FabricKind::AwgrCaseA => self.awgr_transmit_targets(),
            FabricKind::WssCaseB => self.wss_transmit_targets(),
        }
    }

    fn awgr_transmit_targets(&self) -> Vec<Vec<Option<u32>>> {
        let radix = self.switch.radix;
        // port -> mcm lookup per switch
        let mut port_owner = vec![vec![None; radix]; self.switch_count];
        for a in &self.attachments {
            port_owner[a.switch as usize][a.port as usize] = Some(a.mcm);
        }
        let mut targets = vec![Vec::new(); self.mcm_count];
        let mut per_switch: Vec<Vec<&Attachment>> = vec![Vec::new(); self.mcm_count];
        for a in &self.attachments {
            per_switch[a.mcm as usize].push(a);
        }
        for (mcm, atts) in per_switch.iter().enumerate() {
            let mut atts = atts.clone();
            atts.sort_by_key(|a| a.switch);
            for a in atts {
                if (a.switch as usize) < FULL_GROUPS {
                    for w in 0..a.wavelengths as usize {
                        let out = awgr_route(radix, a.port as usize, w).expect("in range");
                        let dst = port_owner[a.switch as usize][out].filter(|&d| d != mcm as u32);
                        targets[mcm].push(dst);
                    }
                } else {
                    // Tail AWGR: wavelengths aimed at the symmetric window of
                    // nearby MCM indices.
                    for dst in tail_window(mcm as u32, self.mcm_count, a.wavelengths as usize) {
                        targets[mcm].push(Some(dst));
                    }
                }
            }
        }
        targets
    }

    fn wss_transmit_targets(&self) -> Vec<Vec<Option<u32>>> {
        let per_port = self.switch.wavelengths_per_port;
        // Attached MCMs per switch, in port order.
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); self.switch_count];
        for a in &self.attachments {
            members[a.switch as usize].push(a.mcm);
        }
        let mut targets = vec![Vec::new(); self.mcm_count];
        let mut per_mcm: Vec<Vec<&Attachment>> = vec![Vec::new(); self.mcm_count];
        for a in &self.attachments {
            per_mcm[a.mcm as usize].push(a);
        }
        for (mcm, atts) in per_mcm.iter().enumerate() {
            let mut atts = atts.clone();
            atts.sort_by_key(|a| a.switch);
            for a in atts {
                let peers = &members[a.switch as usize];
                let my_idx = peers.iter().position(|&p| p == mcm as u32).unwrap();
                let others = peers.len() - 1;
                for w in 0..per_port {
                    if others == 0 {
                        targets[mcm].push(None);
                        continue;
                    }
                    let step = 1 + (w % others);
                    let dst = peers[(my_idx + step) % peers.len()];
                    targets[mcm].push(Some(dst));
                }
            }
        }
        targets
    }

    /// Structural invariants: no switch port double-booked, no MCM over its
    /// wavelength escape, case-specific switch counts.
    pub fn validate(&self) -> Result<(), RackError> {
        let mut seen = vec![vec![false; self.switch.radix]; self.switch_count];
        for a in &self.attachments {
            let s = a.switch as usize;
            let p = a.port as usize;
            if seen[s][p] {
                return Err(RackError::PortDoubleBooked { switch: s, port: p });
            }
            seen[s][p] = true;
        }
        for mcm in 0..self.mcm_count as u32 {
            assert!(
                self.wavelengths_of(mcm) as usize <= self.mcm.total_wavelengths(),
                "MCM {mcm} exceeds its wavelength escape"
            );
        }
        Ok(())
    }
}

/// Destination window served by the tail AWGR: the `count` nearest MCM
/// indices, split evenly above and below so coverage is symmetric (if the
/// count is odd the extra slot is used only when it is its own mirror, i.e.
/// the antipode of an even-sized rack).
fn tail_window(mcm: u32, mcm_count: usize, count: usize) -> Vec<u32> {
    let n = mcm_count as i64;
    let me = mcm as i64;
    let usable = count.min(mcm_count.saturating_sub(1));
    let half = usable / 2;
    let mut window = Vec::with_capacity(usable);
    for d in 1..=half as i64 {
        window.push(((me + d).rem_euclid(n)) as u32);
        window.push(((me - d).rem_euclid(n)) as u32);
    }
    if usable % 2 == 1 && n % 2 == 0 {
        let antipode = ((me + n / 2).rem_euclid(n)) as u32;
        if !window.contains(&antipode) {
            window.push(antipode);
        }
    }
    window.sort_unstable();
    window.dedup();
    window
}

/// Case A with the default stagger stride.
pub fn build_awgr_fabric(
    mcm_count: usize,
    awgr: &SwitchSpec,
    mcm: &McmSpec,
) -> Result<TopologyPlan, RackError> {
    build_awgr_fabric_with_stride(mcm_count, awgr, mcm, DEFAULT_STAGGER_STRIDE)
}

/// Case A: six parallel AWGRs; MCM `j` lands on port
/// `(j + s * stride) mod radix` of switch `s`.
pub fn build_awgr_fabric_with_stride(
    mcm_count: usize,
    awgr: &SwitchSpec,
    mcm: &McmSpec,
    stride: usize,
) -> Result<TopologyPlan, RackError> {
    assert_eq!(
        awgr.kind,
        SwitchKind::CascadedAwgr,
        "case A wants an AWGR spec"
    );
    if mcm_count > awgr.radix {
        return Err(RackError::CapacityExceeded {
            mcm_count,
            radix: awgr.radix,
        });
    }
    let group_fibers = mcm.fibers / FULL_GROUPS;
    let tail_fibers = mcm.fibers % FULL_GROUPS;
    let group_lambda = group_fibers * mcm.wavelengths_per_fiber;
    let carried = group_lambda.min(awgr.wavelengths_per_port);
    let overflow = group_lambda.saturating_sub(awgr.wavelengths_per_port);
    let tail_budget =
        (tail_fibers * mcm.wavelengths_per_fiber + overflow).min(awgr.wavelengths_per_port);
    let switch_count = FULL_GROUPS + 1;

    let mut attachments = Vec::with_capacity(mcm_count * switch_count);
    for j in 0..mcm_count {
        for s in 0..switch_count {
            let port = (j + s * stride) % awgr.radix;
            let wavelengths = if s < FULL_GROUPS {
                carried
            } else {
                tail_window(j as u32, mcm_count, tail_budget).len()
            };
            attachments.push(Attachment {
                mcm: j as u32,
                fiber_group: s as u32,
                switch: s as u32,
                port: port as u32,
                wavelengths: wavelengths as u32,
            });
        }
    }

    let plan = TopologyPlan {
        fabric: FabricKind::AwgrCaseA,
        mcm_count,
        switch_count,
        switch: awgr.clone(),
        mcm: *mcm,
        attachments,
        stagger_stride: stride,
        roles: None,
    };
    plan.validate()?;
    Ok(plan)
}

/// Case B: enough wave-selective switches that every MCM gets
/// `escape / port` attachments; switch `I` scans 256 consecutive MCM
/// indices from `(fibers * I) mod mcm_count`, skipping MCMs already full.
pub fn build_wss_fabric(
    mcm_count: usize,
    wss: &SwitchSpec,
    mcm: &McmSpec,
) -> Result<TopologyPlan, RackError> {
    assert_eq!(
        wss.kind,
        SwitchKind::WaveSelective,
        "case B wants a wave-selective spec"
    );
    if mcm_count < wss.radix {
        return Err(RackError::TooFewMcmsForWss {
            mcm_count,
            radix: wss.radix,
        });
    }
    let per_mcm = mcm.total_wavelengths() / wss.wavelengths_per_port;
    let switch_count = (mcm_count * per_mcm).div_ceil(wss.radix);

    let mut attach_count = vec![0usize; mcm_count];
    let mut attachments = Vec::with_capacity(mcm_count * per_mcm);
    for s in 0..switch_count {
        let start = (mcm.fibers * s) % mcm_count;
        let mut port = 0u32;
        for off in 0..wss.radix.min(mcm_count) {
            let j = (start + off) % mcm_count;
            if attach_count[j] < per_mcm {
                attachments.push(Attachment {
                    mcm: j as u32,
                    fiber_group: attach_count[j] as u32,
                    switch: s as u32,
                    port,
                    wavelengths: wss.wavelengths_per_port as u32,
                });
                attach_count[j] += 1;
                port += 1;
            }
        }
    }

    let plan = TopologyPlan {
        fabric: FabricKind::WssCaseB,
        mcm_count,
        switch_count,
        switch: wss.clone(),
        mcm: *mcm,
        attachments,
        stagger_stride: 0,
        roles: None,
    };
    plan.validate()?;
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_awgr_plan() -> TopologyPlan {
        build_awgr_fabric(350, &SwitchSpec::study_cascaded_awgr(), &McmSpec::default()).unwrap()
    }

    fn default_wss_plan() -> TopologyPlan {
        build_wss_fabric(
            350,
            &SwitchSpec::study_wave_selective(),
            &McmSpec::default(),
        )
        .unwrap()
    }

    #[test]
    fn case_a_uses_six_switches() {
        let plan = default_awgr_plan();
        assert_eq!(plan.switch_count, 6);
        assert_eq!(plan.attachments.len(), 350 * 6);
    }

    #[test]
    fn case_a_routes_1992_wavelengths_per_mcm() {
        // Five full 370-wavelength attachments plus the 142-wavelength tail,
        // leaving 56 of the 2048 escape wavelengths in reserve.
        let plan = default_awgr_plan();
        for mcm in 0..350 {
            assert_eq!(plan.wavelengths_of(mcm), 5 * 370 + 142);
        }
        assert_eq!(2048 - plan.wavelengths_of(0), 56);
    }

    #[test]
    fn case_a_ports_follow_stagger() {
        let plan = default_awgr_plan();
        for s in 0..6u32 {
            assert_eq!(
                plan.port_of(17, s),
                Some(((17 + s as usize * DEFAULT_STAGGER_STRIDE) % 370) as u32)
            );
        }
    }

    #[test]
    fn case_a_rejects_more_mcms_than_ports() {
        let err = build_awgr_fabric(371, &SwitchSpec::study_cascaded_awgr(), &McmSpec::default())
            .unwrap_err();
        assert_eq!(
            err,
            RackError::CapacityExceeded {
                mcm_count: 371,
                radix: 370
            }
        );
    }

    #[test]
    fn case_a_two_mcm_toy_pairs_on_every_switch() {
        let toy = SwitchSpec {
            radix: 2,
            wavelengths_per_port: 2,
            ..SwitchSpec::study_cascaded_awgr()
        };
        let plan = build_awgr_fabric(2, &toy, &McmSpec::default()).unwrap();
        // Each full AWGR contributes exactly one wavelength to the peer.
        for (mcm, lambdas) in plan.transmit_targets().iter().enumerate() {
            let to_peer = lambdas
                .iter()
                .filter(|t| **t == Some(1 - mcm as u32))
                .count();
            assert_eq!(to_peer, 6);
        }
    }

    #[test]
    fn case_b_uses_eleven_switches_of_eight_each() {
        let plan = default_wss_plan();
        assert_eq!(plan.switch_count, 11);
        for mcm in 0..350 {
            assert_eq!(plan.switches_of(mcm).len(), 8, "MCM {mcm}");
            assert_eq!(plan.wavelengths_of(mcm), 2048);
        }
        assert_eq!(plan.unconnected_ports(), 16);
    }

    #[test]
    fn case_b_needs_full_switch() {
        let err = build_wss_fabric(
            100,
            &SwitchSpec::study_wave_selective(),
            &McmSpec::default(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            RackError::TooFewMcmsForWss {
                mcm_count: 100,
                radix: 256
            }
        );
    }

    #[test]
    fn case_b_default_configuration_is_balanced() {
        let plan = default_wss_plan();
        let targets = plan.transmit_targets();
        for (mcm, lambdas) in targets.iter().enumerate() {
            assert_eq!(lambdas.len(), 2048);
            assert!(
                lambdas.iter().all(|t| t.is_some()),
                "MCM {mcm} has dead channels"
            );
        }
    }

    #[test]
    fn tail_window_is_symmetric() {
        let n = 350;
        for src in [0u32, 1, 175, 349] {
            for dst in tail_window(src, n, 142) {
                let back = tail_window(dst, n, 142);
                assert!(back.contains(&src), "{src} -> {dst} not mirrored");
            }
        }
    }

    #[test]
    fn tail_window_antipode_toy() {
        assert_eq!(tail_window(0, 2, 2), vec![1]);
        assert_eq!(tail_window(1, 2, 2), vec![0]);
    }

    #[test]
    fn roles_must_match_mcm_count() {
        let plan = default_awgr_plan();
        let err = plan.with_roles(vec![ChipType::Cpu; 10]).unwrap_err();
        assert_eq!(
            err,
            RackError::RoleCountMismatch {
                roles: 10,
                mcm_count: 350
            }
        );
    }
}
