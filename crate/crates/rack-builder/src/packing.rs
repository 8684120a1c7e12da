use serde::{Deserialize, Serialize};

use crate::{ChipCaps, ChipSpec, ChipType, McmSpec, RackError};

/// Packing outcome for one chip type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingRow {
    pub chip_type: ChipType,
    pub chips_per_mcm: u64,
    pub mcm_count: u64,
}

/// How the rack's chips fold into MCMs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingTable {
    pub rows: Vec<PackingRow>,
    pub total_mcms: u64,
}

impl PackingTable {
    pub fn row(&self, chip_type: ChipType) -> Option<&PackingRow> {
        self.rows.iter().find(|r| r.chip_type == chip_type)
    }

    /// Chip type of every MCM, in row order. Index in this vector is the
    /// MCM id used by the fabric plans.
    pub fn inventory(&self) -> Vec<ChipType> {
        let mut roles = Vec::with_capacity(self.total_mcms as usize);
        for row in &self.rows {
            roles.extend(std::iter::repeat_n(row.chip_type, row.mcm_count as usize));
        }
        roles
    }
}

/// Fold chips into MCMs so that every chip keeps its full escape bandwidth:
/// `chips_per_mcm = min(floor(mcm_escape / chip_escape), cap)` and enough
/// MCMs to hold the rack census.
pub fn pack_mcms(
    chips: &[ChipSpec],
    mcm: &McmSpec,
    caps: &ChipCaps,
) -> Result<PackingTable, RackError> {
    let escape = mcm.usable_escape_gbytes_per_s();
    let mut rows = Vec::with_capacity(chips.len());
    for chip in chips {
        assert!(
            chip.escape_gbytes_per_s > 0.0,
            "chip escape must be positive"
        );
        assert!(chip.count_per_rack > 0, "chip count must be positive");
        // The epsilon keeps exact ratios (e.g. 6400 / 25.6) from landing
        // just under an integer.
        let by_bandwidth = (escape / chip.escape_gbytes_per_s + 1e-9).floor() as u64;
        if by_bandwidth < 1 {
            return Err(RackError::InfeasiblePacking {
                chip_type: chip.chip_type,
                needed_gbyte_s: chip.escape_gbytes_per_s.ceil() as u64,
                available_gbyte_s: escape.floor() as u64,
            });
        }
        let chips_per_mcm = match caps.get(&chip.chip_type) {
            Some(&cap) => by_bandwidth.min(cap.max(1)),
            None => by_bandwidth,
        };
        let mcm_count = chip.count_per_rack.div_ceil(chips_per_mcm);
        rows.push(PackingRow {
            chip_type: chip.chip_type,
            chips_per_mcm,
            mcm_count,
        });
    }
    let total_mcms = rows.iter().map(|r| r.mcm_count).sum();
    Ok(PackingTable { rows, total_mcms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{baseline_rack, default_chip_caps};

    fn packed() -> PackingTable {
        pack_mcms(&baseline_rack(), &McmSpec::default(), &default_chip_caps()).unwrap()
    }

    #[test]
    fn baseline_rack_packs_into_350_mcms() {
        let table = packed();
        let expect = [
            (ChipType::Cpu, 14, 10),
            (ChipType::Gpu, 3, 171),
            (ChipType::Nic, 203, 3),
            (ChipType::Hbm, 4, 128),
            (ChipType::Ddr4, 27, 38),
        ];
        for (chip_type, per, count) in expect {
            let row = table.row(chip_type).unwrap();
            assert_eq!(row.chips_per_mcm, per, "{chip_type} chips per MCM");
            assert_eq!(row.mcm_count, count, "{chip_type} MCM count");
        }
        assert_eq!(table.total_mcms, 350);
    }

    #[test]
    fn packing_respects_escape_budget() {
        let table = packed();
        let mcm = McmSpec::default();
        for (row, chip) in table.rows.iter().zip(baseline_rack()) {
            assert!(
                row.chips_per_mcm as f64 * chip.escape_gbytes_per_s
                    <= mcm.escape_gbytes_per_s() + 1e-6,
                "{:?} over budget",
                row.chip_type
            );
            assert!(row.chips_per_mcm * row.mcm_count >= chip.count_per_rack);
        }
    }

    #[test]
    fn nic_row_uses_pcie_side_rate() {
        // 6400 / 31.5 = 203.17, and 609 seats cover the 512-NIC census in 3 MCMs.
        let table = packed();
        let row = table.row(ChipType::Nic).unwrap();
        assert_eq!(row.chips_per_mcm, 203);
        assert_eq!(row.mcm_count, 3);
    }

    #[test]
    fn oversized_chip_is_rejected_by_type() {
        let chips = vec![ChipSpec {
            chip_type: ChipType::Gpu,
            escape_gbytes_per_s: 7000.0,
            count_per_rack: 8,
        }];
        let err = pack_mcms(&chips, &McmSpec::default(), &ChipCaps::new()).unwrap_err();
        assert_eq!(
            err,
            RackError::InfeasiblePacking {
                chip_type: ChipType::Gpu,
                needed_gbyte_s: 7000,
                available_gbyte_s: 6400,
            }
        );
    }

    #[test]
    fn inventory_orders_mcms_by_row() {
        let table = packed();
        let inv = table.inventory();
        assert_eq!(inv.len(), 350);
        assert_eq!(inv[0], ChipType::Cpu);
        assert_eq!(inv[9], ChipType::Cpu);
        assert_eq!(inv[10], ChipType::Gpu);
        assert_eq!(inv[180], ChipType::Gpu);
        assert_eq!(inv[181], ChipType::Nic);
        assert_eq!(inv[184], ChipType::Hbm);
        assert_eq!(inv[312], ChipType::Ddr4);
        assert_eq!(inv[349], ChipType::Ddr4);
    }

    #[test]
    fn uncapped_ddr4_would_overpack() {
        // Without the physical cap, bandwidth alone would allow 250 modules.
        let chips = vec![ChipSpec {
            chip_type: ChipType::Ddr4,
            escape_gbytes_per_s: 25.6,
            count_per_rack: 1024,
        }];
        let table = pack_mcms(&chips, &McmSpec::default(), &ChipCaps::new()).unwrap();
        assert_eq!(table.rows[0].chips_per_mcm, 250);
    }
}
