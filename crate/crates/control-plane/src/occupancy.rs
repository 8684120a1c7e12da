use serde::{Deserialize, Serialize};

/// Wire encoding of an occupancy vector: one busy bit per wavelength, or a
/// byte-wide flow-slot count per wavelength when flows are multiplexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OccupancyMode {
    OneHot,
    BytePerWavelength,
}

/// A source's advertisement of its transmit-wavelength usage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccupancyVector {
    pub owner: u32,
    pub mode: OccupancyMode,
    /// Monotonically increasing per owner; receivers drop anything older
    /// than what they already hold.
    pub version: u64,
    slots: Vec<u8>,
}

impl OccupancyVector {
    pub fn new(owner: u32, mode: OccupancyMode, version: u64, slots: Vec<u8>) -> Self {
        let slots = match mode {
            OccupancyMode::OneHot => slots.into_iter().map(|s| s.min(1)).collect(),
            OccupancyMode::BytePerWavelength => slots,
        };
        Self {
            owner,
            mode,
            version,
            slots,
        }
    }

    pub fn wavelengths(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, lambda: u32) -> u8 {
        self.slots[lambda as usize]
    }

    pub fn is_free(&self, lambda: u32) -> bool {
        self.slots[lambda as usize] == 0
    }

    pub fn busy_count(&self) -> usize {
        self.slots.iter().filter(|&&s| s > 0).count()
    }

    /// Size of the vector on the wire.
    pub fn wire_size_bits(&self) -> usize {
        match self.mode {
            OccupancyMode::OneHot => self.slots.len(),
            OccupancyMode::BytePerWavelength => self.slots.len() * 8,
        }
    }

    /// Wire bytes: LSB-first packed bits in one-hot mode, raw slot counts
    /// in byte mode.
    pub fn encode_bytes(&self) -> Vec<u8> {
        match self.mode {
            OccupancyMode::OneHot => {
                let mut bytes = vec![0u8; self.slots.len().div_ceil(8)];
                for (i, &slot) in self.slots.iter().enumerate() {
                    if slot > 0 {
                        bytes[i / 8] |= 1 << (i % 8);
                    }
                }
                bytes
            }
            OccupancyMode::BytePerWavelength => self.slots.clone(),
        }
    }
}
