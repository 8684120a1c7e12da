use std::sync::Arc;

use crate::OccupancyVector;

/// Last word received from one peer.
#[derive(Debug, Clone, PartialEq)]
pub struct KbEntry {
    pub vector: Arc<OccupancyVector>,
    pub received_at_s: f64,
}

/// A node's view of every peer's occupancy: the freshest vector seen per
/// peer, trusted regardless of age. Wrong trust is repaired downstream by
/// intermediate-hop fallback, not by expiry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KnowledgeBase {
    entries: Vec<Option<KbEntry>>,
}

impl KnowledgeBase {
    pub fn new(mcm_count: usize) -> Self {
        Self {
            entries: vec![None; mcm_count],
        }
    }

    pub fn entry(&self, peer: u32) -> Option<&KbEntry> {
        self.entries.get(peer as usize).and_then(|e| e.as_ref())
    }

    /// Fold in a vector that arrived piggybacked on traffic from `peer`.
    /// Stored only if strictly newer than what is already held; stale
    /// arrivals are ignored. Returns whether the vector was stored.
    pub fn piggyback_update(
        &mut self,
        peer: u32,
        vector: Arc<OccupancyVector>,
        now_s: f64,
    ) -> bool {
        let slot = &mut self.entries[peer as usize];
        match slot {
            Some(existing) if existing.vector.version >= vector.version => false,
            _ => {
                *slot = Some(KbEntry {
                    vector,
                    received_at_s: now_s,
                });
                true
            }
        }
    }

    pub fn known_peers(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::OccupancyMode;

    fn vector(owner: u32, version: u64) -> Arc<OccupancyVector> {
        Arc::new(OccupancyVector::new(
            owner,
            OccupancyMode::OneHot,
            version,
            vec![0; 4],
        ))
    }

    #[test]
    fn first_vector_is_stored() {
        let mut kb = KnowledgeBase::new(4);
        assert!(kb.piggyback_update(2, vector(2, 1), 0.0));
        assert_eq!(kb.entry(2).unwrap().vector.version, 1);
    }

    #[test]
    fn stale_version_is_ignored() {
        let mut kb = KnowledgeBase::new(4);
        kb.piggyback_update(2, vector(2, 5), 1.0);
        assert!(!kb.piggyback_update(2, vector(2, 4), 2.0));
        let entry = kb.entry(2).unwrap();
        assert_eq!(entry.vector.version, 5);
        assert_eq!(entry.received_at_s, 1.0);
    }

    #[test]
    fn newer_version_replaces_with_later_timestamp() {
        let mut kb = KnowledgeBase::new(4);
        kb.piggyback_update(2, vector(2, 5), 1.0);
        assert!(kb.piggyback_update(2, vector(2, 6), 2.0));
        let entry = kb.entry(2).unwrap();
        assert_eq!(entry.vector.version, 6);
        assert_eq!(entry.received_at_s, 2.0);
    }
}
