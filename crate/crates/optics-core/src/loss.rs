use serde::{Deserialize, Serialize};

use crate::SwitchSpec;

/// Fiber attenuation applied when a segment does not specify its own,
/// in dB per meter.
pub const DEFAULT_FIBER_DB_PER_M: f64 = 0.0002;

/// One element of an optical path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PathSegment {
    /// Traversal of a switch; contributes its insertion loss.
    Switch(SwitchSpec),
    /// A fiber run of the given length at the default attenuation.
    Fiber { meters: f64 },
    /// A fiber run with an explicit attenuation coefficient.
    FiberWithLoss { meters: f64, db_per_m: f64 },
}

/// Total insertion loss of a path, in dB. Reported for book-keeping only;
/// nothing downstream gates on it.
pub fn path_loss(segments: &[PathSegment]) -> f64 {
    segments
        .iter()
        .map(|seg| match seg {
            PathSegment::Switch(spec) => spec.insertion_loss_db,
            PathSegment::Fiber { meters } => {
                assert!(*meters >= 0.0, "fiber length must be nonnegative");
                meters * DEFAULT_FIBER_DB_PER_M
            }
            PathSegment::FiberWithLoss { meters, db_per_m } => {
                assert!(*meters >= 0.0, "fiber length must be nonnegative");
                meters * db_per_m
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_path_is_lossless() {
        assert_eq!(path_loss(&[]), 0.0);
    }

    #[test]
    fn one_cascaded_awgr_hop() {
        let loss = path_loss(&[PathSegment::Switch(SwitchSpec::study_cascaded_awgr())]);
        assert_eq!(loss, 15.0);
    }

    #[test]
    fn switch_plus_fiber() {
        let loss = path_loss(&[
            PathSegment::Switch(SwitchSpec::study_cascaded_awgr()),
            PathSegment::Fiber { meters: 4.0 },
        ]);
        assert!((loss - 15.0008).abs() < 1e-12);
    }

    #[test]
    fn explicit_coefficient_overrides_default() {
        let loss = path_loss(&[PathSegment::FiberWithLoss {
            meters: 10.0,
            db_per_m: 0.001,
        }]);
        assert!((loss - 0.01).abs() < 1e-15);
    }
}
