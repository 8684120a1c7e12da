use models::{fec_evaluate, latency_budget, power_total, FabricTech, LatencyParams, PowerParams};
use proptest::prelude::*;

proptest! {
    #[test]
    fn photonic_budget_linear_in_distance(d in 0.0f64..100.0) {
        let p = LatencyParams::default();
        let b = latency_budget(d, 0, FabricTech::Photonic, &p);
        prop_assert!((b.total_ns - (15.0 + 5.0 * d)).abs() < 1e-9);
    }

    #[test]
    fn fec_is_monotone_and_quadratic(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let m_lo = fec_evaluate(lo);
        let m_hi = fec_evaluate(hi);
        prop_assert!(m_lo.flit_failure <= m_hi.flit_failure);
        prop_assert_eq!(m_hi.flit_failure, hi * hi);
    }

    #[test]
    fn power_components_sum_exactly(
        mcms in 1u64..1000,
        wavelengths in 1u64..4096,
        switches in 0u64..20,
    ) {
        let model = power_total(mcms, wavelengths, switches, &PowerParams::default());
        prop_assert!(model.is_consistent());
    }
}
