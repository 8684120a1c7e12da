//! Statistical and structural properties of the routing logic.

use control_plane::{Controller, FabricView, RouteOptions};
use proptest::prelude::*;
use rand::{rngs::StdRng, SeedableRng};

/// Upper-tail chi-squared critical value via the Wilson-Hilferty cube
/// approximation; `z` is the standard-normal quantile of the tail.
fn chi2_critical(df: f64, z: f64) -> f64 {
    let a = 2.0 / (9.0 * df);
    df * (1.0 - a + z * a.sqrt()).powi(3)
}

#[test]
fn valiant_choice_is_uniform_over_candidates() {
    // Eight nodes, one wavelength per pair: routing 0 -> 1 at two paths
    // leaves six equally valid intermediates {2..7}.
    let fabric = FabricView::single_awgr(8, 25.0);
    let trials = 10_000u32;
    let mut counts = [0u32; 8];
    for seed in 0..trials {
        let mut ctrl = Controller::new(0, &fabric);
        let mut rng = StdRng::seed_from_u64(seed as u64);
        let a = ctrl
            .select_route(
                seed as u64,
                1,
                50.0,
                &fabric,
                &RouteOptions::default(),
                &mut rng,
            )
            .unwrap();
        counts[a.indirect[0].via as usize] += 1;
    }
    assert_eq!(counts[0] + counts[1], 0);

    let k = 6.0;
    let expected = trials as f64 / k;
    // Binomial three-sigma band per candidate.
    let sigma = (trials as f64 * (1.0 / k) * (1.0 - 1.0 / k)).sqrt();
    for (via, &count) in counts.iter().enumerate().skip(2) {
        let observed = count as f64;
        assert!(
            (observed - expected).abs() <= 3.0 * sigma,
            "intermediate {via} chosen {observed} times, expected {expected} +/- {}",
            3.0 * sigma
        );
    }
    // Chi-squared goodness of fit at p > 0.01 (df = 5, z_0.99 = 2.326348).
    let chi2: f64 = (2..8)
        .map(|via| {
            let o = counts[via] as f64;
            (o - expected) * (o - expected) / expected
        })
        .sum();
    let crit = chi2_critical(k - 1.0, 2.326348);
    assert!(chi2 < crit, "chi2 {chi2} over critical {crit}");
}

proptest! {
    /// Whenever a grant holds an indirect path, every direct wavelength for
    /// the pair was already assigned.
    #[test]
    fn direct_first_ordering(
        n in 3usize..10,
        demand_lambdas in 1usize..12,
        seed in any::<u64>(),
        prebusy in prop::collection::vec(any::<bool>(), 12),
    ) {
        let fabric = FabricView::single_awgr(n, 25.0);
        let mut ctrl = Controller::new(0, &fabric);
        // Pre-occupy an arbitrary subset of local wavelengths.
        for (lambda, busy) in prebusy.iter().enumerate() {
            if *busy
                && lambda < fabric.lambda_count(0)
                && fabric.target(0, lambda as u32).is_some()
            {
                let _ = ctrl.try_occupy(lambda as u32);
            }
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let dst = 1u32;
        let a = ctrl
            .select_route(0, dst, demand_lambdas as f64 * 25.0, &fabric, &RouteOptions::default(), &mut rng)
            .unwrap();
        if !a.indirect.is_empty() {
            for &lambda in fabric.toward(0, dst) {
                prop_assert!(!ctrl.is_free(lambda), "direct lambda {lambda} left free");
            }
        }
        // Conservation: grant never exceeds what 25 Gbps per path allows.
        prop_assert_eq!(a.granted_gbps, 25.0 * a.path_count() as f64);
    }

    /// Assignments are internally consistent: no wavelength serves two
    /// paths of the same flow, and every source-side wavelength is now busy.
    #[test]
    fn assignment_wavelengths_are_disjoint_and_held(
        n in 3usize..10,
        demand_lambdas in 1usize..12,
        seed in any::<u64>(),
    ) {
        let fabric = FabricView::single_awgr(n, 25.0);
        let mut ctrl = Controller::new(0, &fabric);
        let mut rng = StdRng::seed_from_u64(seed);
        let a = ctrl
            .select_route(0, 1, demand_lambdas as f64 * 25.0, &fabric, &RouteOptions::default(), &mut rng)
            .unwrap();
        let mut used: Vec<u32> = a.direct.clone();
        used.extend(a.indirect.iter().map(|p| p.src_lambda));
        let mut dedup = used.clone();
        dedup.sort_unstable();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), used.len(), "wavelength reused inside one flow");
        for &lambda in &used {
            prop_assert!(!ctrl.is_free(lambda));
        }
    }

    /// Releasing an assignment restores exactly the pre-assignment state.
    #[test]
    fn release_restores_prior_state(
        n in 3usize..10,
        demand_lambdas in 1usize..12,
        seed in any::<u64>(),
    ) {
        let fabric = FabricView::single_awgr(n, 25.0);
        let mut ctrl = Controller::new(0, &fabric);
        let mut rng = StdRng::seed_from_u64(seed);
        let before = ctrl.busy_lambdas();
        let a = ctrl
            .select_route(0, 1, demand_lambdas as f64 * 25.0, &fabric, &RouteOptions::default(), &mut rng)
            .unwrap();
        let mut mine: Vec<u32> = a.direct.clone();
        mine.extend(a.indirect.iter().map(|p| p.src_lambda));
        ctrl.release(&mine).unwrap();
        prop_assert_eq!(ctrl.busy_lambdas(), before);
    }
}

#[test]
fn large_demand_splits_five_direct_five_indirect() {
    // Ten nodes with five wavelengths per ordered pair; 250 Gbps needs ten
    // paths: the five direct wavelengths first, then five relays whose
    // legs were both free per the decider's knowledge.
    let n = 10usize;
    let targets: Vec<Vec<Option<u32>>> = (0..n)
        .map(|src| {
            (0..n)
                .flat_map(|dst| std::iter::repeat_n((dst != src).then_some(dst as u32), 5))
                .collect()
        })
        .collect();
    let fabric = FabricView::new(targets, 25.0);
    for seed in 0..50u64 {
        let mut ctrl = Controller::new(0, &fabric);
        let snapshot = ctrl.clone();
        let mut rng = StdRng::seed_from_u64(seed);
        let a = ctrl
            .select_route(seed, 1, 250.0, &fabric, &RouteOptions::default(), &mut rng)
            .unwrap();
        assert_eq!(a.direct.len(), 5);
        assert_eq!(a.indirect.len(), 5);
        assert_eq!(a.granted_gbps, 250.0);
        assert!(!a.saturated);
        // Every chosen relay had a free source leg at decision time and an
        // onward leg the (empty, hence all-idle) knowledge base showed free.
        for path in &a.indirect {
            assert!(fabric.toward(0, path.via).contains(&path.src_lambda));
            assert!(snapshot.is_free(path.src_lambda));
            assert!(fabric.toward(path.via, 1).contains(&path.mid_lambda));
        }
    }
}

#[test]
fn intermediate_mask_is_honored() {
    let fabric = FabricView::single_awgr(8, 25.0);
    let mut allowed = vec![false; 8];
    allowed[5] = true;
    for seed in 0..20 {
        let mut ctrl = Controller::new(0, &fabric);
        let mut rng = StdRng::seed_from_u64(seed);
        let a = ctrl
            .select_route(
                0,
                1,
                75.0,
                &fabric,
                &RouteOptions {
                    allowed_intermediates: Some(&allowed),
                },
                &mut rng,
            )
            .unwrap();
        for path in &a.indirect {
            assert_eq!(path.via, 5);
        }
    }
}
