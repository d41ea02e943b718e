use distill_core::oracles::{
    dichotomy_check, equal_y_check, grid_optimum, random_dichotomy_instance, random_equal_y_instance,
    rayleigh_bound_check, Dichotomy, QuadraticInstance,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn free_dim(inst: &QuadraticInstance) -> usize {
    inst.n() + inst.m() - inst.constraints.len()
}

#[test]
fn eigen_reduction_matches_grid_search() {
    let mut r = rng(2024);
    let mut checked = 0;
    while checked < 24 {
        let inst = random_dichotomy_instance(3, 2, &mut r);
        if inst.n() + inst.m() > 4 || free_dim(&inst) > 3 {
            continue;
        }
        let exact = inst.reduce().unwrap().value;
        let grid = grid_optimum(&inst, 1e-2).unwrap();
        assert!((exact - grid).abs() < 1e-6, "n={} m={}: {exact} vs {grid}", inst.n(), inst.m());
        checked += 1;
    }
}

#[test]
fn equal_y_instances_match_grid_search() {
    let mut r = rng(77);
    let mut checked = 0;
    while checked < 12 {
        let inst = random_equal_y_instance(2, 2, &mut r);
        if inst.n() + inst.m() > 4 || free_dim(&inst) > 3 {
            continue;
        }
        let exact = inst.reduce().unwrap().value;
        let grid = grid_optimum(&inst, 1e-2).unwrap();
        assert!((exact - grid).abs() < 1e-6, "{exact} vs {grid}");
        checked += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn optimum_scales_with_radius(seed in any::<u64>(), s in 0.1f64..10.0) {
        let mut inst = random_dichotomy_instance(5, 3, &mut rng(seed));
        let base = inst.reduce().unwrap().value;
        inst.r *= s * s;
        let scaled = inst.reduce().unwrap().value;
        prop_assert!((scaled - s * s * base).abs() < 1e-10 * (1.0 + scaled.abs()));
    }

    #[test]
    fn maximizers_are_feasible_and_optimal(seed in any::<u64>()) {
        let inst = random_dichotomy_instance(5, 3, &mut rng(seed));
        let red = inst.reduce().unwrap();
        for z in &red.maximizers {
            prop_assert!((inst.objective(z) - red.value).abs() < 1e-9 * (1.0 + red.value.abs()));
            for c in &inst.constraints {
                let dot: f64 = c.iter().zip(z).map(|(a, b)| a * b).sum();
                prop_assert!(dot.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn dichotomy_holds(seed in any::<u64>()) {
        let inst = random_dichotomy_instance(6, 4, &mut rng(seed));
        let rep = dichotomy_check(&inst).unwrap();
        prop_assert!(rep.holds(), "{rep:?}");
        prop_assert!(rep.verdict != Dichotomy::Neither);
        prop_assert!(rep.value >= rep.eta_r - 1e-9 * (1.0 + rep.eta_r.abs()));
    }

    #[test]
    fn equal_y_holds(seed in any::<u64>()) {
        let inst = random_equal_y_instance(5, 4, &mut rng(seed));
        match equal_y_check(&inst) {
            Ok(rep) => prop_assert!(rep.holds, "{rep:?}"),
            Err(e) => prop_assert!(matches!(e, distill_core::Error::Hypothesis(_)), "{e}"),
        }
    }

    #[test]
    fn rayleigh_quotient_bound(seed in any::<u64>(), n in 1usize..12) {
        let mut r = rng(seed);
        let a: Vec<f64> = (0..n).map(|_| r.random_range(-5.0..5.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| r.random_range(0.01..5.0)).collect();
        let x: Vec<f64> = (0..n).map(|_| r.random_range(-1.0..1.0)).collect();
        prop_assert!(rayleigh_bound_check(&a, &b, &x).unwrap().holds);
    }
}
