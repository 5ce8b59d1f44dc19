//! Property tests for the invariants of the special functions, the
//! simulator and the analytic laws.

use cyclic_motion::analytic::{conditional_density_u, density_u, mixture_density};
use cyclic_motion::sim::{
    evolve, sample_path, sample_path_conditional, simulate_ensemble, Conditioning, SimRng,
};
use cyclic_motion::special::{
    bessel_i, bessel_i_scaled, kernel_derivative_scaled, BesselOrder, KernelPoint,
};
use cyclic_motion::ModelParams;
use proptest::prelude::*;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bessel_recurrence(x in 1e-3f64..30.0, r in 1u32..12) {
        let i = |n: u32| bessel_i(BesselOrder::integer(n), x).unwrap();
        let lhs = i(r + 1);
        let rhs = i(r - 1) - 2.0 * r as f64 / x * i(r);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * i(r - 1), "x={} r={}: {} vs {}", x, r, lhs, rhs);
    }

    #[test]
    fn half_integer_recurrence(x in 1e-2f64..30.0, k in 0i32..6) {
        let i = |twice: i32| bessel_i(BesselOrder::from_twice(twice).unwrap(), x).unwrap();
        let nu = k as f64 + 0.5;
        let lhs = i(2 * k + 3);
        let rhs = i(2 * k - 1) - 2.0 * nu / x * i(2 * k + 1);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * i(2 * k - 1).abs().max(i(2 * k + 1)));
    }

    #[test]
    fn scaled_bessel_is_consistent(x in 0.0f64..600.0, n in 0u32..6) {
        let order = BesselOrder::integer(n);
        let plain = bessel_i(order, x).unwrap();
        let scaled = bessel_i_scaled(order, x).unwrap();
        prop_assert!((plain * (-x).exp() - scaled).abs() <= 1e-13 * scaled.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn kernel_identity(c in 0.2f64..3.0, lambda in 0.1f64..20.0, t in 0.05f64..3.0, frac in 0.0f64..0.999) {
        let params = ModelParams::new(c, lambda, 2).unwrap();
        let p = KernelPoint::new(params, t, frac * params.reach(t)).unwrap();
        let gtt = kernel_derivative_scaled(&p, 2, 0).unwrap();
        let guu = kernel_derivative_scaled(&p, 0, 2).unwrap();
        let g = kernel_derivative_scaled(&p, 0, 0).unwrap();
        let scale = gtt.abs().max(c * c * guu.abs()).max(lambda * lambda * g);
        prop_assert!((gtt - c * c * guu - lambda * lambda * g).abs() <= 1e-9 * scale);
    }

    #[test]
    fn outcomes_respect_the_support(
        dim in 1usize..=6, lambda in 0.1f64..5.0, c in 0.2f64..3.0, t in 0.1f64..3.0, seed in any::<u64>(),
    ) {
        let params = ModelParams::new(c, lambda, dim).unwrap();
        let set = simulate_ensemble(&params, t, 200, seed, Conditioning::Unconditional).unwrap();
        let reach = params.reach(t);
        for o in &set.outcomes {
            let l1: f64 = o.position.iter().map(|x| x.abs()).sum();
            prop_assert!((l1 - o.u).abs() <= 1e-12 * reach.max(1.0));
            prop_assert!(o.u <= reach + 1e-12);
            prop_assert_eq!(o.n_events < dim, (o.u - reach).abs() <= 1e-12 * reach.max(1.0));
        }
    }

    #[test]
    fn conditional_paths_have_the_requested_count(dim in 1usize..=5, n in 0usize..12, seed in any::<u64>()) {
        let params = ModelParams::new(1.0, 1.0, dim).unwrap();
        let mut rng = SimRng::seed_from_u64(seed);
        let path = sample_path_conditional(&params, 1.5, n, &mut rng).unwrap();
        prop_assert_eq!(path.switch_times.len(), n);
        prop_assert!(path.switch_times.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(evolve(&path).n_events, n);
        let free = sample_path(&params, 1.5, &mut rng).unwrap();
        prop_assert!(free.switch_times.iter().all(|&s| s > 0.0 && s < 1.5));
    }

    #[test]
    fn ensembles_are_deterministic(seed in any::<u64>(), n in 0usize..6) {
        let params = ModelParams::new(1.0, 2.0, 3).unwrap();
        let a = simulate_ensemble(&params, 1.0, 64, seed, Conditioning::Events(n)).unwrap();
        let b = simulate_ensemble(&params, 1.0, 64, seed, Conditioning::Events(n)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn density_is_non_negative(dim in 1usize..=3, lambda in 0.05f64..30.0, c in 0.1f64..5.0, t in 0.01f64..5.0, frac in 0.0f64..=1.0) {
        let params = ModelParams::new(c, lambda, dim).unwrap();
        prop_assert!(density_u(&params, t, frac * params.reach(t)).unwrap() >= 0.0);
    }

    #[test]
    fn mixture_reproduces_density(dim in 2usize..=3, lt in 0.05f64..2.0, frac in 0.0f64..1.0) {
        let params = ModelParams::new(1.0, lt, dim).unwrap();
        let u = frac * params.reach(1.0);
        let mix = mixture_density(&params, 1.0, u, 60).unwrap();
        let direct = density_u(&params, 1.0, u).unwrap();
        prop_assert!((mix - direct).abs() < 1e-8);
    }

    #[test]
    fn neighbouring_dimensions_share_laws(k in 1usize..8, frac in 0.0f64..1.0, c in 0.3f64..3.0) {
        let p = |dim| ModelParams::new(c, 1.0, dim).unwrap();
        let u = frac * c;
        let even = 2 * k + 2;
        let a = conditional_density_u(&p(1), even, 1.0, u).unwrap();
        let b = conditional_density_u(&p(2), even, 1.0, u).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        let odd = 2 * k + 1;
        let a = conditional_density_u(&p(2), odd, 1.0, u).unwrap();
        let b = conditional_density_u(&p(3), odd, 1.0, u).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }
}
