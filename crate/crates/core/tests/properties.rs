//! Property tests for the spectral kernel and the propagator: the
//! invariants that must hold for arbitrary seeds, sizes, and parameters.

use bbm_core::field::WaveState;
use bbm_core::grid::Grid;
use bbm_core::norms::{lp_norm, pair_norm, pair_norm_l2, sobolev_norm_spectral, Lp};
use bbm_core::propagator::{apply_semigroup, group_compose_check};
use bbm_core::rng::{gaussian_spectrum_field, random_state};
use bbm_core::spectral::{apply_multiplier, forward_transform, inverse_transform};
use num_complex::Complex64;
use proptest::prelude::*;

fn grid_sizes() -> impl Strategy<Value = usize> {
    prop_oneof![
        Just(64usize),
        Just(96),
        Just(256),
        Just(1000),
        Just(1024),
        Just(4096),
        Just(16384),
        Just(65536),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_round_trip(n in grid_sizes(), seed in any::<u64>()) {
        let g = Grid::new(n, 256.0).unwrap();
        let f = gaussian_spectrum_field(&g, seed, 2.0, g.dealias_max_wavenumber());
        let back = inverse_transform(&forward_transform(&f)).unwrap();
        let scale = lp_norm(&f, Lp::Inf).max(1e-300);
        let mut worst = 0.0f64;
        for (a, b) in back.samples().iter().zip(f.samples()) {
            worst = worst.max((a - b).abs());
        }
        prop_assert!(worst / scale <= 1e-12, "n={}, err={:e}", n, worst / scale);
    }

    #[test]
    fn parseval_identity(seed in any::<u64>()) {
        let g = Grid::new(512, 100.0).unwrap();
        let f = gaussian_spectrum_field(&g, seed, 2.0, g.dealias_max_wavenumber());
        let l2 = lp_norm(&f, Lp::Two);
        let s0 = sobolev_norm_spectral(&forward_transform(&f), 0.0);
        prop_assert!((l2 - s0).abs() <= 1e-12 * l2.max(1e-300));
    }

    #[test]
    fn multiplier_composition(seed in any::<u64>(), a in 0.1f64..4.0, b in 0.1f64..4.0) {
        let g = Grid::new(256, 64.0).unwrap();
        let f = forward_transform(&gaussian_spectrum_field(&g, seed, 2.0, 80));
        let m1 = move |xi: f64| Complex64::new(1.0 / (a + xi * xi), 0.0);
        let m2 = move |xi: f64| Complex64::new(0.0, -xi / (b + xi.abs()));
        let lhs = apply_multiplier(&apply_multiplier(&f, m1), m2);
        let rhs = apply_multiplier(&f, move |xi| m1(xi) * m2(xi));
        let peak = rhs.max_abs().max(1e-300);
        prop_assert!(lhs.sub(&rhs).max_abs() / peak <= 1e-12);
    }

    #[test]
    fn sobolev_monotone_in_index(seed in any::<u64>(), s1 in -3.0f64..3.0, ds in 0.0f64..3.0) {
        let g = Grid::new(256, 64.0).unwrap();
        let f = forward_transform(&gaussian_spectrum_field(&g, seed, 2.0, 80));
        let lo = sobolev_norm_spectral(&f, s1);
        let hi = sobolev_norm_spectral(&f, s1 + ds);
        prop_assert!(lo <= hi * (1.0 + 1e-13));
    }

    #[test]
    fn semigroup_preserves_the_quadratic_norm(
        seed in any::<u64>(),
        t in -50.0f64..50.0,
        log_eps in -4.0f64..0.0,
        s in -1.0f64..2.0,
    ) {
        let g = Grid::new(256, 64.0).unwrap();
        let u = random_state(&g, seed, 2.0);
        let eps = 10f64.powf(log_eps);
        let out = apply_semigroup(&u, t, eps);
        let before = pair_norm_l2(&u, s);
        let after = pair_norm_l2(&out, s);
        prop_assert!((after - before).abs() <= 1e-12 * before.max(1e-300));
        // the sum norm stays within its √2 equivalence corridor
        let ratio = pair_norm(&out, s) / pair_norm(&u, s).max(1e-300);
        prop_assert!(ratio >= 1.0 / 2f64.sqrt() - 1e-12 && ratio <= 2f64.sqrt() + 1e-12);
    }

    #[test]
    fn semigroup_compose(seed in any::<u64>(), t1 in -10.0f64..10.0, t2 in -10.0f64..10.0) {
        let g = Grid::new(256, 64.0).unwrap();
        let u = random_state(&g, seed, 2.0);
        prop_assert!(group_compose_check(&u, t1, t2) <= 1e-11);
    }

    #[test]
    fn states_scale_homogeneously(seed in any::<u64>(), c in -4.0f64..4.0) {
        // norms are absolutely homogeneous; the nonlinearity is quadratic
        let g = Grid::new(256, 64.0).unwrap();
        let u = random_state(&g, seed, 2.0);
        let n0 = pair_norm(&u, 0.0);
        prop_assert!((pair_norm(&u.scale(c), 0.0) - c.abs() * n0).abs() <= 1e-12 * n0.max(1e-300));
        let nu = bbm_core::nonlinear::apply_n(&u, 1.0, bbm_core::spectral::Dealias::TwoThirds);
        let nuc = bbm_core::nonlinear::apply_n(&u.scale(c), 1.0, bbm_core::spectral::Dealias::TwoThirds);
        let diff = pair_norm(&nuc.sub(&nu.scale(c * c)), 0.0);
        prop_assert!(diff <= 1e-10 * pair_norm(&nu, 0.0).max(1e-300) * (1.0 + c * c));
    }
}

#[test]
fn existence_window_never_fails_inside_itself() {
    // the contraction-window estimate certifies its own interior: stepping
    // half the window (the documented safety factor) never reports a
    // non-contraction, across 50 seeded data sets
    let g = Grid::new(512, 128.0).unwrap();
    let c_hat = bbm_core::nonlinear::bilinear_constant_scan(&g, 0.0, 1.0, 60, 99).max_ratio;
    let cfg = bbm_core::picard::SolverConfig {
        c_hat,
        ..Default::default()
    };
    for seed in 0..50u64 {
        let u = random_state(&g, 10_000 + seed, 2.5);
        let u = u.scale((0.02 + 0.01 * (seed as f64 % 7.0)) / pair_norm(&u, 0.0));
        let window = bbm_core::picard::existence_time_estimate(&u, 0.0, 1.0, c_hat);
        let dt = 0.5 * window;
        let out = bbm_core::picard::step_fixed_point(&u, dt, &cfg);
        assert!(
            out.is_ok(),
            "seed {seed}: window {window}, step {dt} reported {:?}",
            out.err()
        );
    }
}

#[test]
fn solver_pipeline_works_on_non_power_of_two_grids() {
    // the Bluestein transform path feeds the same solver machinery
    let g = Grid::new(96, 48.0).unwrap();
    let u0 = WaveState::new(
        bbm_core::field::RealField::from_fn(&g, |x| 0.05 * (-(x - 24.0) * (x - 24.0) / 8.0).exp()),
        bbm_core::field::RealField::from_fn(&g, |x| -0.04 * (-(x - 24.0) * (x - 24.0) / 8.0).exp()),
    );
    let cfg = bbm_core::picard::SolverConfig {
        dt: 0.25,
        t_end: 1.0,
        ..Default::default()
    };
    let traj = bbm_core::picard::integrate(&u0, &cfg);
    assert!(traj.abort.is_none());
    let h0 = bbm_core::diagnostics::hamiltonian(&traj.states[0]);
    let h1 = bbm_core::diagnostics::hamiltonian(traj.states.last().unwrap());
    assert!((h1 - h0).abs() <= 1e-10 * h0.abs());
}

#[test]
fn wave_state_requires_matching_grids() {
    let g1 = Grid::new(64, 32.0).unwrap();
    let g2 = Grid::new(128, 32.0).unwrap();
    let a = bbm_core::field::RealField::zero(&g1);
    let b = bbm_core::field::RealField::zero(&g2);
    let out = std::panic::catch_unwind(|| WaveState::new(a, b));
    assert!(out.is_err(), "mismatched grids must be rejected");
}
