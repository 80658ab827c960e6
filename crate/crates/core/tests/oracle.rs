mod common;

use common::{anchor_solutions, rel};
use qes_core::models::ModelKind;
use qes_core::oracle::{
    default_grid, normalization, ode_residual, shooting_eigenvalue, verify_solution, RadialGrid, VerifyOptions,
};

#[test]
fn anchor_levels_up_to_degree_two_pass_the_oracle() {
    for kind in ModelKind::ALL {
        for n in 0..=2 {
            for s in anchor_solutions(kind, n) {
                let report = verify_solution(&s, &VerifyOptions::default()).unwrap();
                assert!(report.residual_rel <= 1e-8, "{kind} n={n}: {report:?}");
                assert!(report.e_abs_err <= 1e-6 * s.energy.abs(), "{kind} n={n} {}: {report:?}", s.tuned.value);
                assert!(report.norm.is_finite() && report.norm > 0.0);
                assert!(report.passes(s.energy));
            }
        }
    }
}

#[test]
fn one_percent_tuned_perturbation_is_detected() {
    for kind in ModelKind::ALL {
        let s = &anchor_solutions(kind, 0)[0];
        let grid = default_grid(&s.params, s.energy).unwrap();
        for f in [0.99, 1.01] {
            let wrong = s.params.with_tuned(s.tuned.value * f);
            let r = ode_residual(&wrong, s.energy, s, &grid);
            assert!(r > 1e-4, "{kind} x{f}: {r}");
        }
    }
}

#[test]
fn one_percent_energy_perturbation_is_detected() {
    for kind in ModelKind::ALL {
        let s = &anchor_solutions(kind, 0)[0];
        let grid = default_grid(&s.params, s.energy).unwrap();
        for f in [0.99, 1.01] {
            let r = ode_residual(&s.params, s.energy * f, s, &grid);
            assert!(r > 1e-4, "{kind} x{f}: {r}");
        }
    }
}

#[test]
fn shooting_converges_under_grid_refinement() {
    for kind in ModelKind::ALL {
        for n in 0..=2 {
            for s in anchor_solutions(kind, n) {
                let grid = default_grid(&s.params, s.energy).unwrap();
                let fine = RadialGrid::new(grid.r_min(), grid.r_max(), 2 * grid.count(), grid.spacing()).unwrap();
                let w = 1e-3 * s.energy.abs();
                let bracket = (s.energy - w, s.energy + w);
                let coarse = shooting_eigenvalue(&s.params, bracket, &grid).unwrap();
                let refined = shooting_eigenvalue(&s.params, bracket, &fine).unwrap();
                assert!(rel(refined, coarse) < 1e-7, "{kind} n={n}: {coarse} -> {refined}");
            }
        }
    }
}

#[test]
fn normalization_is_stable() {
    let s = &anchor_solutions(ModelKind::ScreenedCoulomb, 0)[0];
    let grid = default_grid(&s.params, s.energy).unwrap();
    let a = normalization(s, &grid).unwrap();
    let b = normalization(s, &grid.refined()).unwrap();
    assert!(a > 0.0 && rel(b, a) < 1e-8);
    // ∫ (r+5)² r² e^{-1.4 r} dr over [0, ∞); the grid edges lose far less than 1e-8
    let exact = 24.0 / 1.4f64.powi(5) + 10.0 * 6.0 / 1.4f64.powi(4) + 25.0 * 2.0 / 1.4f64.powi(3);
    assert!(rel(a, exact) < 1e-8, "{a} vs {exact}");

    let mut zero = s.clone();
    zero.p = vec![0.0];
    assert_eq!(normalization(&zero, &grid).unwrap(), 0.0);
}
