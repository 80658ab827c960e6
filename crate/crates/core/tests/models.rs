mod common;

use common::{anchor_solutions, anchor_template};
use proptest::prelude::*;
use qes_core::models::{closed_form_energy, coefficient_map, solve_tuned_parameter, ModelKind, ModelParameters, SolveOptions};
use std::f64::consts::SQRT_2;

fn any_model() -> impl Strategy<Value = ModelParameters> {
    let l = 0u32..4;
    prop_oneof![
        (-20.0..5.0f64, 0.2..3.0f64, l.clone()).prop_map(|(alpha, beta, l)| ModelParameters::NonPolynomial { alpha, beta, l }),
        (-3.0..-0.1f64, -3.0..1.0f64, 0.1..20.0f64, l.clone())
            .prop_filter("bound", |(g, d, _, _)| g + d < -0.05)
            .prop_map(|(gamma, delta, kappa, l)| ModelParameters::ScreenedCoulomb { gamma, delta, kappa, l }),
        (-3.0..-0.1f64, -2.0..5.0f64, -1.0..3.0f64, 0.1..3.0f64, l.clone())
            .prop_map(|(lambda, mu, xi, tau, l)| ModelParameters::SingularPower { lambda, mu, xi, tau, l }),
        (0.1..3.0f64, 0.0..10.0f64, -1.0..3.0f64, 0.1..3.0f64, l)
            .prop_map(|(omega, epsilon, sigma, chi, l)| ModelParameters::SingularAnharmonic { omega, epsilon, sigma, chi, l }),
    ]
}

proptest! {
    #[test]
    fn closed_form_energy_satisfies_quasi_exactness(model in any_model(), n in 0usize..=4) {
        let c = coefficient_map(&model, closed_form_energy(&model, n)).unwrap();
        let scale = c.c1.abs().max((n as f64 * c.b2).abs()).max(1.0);
        prop_assert!(c.quasi_exactness_residual(n).abs() <= 1e-12 * scale);
    }

    #[test]
    fn recursion_denominators_are_positive(model in any_model(), n in 0usize..=8) {
        prop_assume!(matches!(model, ModelParameters::NonPolynomial { .. } | ModelParameters::ScreenedCoulomb { .. }));
        let c = coefficient_map(&model, closed_form_energy(&model, n)).unwrap();
        for k in 0..n {
            prop_assert!(c.recursion_denominator(k) > 0.0);
        }
    }

    #[test]
    fn tuned_parameter_shifts_c0_linearly(model in any_model(), n in 0usize..=3, delta in 1e-3..1e-1f64) {
        let slope = match model {
            ModelParameters::NonPolynomial { beta, .. } => 1.0 / (2.0 * beta * beta),
            ModelParameters::SingularPower { .. } => -2.0,
            ModelParameters::SingularAnharmonic { .. } => -0.5,
            ModelParameters::ScreenedCoulomb { .. } => return Ok(()),
        };
        let c0 = |m: &ModelParameters| coefficient_map(m, closed_form_energy(m, n)).unwrap().c0;
        let shifted = model.with_tuned(model.tuned() + delta);
        let fd = (c0(&shifted) - c0(&model)) / delta;
        prop_assert!((fd - slope).abs() <= 1e-9 * slope.abs().max(1.0) / delta.min(1.0), "{fd} vs {slope}");
    }

    #[test]
    fn every_solved_root_round_trips(model in any_model(), n in 0usize..=3) {
        let Ok(sols) = solve_tuned_parameter(&model, n, &SolveOptions::default()) else { return Ok(()) };
        for s in &sols {
            let pmax = s.p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            prop_assert!(s.diagnostics.operator_residual <= 1e-12 * pmax, "{:?}", s.diagnostics);
            prop_assert!(s.diagnostics.terminal_residual.abs() <= 1e-10 * pmax, "{:?}", s.diagnostics);
        }
    }
}

#[test]
fn ground_level_forces_both_c_coefficients_to_zero() {
    for kind in ModelKind::ALL {
        let sols = anchor_solutions(kind, 0);
        assert_eq!(sols.len(), 1, "{kind}");
        let c = sols[0].coefficients().unwrap();
        assert!(c.c0.abs() < 1e-12 && c.c1.abs() < 1e-12, "{kind}: {c:?}");
    }
}

#[test]
fn anchor_ground_levels() {
    let expect = [
        (ModelKind::NonPolynomial, -(3.0 + 2.0 * SQRT_2), 3.0 / SQRT_2 - 3.0),
        (ModelKind::ScreenedCoulomb, 5.0, -0.245),
        (ModelKind::SingularPower, 0.5, -0.125),
        (ModelKind::SingularAnharmonic, 0.875, 3.0),
    ];
    for (kind, tuned, energy) in expect {
        let s = &anchor_solutions(kind, 0)[0];
        assert!((s.tuned.value - tuned).abs() <= 1e-12 * tuned.abs(), "{kind}: {}", s.tuned.value);
        assert!((s.energy - energy).abs() <= 1e-12 * energy.abs(), "{kind}: {}", s.energy);
        assert_eq!(s.p, vec![1.0]);
    }
}

#[test]
fn template_ignores_tuned_value() {
    let t = anchor_template(ModelKind::SingularPower);
    assert!(t.tuned().is_nan());
    let again = solve_tuned_parameter(&t.with_tuned(123.0), 0, &SolveOptions::default()).unwrap();
    assert_eq!(again, anchor_solutions(ModelKind::SingularPower, 0));
}
