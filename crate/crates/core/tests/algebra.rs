use nalgebra::DMatrix;
use proptest::prelude::*;
use qes_core::oracle::cofactor_determinant;
use qes_core::sl2::{basic_operator_matrix, sl2_action_matrices, sl2_decompose, OperatorMatrices};
use qes_core::spectral::{allowed_c0_values, expansion_coefficients};
use qes_core::{spectral_matrix, BasicEquationCoefficients};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_coefficients(rng: &mut ChaCha8Rng, n: usize) -> BasicEquationCoefficients {
    let mut draw = || rng.random_range(-5.0..5.0);
    let (a, b0, b1, b2, c0) = (draw(), draw(), draw(), draw(), draw());
    BasicEquationCoefficients::new(a, b0, b1, b2, c0, -(n as f64) * b2)
}

fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn commutators_are_exact() {
    for n in 0..=16 {
        let j = sl2_action_matrices(n);
        assert_eq!(OperatorMatrices::commutator(&j.raising, &j.lowering), &j.weight * 2.0, "n={n}");
        assert_eq!(OperatorMatrices::commutator(&j.weight, &j.raising), j.raising, "n={n}");
        assert_eq!(OperatorMatrices::commutator(&j.weight, &j.lowering), -&j.lowering, "n={n}");
    }
}

#[test]
fn generator_reconstruction_matches_basic_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x512);
    for _ in 0..1000 {
        let n = rng.random_range(0..=10usize);
        let c = random_coefficients(&mut rng, n);
        let dec = sl2_decompose(&c, n).unwrap();
        for m in 0..=n {
            let mut mono = vec![0.0; n + 1];
            mono[m] = 1.0;
            let direct = c.apply(&mono);
            let rebuilt = dec.apply(&mono);
            let scale = max_abs(direct.iter().copied()).max(1.0);
            for (x, y) in direct.iter().zip(&rebuilt) {
                assert!((x - y).abs() <= 1e-12 * scale, "n={n} m={m}: {direct:?} vs {rebuilt:?}");
            }
        }
        let h = basic_operator_matrix(&c, n);
        let scale = max_abs(h.iter().copied()).max(1.0);
        assert!((dec.matrix() - h).amax() <= 1e-12 * scale);
    }
}

fn hadamard_bound(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.norm()).product()
}

#[test]
fn cofactor_matches_continuant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let n = rng.random_range(0..=6usize);
        let c = random_coefficients(&mut rng, n);
        let m = spectral_matrix(&c, n);
        let brute = cofactor_determinant(&m).unwrap();
        let fast = m.determinant();
        let scale = hadamard_bound(&m.to_dense()).max(f64::MIN_POSITIVE);
        assert!((brute - fast).abs() <= 1e-12 * scale, "n={n}: {brute} vs {fast}");
    }
}

/// Coefficients with recursion denominators bounded away from zero.
fn well_posed() -> impl Strategy<Value = (f64, f64, f64, f64, usize)> {
    (-1.0..0.0f64, 1.0..3.0f64, -2.0..2.0f64, -2.0..-0.5f64, 1usize..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn allowed_roots_truncate_the_series((a, b0, b1, b2, n) in well_posed()) {
        let allowed = allowed_c0_values(a, b0, b1, b2, n);
        for &c0 in &allowed.values {
            let c = BasicEquationCoefficients::new(a, b0, b1, b2, c0, -(n as f64) * b2);
            let m = spectral_matrix(&c, n);
            prop_assert!(m.relative_determinant() <= 1e-10);
            let e = expansion_coefficients(&c, n).unwrap();
            let pmax = max_abs(e.p.iter().copied());
            prop_assert!(e.terminal_residual.abs() <= 1e-10 * pmax);
            prop_assert!(c.operator_residual(&e.p) <= 1e-12 * pmax, "{}", c.operator_residual(&e.p) / pmax);
        }
        prop_assert_eq!(allowed.values.len() + 2 * allowed.complex_pairs, n + 1);
    }

    #[test]
    fn off_root_c0_leaves_a_residual((a, b0, b1, b2, n) in well_posed()) {
        let allowed = allowed_c0_values(a, b0, b1, b2, n);
        prop_assume!(!allowed.values.is_empty());
        let root = allowed.values[0];
        let nearest_other = allowed.values[1..].iter().map(|v| (v - root).abs()).fold(f64::INFINITY, f64::min);
        prop_assume!(nearest_other > 0.1);
        let c = BasicEquationCoefficients::new(a, b0, b1, b2, root - 1e-2, -(n as f64) * b2);
        let e = expansion_coefficients(&c, n).unwrap();
        let pmax = max_abs(e.p.iter().copied());
        prop_assert!(c.operator_residual(&e.p) >= 1e-3 * pmax, "{}", c.operator_residual(&e.p) / pmax);
    }
}
