#![allow(dead_code)]

use qes_core::models::{solve_tuned_parameter, ModelKind, ModelParameters, QesSolution, SolveOptions};

/// Fixed parameters of the four reference configurations.
pub fn anchor_template(kind: ModelKind) -> ModelParameters {
    let fixed = |name: &str| -> Option<f64> {
        Some(match name {
            "beta" => 1.0,
            "gamma" => -0.5,
            "delta" => -0.9,
            "lambda" => -1.0,
            "xi" => 1.0,
            "tau" => 0.5,
            "omega" => 0.5,
            "sigma" => 1.0,
            "chi" => 0.5,
            _ => return None,
        })
    };
    ModelParameters::template(kind, 0, fixed).unwrap()
}

pub fn anchor_solutions(kind: ModelKind, n: usize) -> Vec<QesSolution> {
    solve_tuned_parameter(&anchor_template(kind), n, &SolveOptions::default()).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
