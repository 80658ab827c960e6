//! Places where the published tables disagree with the equations this crate
//! solves. Each note carries the published value next to the corrected one.

use std::f64::consts::SQRT_2;

use qes_core::models::{Diagnostics, ModelParameters, QesSolution, TunedValue};
use qes_core::oracle::{default_grid, ode_residual};
use serde::Serialize;

use crate::document::fmt_f64;
use crate::request::Request;

#[derive(Debug, Clone, Serialize)]
pub struct Erratum {
    pub location: String,
    pub quantity: String,
    pub published: f64,
    pub corrected: f64,
    /// Oracle residual of the published values, where they define a full
    /// solution that can be tested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_residual: Option<f64>,
    pub note: String,
}

impl Erratum {
    fn new(location: String, quantity: &str, published: f64, corrected: f64, published_residual: Option<f64>) -> Self {
        let mut note = format!(
            "{location}: {quantity} published {}, corrected {}",
            fmt_f64(published),
            fmt_f64(corrected)
        );
        if let Some(r) = published_residual {
            note.push_str(&format!(" (oracle residual of the published solution {r:.3e})"));
        }
        Self {
            location,
            quantity: quantity.to_string(),
            published,
            corrected,
            published_residual,
            note,
        }
    }
}

/// `α` from the published ground-state relation
/// `α/(2β²) - √2/β + l/2 + 1 = 0`.
pub fn published_ground_alpha(beta: f64, l: u32) -> f64 {
    2.0 * SQRT_2 * beta - beta * beta * (l as f64 + 2.0)
}

/// The published energy `α/β - √2(2n + l + 7/2)`.
pub fn published_energy(alpha: f64, beta: f64, l: u32, n: usize) -> f64 {
    alpha / beta - SQRT_2 * (2.0 * n as f64 + l as f64 + 3.5)
}

/// Relative ODE residual of the published ground state
/// `(1+βr²) r^{l+1} e^{-r²/√2}` at the published `α` and energy.
pub fn published_ground_residual(beta: f64, l: u32) -> Option<f64> {
    let alpha = published_ground_alpha(beta, l);
    let params = ModelParameters::non_polynomial(alpha, beta, l).ok()?;
    let energy = published_energy(alpha, beta, l, 0);
    let solution = QesSolution {
        params,
        n: 0,
        energy,
        tuned: TunedValue { name: "alpha", value: alpha },
        p: vec![1.0],
        diagnostics: Diagnostics::default(),
    };
    let grid = default_grid(&params, energy).ok()?;
    Some(ode_residual(&params, energy, &solution, &grid))
}

/// Notes that apply to a solve of `req` at degree `n` with the given roots.
pub fn collect(req: &Request, n: usize, solutions: &[QesSolution]) -> Vec<Erratum> {
    let mut out = Vec::new();
    match req.kind {
        qes_core::ModelKind::NonPolynomial => {
            let beta = req.fixed["beta"];
            let l = req.l;
            if n == 0 {
                let location = "Table 1 n=0".to_string();
                let alpha = published_ground_alpha(beta, l);
                let residual = published_ground_residual(beta, l);
                if let Some(s) = solutions.first() {
                    out.push(Erratum::new(location.clone(), "alpha", alpha, s.tuned.value, residual));
                    out.push(Erratum::new(
                        location,
                        "energy",
                        published_energy(alpha, beta, l, 0),
                        s.energy,
                        residual,
                    ));
                }
            } else {
                for s in solutions {
                    out.push(Erratum::new(
                        format!("Table 1 n={n}, alpha={}", fmt_f64(s.tuned.value)),
                        "energy",
                        published_energy(s.tuned.value, beta, l, n),
                        s.energy,
                        None,
                    ));
                }
            }
        }
        qes_core::ModelKind::ScreenedCoulomb if n >= 1 => {
            let l = req.l as f64;
            for s in solutions {
                let kappa = s.tuned.value;
                out.push(Erratum::new(
                    format!("Table 2 n={n}, kappa={}", fmt_f64(kappa)),
                    "b0",
                    (2.0 * l + 4.0) * kappa,
                    2.0 * (l + 1.0) * kappa,
                    None,
                ));
            }
        }
        _ => {}
    }
    out
}
