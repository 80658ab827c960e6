use super::grid::RadialGrid;
use crate::models::{wavefunction_derivatives, ModelParameters, QesSolution};

/// Pointwise `|-½ψ'' + (V_eff - E)ψ|` at `points`, with the scale
/// `max(|ψ''|, |V_eff ψ|)` taken over the same points.
fn raw_residuals(
    model: &ModelParameters,
    energy: f64,
    solution: &QesSolution,
    points: &[f64],
) -> (Vec<f64>, f64) {
    let mut scale = 0.0f64;
    let res = points
        .iter()
        .map(|&r| {
            let (psi, _, d2psi) = wavefunction_derivatives(solution, r);
            let vpsi = model.effective_potential(r) * psi;
            scale = scale.max(d2psi.abs()).max(vpsi.abs());
            (-0.5 * d2psi + vpsi - energy * psi).abs()
        })
        .collect();
    (res, scale)
}

/// Largest residual of the radial equation over the grid, relative to the
/// size of the kinetic and potential terms. `ψ` is the closed form of
/// `solution`; `model` and `energy` define the equation it is tested against,
/// so either can be perturbed independently of `ψ`.
pub fn ode_residual(model: &ModelParameters, energy: f64, solution: &QesSolution, grid: &RadialGrid) -> f64 {
    let (res, scale) = raw_residuals(model, energy, solution, &grid.points());
    if scale == 0.0 {
        return 0.0;
    }
    res.into_iter().fold(0.0, f64::max) / scale
}

/// Relative residual at each of `points`, sharing one scale.
pub fn residual_profile(model: &ModelParameters, energy: f64, solution: &QesSolution, points: &[f64]) -> Vec<f64> {
    let (res, scale) = raw_residuals(model, energy, solution, points);
    if scale == 0.0 {
        return vec![0.0; res.len()];
    }
    res.into_iter().map(|v| v / scale).collect()
}
