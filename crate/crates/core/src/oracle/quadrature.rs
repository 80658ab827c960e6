//! Composite Simpson quadrature on a [`RadialGrid`].

use super::grid::{RadialGrid, Spacing};
use crate::error::{QesError, Result};
use crate::models::{wavefunction, QesSolution};

/// Composite Simpson on equally spaced samples; an even number of points gets
/// a 3/8-rule panel at the end.
fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        _ => {
            let (simpson_end, tail) = if n % 2 == 1 { (n - 1, 0.0) } else { (n - 4, 3.0 * h / 8.0 * (values[n - 4] + 3.0 * values[n - 3] + 3.0 * values[n - 2] + values[n - 1])) };
            let mut acc = values[0] + values[simpson_end];
            for (i, v) in values.iter().enumerate().take(simpson_end).skip(1) {
                acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            h / 3.0 * acc + tail
        }
    }
}

/// `∫ f(r) dr` over the grid. On a log grid the integrand picks up the
/// Jacobian `r`.
pub fn integrate(grid: &RadialGrid, f: impl Fn(f64) -> f64) -> f64 {
    let values: Vec<f64> = match grid.spacing() {
        Spacing::Uniform => grid.points().into_iter().map(&f).collect(),
        Spacing::Log => grid.points().into_iter().map(|r| r * f(r)).collect(),
    };
    simpson(&values, grid.step())
}

/// Relative change tolerated when the grid step is halved.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// `∫ |ψ|² dr` over the grid, checked against a grid with half the step.
pub fn normalization(solution: &QesSolution, grid: &RadialGrid) -> Result<f64> {
    let density = |r: f64| {
        let psi = wavefunction(solution, r);
        psi * psi
    };
    let coarse = integrate(grid, density);
    let fine = integrate(&grid.refined(), density);
    if fine == 0.0 && coarse == 0.0 {
        return Ok(0.0);
    }
    let change = (fine - coarse).abs() / fine.abs().max(coarse.abs());
    if !change.is_finite() || change >= NORMALIZATION_TOL {
        return Err(QesError::NotConverged(change));
    }
    Ok(fine)
}
