//! Independent numerical checks of closed-form solutions: residuals of the
//! radial equation with exact derivatives, a shooting eigenvalue solver, and
//! normalization by quadrature.

mod cofactor;
mod grid;
mod quadrature;
mod residual;
mod shooting;

pub use cofactor::{cofactor_determinant, laplace_determinant, MAX_COFACTOR_DEGREE};
pub use grid::{RadialGrid, Spacing};
pub use quadrature::{integrate, normalization, NORMALIZATION_TOL};
pub use residual::{ode_residual, residual_profile};
pub use shooting::shooting_eigenvalue;

use crate::error::{QesError, Result};
use crate::models::{ModelParameters, QesSolution};

pub const DEFAULT_GRID_POINTS: usize = 4096;
pub const DEFAULT_R_MIN: f64 = 1e-3;
/// Outer edge of the default grid in units of the inverse decay rate, for
/// Gaussian (`e^{-c r²}`) and exponential (`e^{-k r}`) tails.
pub const GAUSSIAN_TAIL_SPAN: f64 = 12.0;
pub const EXPONENTIAL_TAIL_SPAN: f64 = 24.0;

/// Default grid `[10⁻³, R]`, uniform with 4096 points. `R = 12 / (2ω)^{1/4}`
/// for the oscillator tails (`ω = 1` for the non-polynomial model) and
/// `R = 24 / √(-2E)` for the Coulomb-like tails, whose power-law prefactor
/// and slow decay need the longer reach for the inward shooting start.
pub fn default_grid(model: &ModelParameters, energy: f64) -> Result<RadialGrid> {
    let r_max = match *model {
        ModelParameters::NonPolynomial { .. } => GAUSSIAN_TAIL_SPAN / 2f64.powf(0.25),
        ModelParameters::SingularAnharmonic { omega, .. } => GAUSSIAN_TAIL_SPAN / (2.0 * omega).powf(0.25),
        ModelParameters::ScreenedCoulomb { .. } | ModelParameters::SingularPower { .. } => {
            EXPONENTIAL_TAIL_SPAN / crate::models::decay_rate(energy)?
        }
    };
    RadialGrid::uniform(DEFAULT_R_MIN, r_max, DEFAULT_GRID_POINTS)
}

/// Oracle verdict for one solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub residual_rel: f64,
    pub e_shoot: f64,
    pub e_abs_err: f64,
    pub norm: f64,
}

impl OracleReport {
    pub const RESIDUAL_TOL: f64 = 1e-8;
    pub const ENERGY_REL_TOL: f64 = 1e-6;

    pub fn passes(&self, energy: f64) -> bool {
        self.residual_rel <= Self::RESIDUAL_TOL
            && self.e_abs_err <= Self::ENERGY_REL_TOL * energy.abs()
            && self.norm.is_finite()
            && self.norm > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    /// Grid for all three checks; [`default_grid`] when absent.
    pub grid: Option<RadialGrid>,
    /// Shooting bracket; grown around the energy under test when absent.
    pub bracket: Option<(f64, f64)>,
}

const AUTO_BRACKET_DOUBLINGS: usize = 40;

/// Shooting with a bracket centred on `energy`, doubled until it brackets a
/// sign change.
fn shoot_around(model: &ModelParameters, energy: f64, grid: &RadialGrid) -> Result<f64> {
    let mut half = 1e-4 * energy.abs().max(1e-3);
    let mut last = None;
    for _ in 0..AUTO_BRACKET_DOUBLINGS {
        match shooting_eigenvalue(model, (energy - half, energy + half), grid) {
            Err(QesError::NoSignChange { lo, hi }) => last = Some((lo, hi)),
            other => return other,
        }
        half *= 2.0;
    }
    let (lo, hi) = last.unwrap_or((energy, energy));
    Err(QesError::NoSignChange { lo, hi })
}

/// Runs residual, shooting and normalization checks of `solution` against the
/// radial equation of `model` at `energy`.
pub fn verify(model: &ModelParameters, energy: f64, solution: &QesSolution, opts: &VerifyOptions) -> Result<OracleReport> {
    let grid = match opts.grid {
        Some(g) => g,
        None => default_grid(model, energy)?,
    };
    let residual_rel = ode_residual(model, energy, solution, &grid);
    let e_shoot = match opts.bracket {
        Some(b) => shooting_eigenvalue(model, b, &grid)?,
        None => shoot_around(model, energy, &grid)?,
    };
    let norm = normalization(solution, &grid)?;
    Ok(OracleReport {
        residual_rel,
        e_shoot,
        e_abs_err: (energy - e_shoot).abs(),
        norm,
    })
}

/// [`verify`] at the solution's own parameters and energy.
pub fn verify_solution(solution: &QesSolution, opts: &VerifyOptions) -> Result<OracleReport> {
    verify(&solution.params, solution.energy, solution, opts)
}
