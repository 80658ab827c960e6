//! Two-sided Numerov shooting for the radial equation `u'' = Q(r) u`,
//! `Q = 2(V_eff - E)`.
//!
//! On a log grid the equation is integrated in `x = ln r` for
//! `w = u / √r`, which satisfies `w'' = [(l+½)² + 2r²(V - E)] w`.

use super::grid::{RadialGrid, Spacing};
use crate::error::{QesError, Result};
use crate::models::{Gauge, ModelParameters};

/// Largest `h²|Q|/12` at which an integration may start.
const START_STIFFNESS: f64 = 0.05;
const RESCALE_ABOVE: f64 = 1e100;
const MAX_BISECTIONS: usize = 200;

fn q_value(model: &ModelParameters, energy: f64, r: f64, spacing: Spacing) -> f64 {
    match spacing {
        Spacing::Uniform => 2.0 * (model.effective_potential(r) - energy),
        Spacing::Log => {
            let l = model.l() as f64 + 0.5;
            l * l + 2.0 * r * r * (model.potential(r) - energy)
        }
    }
}

/// Log-amplitude of the solution regular at the origin, up to a constant.
fn small_r_log_amplitude(model: &ModelParameters, energy: f64, r: f64) -> f64 {
    match *model {
        ModelParameters::NonPolynomial { l, .. } => (l as f64 + 1.0) * r.ln(),
        ModelParameters::ScreenedCoulomb { gamma, l, .. } => {
            let l1 = l as f64 + 1.0;
            l1 * r.ln() + gamma * r / l1
        }
        ModelParameters::SingularPower { .. } | ModelParameters::SingularAnharmonic { .. } => {
            Gauge::new(model, energy).log_derivatives(r).0
        }
    }
}

/// Log-amplitude of the solution decaying at infinity, up to a constant.
fn large_r_log_amplitude(model: &ModelParameters, energy: f64, r: f64) -> f64 {
    let coulomb = |charge: f64| {
        let k = (-2.0 * energy).max(1e-12).sqrt();
        (charge / k) * r.ln() - k * r
    };
    match *model {
        ModelParameters::NonPolynomial { alpha, beta, .. } => {
            let nu = (energy - alpha / beta) / std::f64::consts::SQRT_2 - 0.5;
            nu * r.ln() - r * r / std::f64::consts::SQRT_2
        }
        ModelParameters::ScreenedCoulomb { gamma, delta, .. } => coulomb(-(gamma + delta)),
        ModelParameters::SingularPower { lambda, .. } => coulomb(-lambda),
        ModelParameters::SingularAnharmonic { omega, .. } => {
            let w = (omega / 2.0).sqrt();
            let nu = (energy - w) / (2.0 * w);
            nu * r.ln() - w * r * r
        }
    }
}

struct Shooter<'a> {
    model: &'a ModelParameters,
    grid: &'a RadialGrid,
    r: Vec<f64>,
    h2: f64,
    matching: usize,
}

impl<'a> Shooter<'a> {
    fn new(model: &'a ModelParameters, grid: &'a RadialGrid, reference_energy: f64) -> Self {
        let r = grid.points();
        let h = grid.step();
        let n = r.len();
        // outermost classical turning point at the reference energy
        let matching = (0..n)
            .rev()
            .find(|&i| q_value(model, reference_energy, r[i], grid.spacing()) < 0.0)
            .unwrap_or(n / 2)
            .clamp(2, n - 4);
        Self {
            model,
            grid,
            r,
            h2: h * h,
            matching,
        }
    }

    fn log_amplitude(&self, energy: f64, r: f64, inner: bool) -> f64 {
        let amp = if inner {
            small_r_log_amplitude(self.model, energy, r)
        } else {
            large_r_log_amplitude(self.model, energy, r)
        };
        match self.grid.spacing() {
            Spacing::Uniform => amp,
            Spacing::Log => amp - 0.5 * r.ln(),
        }
    }

    /// Numerov from `start` towards `stop` (either direction); returns the
    /// values at `stop - dir` and `stop`, i.e. in the order they are visited.
    fn integrate(&self, energy: f64, start: usize, stop: usize) -> Result<(f64, f64)> {
        let forward = stop > start;
        let next = |i: usize| if forward { i + 1 } else { i - 1 };
        let f = |i: usize| 1.0 - self.h2 * q_value(self.model, energy, self.r[i], self.grid.spacing()) / 12.0;

        let inner = forward;
        let i1 = next(start);
        let ratio = (self.log_amplitude(energy, self.r[i1], inner) - self.log_amplitude(energy, self.r[start], inner)).exp();
        let (mut y0, mut y1) = (1.0, ratio);
        let (mut f0, mut f1) = (f(start), f(i1));
        let mut i = i1;
        while i != stop {
            let j = next(i);
            let f2 = f(j);
            let y2 = ((12.0 - 10.0 * f1) * y1 - f0 * y0) / f2;
            if !y2.is_finite() {
                return Err(QesError::StiffFailure { r: self.r[j] });
            }
            y0 = y1;
            y1 = y2;
            if y1.abs() > RESCALE_ABOVE {
                y0 /= RESCALE_ABOVE;
                y1 /= RESCALE_ABOVE;
            }
            f0 = f1;
            f1 = f2;
            i = j;
        }
        Ok((y0, y1))
    }

    fn start_index(&self, energy: f64, from_left: bool) -> Option<usize> {
        let ok = |i: usize| self.h2 * q_value(self.model, energy, self.r[i], self.grid.spacing()).abs() / 12.0 <= START_STIFFNESS;
        if from_left {
            (0..self.matching.saturating_sub(1)).find(|&i| ok(i) && ok(i + 1))
        } else {
            (self.matching + 3..self.r.len()).rev().find(|&i| ok(i) && ok(i - 1))
        }
    }

    /// Normalized Wronskian of the two branches across `[m, m+1]`.
    fn defect(&self, energy: f64) -> Result<f64> {
        let m = self.matching;
        let s = self
            .start_index(energy, true)
            .ok_or(QesError::StiffFailure { r: self.r[m] })?;
        let e = self
            .start_index(energy, false)
            .ok_or(QesError::StiffFailure { r: self.r[m + 1] })?;
        let (om, om1) = self.integrate(energy, s, m + 1)?;
        let (im1, im) = self.integrate(energy, e, m)?;
        let norm = om.hypot(om1) * im.hypot(im1);
        let d = (om * im1 - om1 * im) / norm;
        if !d.is_finite() {
            return Err(QesError::StiffFailure { r: self.r[m] });
        }
        Ok(d)
    }
}

/// Bound-state energy in `bracket` found by matching outward and inward
/// Numerov solutions and bisecting the matching defect.
///
/// The bracket must contain exactly one eigenvalue.
pub fn shooting_eigenvalue(model: &ModelParameters, bracket: (f64, f64), grid: &RadialGrid) -> Result<f64> {
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
    let shooter = Shooter::new(model, grid, 0.5 * (lo + hi));
    let mut f_lo = shooter.defect(lo)?;
    let f_hi = shooter.defect(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(QesError::NoSignChange { lo, hi });
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-14 * mid.abs() {
            break;
        }
        let f_mid = shooter.defect(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(model: ModelParameters, bracket: (f64, f64), grid: RadialGrid, expected: f64) {
        let e = shooting_eigenvalue(&model, bracket, &grid).unwrap();
        assert!(((e - expected) / expected).abs() < 1e-6, "{model:?}: {e} vs {expected}");
    }

    #[test]
    fn screened_coulomb_anchor() {
        let m = ModelParameters::screened_coulomb(-0.5, -0.9, 5.0, 0).unwrap();
        check(m, (-0.3, -0.2), RadialGrid::uniform(1e-3, 12.0 / 0.7, 4096).unwrap(), -0.245);
    }

    #[test]
    fn singular_power_anchor() {
        let m = ModelParameters::singular_power(-1.0, 0.5, 1.0, 0.5, 0).unwrap();
        check(m, (-0.2, -0.09), RadialGrid::uniform(1e-3, 24.0 / 0.5, 4096).unwrap(), -0.125);
    }

    #[test]
    fn singular_power_wide_bracket_holds_two_levels() {
        // (-0.2, -0.05) also contains the next level near -0.0557727
        let m = ModelParameters::singular_power(-1.0, 0.5, 1.0, 0.5, 0).unwrap();
        let grid = RadialGrid::uniform(1e-3, 24.0 / 0.5, 4096).unwrap();
        assert!(matches!(
            shooting_eigenvalue(&m, (-0.2, -0.05), &grid),
            Err(QesError::NoSignChange { .. })
        ));
        check(m, (-0.07, -0.05), grid, -0.0557727);
    }

    #[test]
    fn singular_anharmonic_anchor() {
        let m = ModelParameters::singular_anharmonic(0.5, 0.875, 1.0, 0.5, 0).unwrap();
        check(m, (2.5, 3.5), RadialGrid::uniform(1e-3, 12.0, 4096).unwrap(), 3.0);
    }

    #[test]
    fn no_sign_change_is_reported() {
        let m = ModelParameters::screened_coulomb(-0.5, -0.9, 5.0, 0).unwrap();
        let grid = RadialGrid::uniform(1e-3, 12.0 / 0.7, 4096).unwrap();
        assert!(matches!(
            shooting_eigenvalue(&m, (-0.23, -0.2), &grid),
            Err(QesError::NoSignChange { .. })
        ));
    }
}
