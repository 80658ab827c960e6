//! Closed-form radial wavefunctions `ψ(r) = G(r) · φ(z(r))` and their exact
//! first and second derivatives.
//!
//! Constant prefactors of the gauge factor (`e^{-kκ}`, powers of `β`, signs)
//! are absorbed into `p_0`, so every `ψ` here is real.

use std::f64::consts::SQRT_2;

use super::{ModelParameters, QesSolution};

/// How the polynomial variable depends on `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolynomialVariable {
    /// `z = r`
    Radius,
    /// `z = s·r²`
    ScaledSquare(f64),
}

impl PolynomialVariable {
    /// `(z, dz/dr, d²z/dr²)`
    pub fn eval(self, r: f64) -> (f64, f64, f64) {
        match self {
            PolynomialVariable::Radius => (r, 1.0, 0.0),
            PolynomialVariable::ScaledSquare(s) => (s * r * r, 2.0 * s * r, 2.0 * s),
        }
    }
}

/// The gauge factor `G(r)` of a model at a given energy, held through its
/// logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gauge {
    /// `(1 + β r²) r^{l+1} e^{-r²/√2}`
    NonPolynomial { beta: f64, l: f64 },
    /// `(r + κ) r^{l+1} e^{-k r}`
    ScreenedCoulomb { kappa: f64, k: f64, l: f64 },
    /// `r^s e^{-(k r + c/r)}`
    SingularPower { s: f64, k: f64, c: f64 },
    /// `r^s e^{-(w r² + c/r²)}`
    SingularAnharmonic { s: f64, w: f64, c: f64 },
}

impl Gauge {
    /// Gauge for `model` at `energy`. For the Coulomb-like tails a
    /// non-negative energy gives `k = 0`.
    pub fn new(model: &ModelParameters, energy: f64) -> Self {
        let k = (-2.0 * energy).max(0.0).sqrt();
        match *model {
            ModelParameters::NonPolynomial { beta, l, .. } => Gauge::NonPolynomial { beta, l: l as f64 },
            ModelParameters::ScreenedCoulomb { kappa, l, .. } => Gauge::ScreenedCoulomb {
                kappa,
                k,
                l: l as f64,
            },
            ModelParameters::SingularPower { xi, tau, .. } => {
                let c = (2.0 * tau).sqrt();
                Gauge::SingularPower { s: 1.0 + xi / c, k, c }
            }
            ModelParameters::SingularAnharmonic {
                omega, sigma, chi, ..
            } => Gauge::SingularAnharmonic {
                s: 1.5 + sigma / (2.0 * chi).sqrt(),
                w: (omega / 2.0).sqrt(),
                c: (chi / 2.0).sqrt(),
            },
        }
    }

    pub fn variable(&self) -> PolynomialVariable {
        match *self {
            Gauge::NonPolynomial { beta, .. } => PolynomialVariable::ScaledSquare(beta),
            Gauge::ScreenedCoulomb { .. } | Gauge::SingularPower { .. } => PolynomialVariable::Radius,
            Gauge::SingularAnharmonic { .. } => PolynomialVariable::ScaledSquare(1.0),
        }
    }

    /// `(ln G, (ln G)', (ln G)'')` at `r > 0`.
    pub fn log_derivatives(&self, r: f64) -> (f64, f64, f64) {
        match *self {
            Gauge::NonPolynomial { beta, l } => {
                let q = 1.0 + beta * r * r;
                let val = q.ln() + (l + 1.0) * r.ln() - r * r / SQRT_2;
                let d1 = 2.0 * beta * r / q + (l + 1.0) / r - SQRT_2 * r;
                let d2 = 2.0 * beta * (1.0 - beta * r * r) / (q * q) - (l + 1.0) / (r * r) - SQRT_2;
                (val, d1, d2)
            }
            Gauge::ScreenedCoulomb { kappa, k, l } => {
                let q = r + kappa;
                let val = q.ln() + (l + 1.0) * r.ln() - k * r;
                let d1 = 1.0 / q + (l + 1.0) / r - k;
                let d2 = -1.0 / (q * q) - (l + 1.0) / (r * r);
                (val, d1, d2)
            }
            Gauge::SingularPower { s, k, c } => {
                let val = s * r.ln() - k * r - c / r;
                let d1 = s / r - k + c / (r * r);
                let d2 = -s / (r * r) - 2.0 * c / (r * r * r);
                (val, d1, d2)
            }
            Gauge::SingularAnharmonic { s, w, c } => {
                let r2 = r * r;
                let val = s * r.ln() - w * r2 - c / r2;
                let d1 = s / r - 2.0 * w * r + 2.0 * c / (r2 * r);
                let d2 = -s / r2 - 2.0 * w - 6.0 * c / (r2 * r2);
                (val, d1, d2)
            }
        }
    }
}

/// `(φ(z), φ'(z), φ''(z))` by Horner's rule.
fn polynomial_derivatives(p: &[f64], z: f64) -> (f64, f64, f64) {
    let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
    for &c in p.iter().rev() {
        d2 = d2 * z + 2.0 * d1;
        d1 = d1 * z + v;
        v = v * z + c;
    }
    (v, d1, d2)
}

/// `(ψ, ψ', ψ'')` at `r > 0`, differentiated exactly.
pub fn wavefunction_derivatives(solution: &QesSolution, r: f64) -> (f64, f64, f64) {
    let gauge = Gauge::new(&solution.params, solution.energy);
    let (z, dz, d2z) = gauge.variable().eval(r);
    let (phi, dphi_z, d2phi_z) = polynomial_derivatives(&solution.p, z);
    let dphi = dphi_z * dz;
    let d2phi = d2phi_z * dz * dz + dphi_z * d2z;

    let (lg, l1, l2) = gauge.log_derivatives(r);
    let g = lg.exp();
    if g == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let psi = g * phi;
    let dpsi = g * (l1 * phi + dphi);
    let d2psi = g * ((l2 + l1 * l1) * phi + 2.0 * l1 * dphi + d2phi);
    (psi, dpsi, d2psi)
}

/// `ψ(r)` for `r > 0`.
pub fn wavefunction(solution: &QesSolution, r: f64) -> f64 {
    let gauge = Gauge::new(&solution.params, solution.energy);
    let (z, _, _) = gauge.variable().eval(r);
    let phi = solution.p.iter().rev().fold(0.0, |acc, &c| acc * z + c);
    let g = gauge.log_derivatives(r).0.exp();
    if g == 0.0 {
        0.0
    } else {
        g * phi
    }
}
