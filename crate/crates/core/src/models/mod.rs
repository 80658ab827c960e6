//! The four spherically symmetric potentials and their reduction to the basic
//! equation.
//!
//! | model                | potential V(r)                          | variable z | tuned |
//! |----------------------|-----------------------------------------|------------|-------|
//! | non-polynomial       | r² + α r² / (1 + β r²)                  | β r²       | α     |
//! | screened Coulomb     | γ/r + δ/(r + κ)                         | r          | κ     |
//! | singular power       | λ/r + μ/r² + ξ/r³ + τ/r⁴                | r          | μ     |
//! | singular anharmonic  | ω r² + ε/r² + σ/r⁴ + χ/r⁶               | r²         | ε     |
//!
//! Atomic units (`m = ħ = 1`) throughout; the radial equation is
//! `-½ u'' + (l(l+1)/(2r²) + V) u = E u`.

mod solve;
mod wavefunction;

pub use solve::{solve_tuned_parameter, Diagnostics, QesSolution, SolveOptions, TunedValue};
pub use wavefunction::{wavefunction, wavefunction_derivatives, Gauge, PolynomialVariable};

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::coefficients::BasicEquationCoefficients;
use crate::error::{QesError, Result};

/// Which potential family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    NonPolynomial,
    ScreenedCoulomb,
    SingularPower,
    SingularAnharmonic,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::NonPolynomial,
        ModelKind::ScreenedCoulomb,
        ModelKind::SingularPower,
        ModelKind::SingularAnharmonic,
    ];

    /// Kebab-case name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::NonPolynomial => "non-polynomial",
            ModelKind::ScreenedCoulomb => "screened-coulomb",
            ModelKind::SingularPower => "singular-power",
            ModelKind::SingularAnharmonic => "singular-anharmonic",
        }
    }

    /// The parameter fixed by the determinant condition.
    pub fn tuned_parameter(self) -> &'static str {
        match self {
            ModelKind::NonPolynomial => "alpha",
            ModelKind::ScreenedCoulomb => "kappa",
            ModelKind::SingularPower => "mu",
            ModelKind::SingularAnharmonic => "epsilon",
        }
    }

    /// Every parameter name except `l`, tuned parameter included.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            ModelKind::NonPolynomial => &["alpha", "beta"],
            ModelKind::ScreenedCoulomb => &["gamma", "delta", "kappa"],
            ModelKind::SingularPower => &["lambda", "mu", "xi", "tau"],
            ModelKind::SingularAnharmonic => &["omega", "epsilon", "sigma", "chi"],
        }
    }

    /// Parameters the caller must supply (all but the tuned one).
    pub fn fixed_parameter_names(self) -> Vec<&'static str> {
        let tuned = self.tuned_parameter();
        self.parameter_names()
            .iter()
            .copied()
            .filter(|&p| p != tuned)
            .collect()
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = QesError;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| QesError::InvalidParameters(format!("unknown model '{s}'")))
    }
}

/// Physical parameters of one of the four potentials, plus the angular
/// momentum `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParameters {
    NonPolynomial {
        alpha: f64,
        beta: f64,
        l: u32,
    },
    ScreenedCoulomb {
        gamma: f64,
        delta: f64,
        kappa: f64,
        l: u32,
    },
    SingularPower {
        lambda: f64,
        mu: f64,
        xi: f64,
        tau: f64,
        l: u32,
    },
    SingularAnharmonic {
        omega: f64,
        epsilon: f64,
        sigma: f64,
        chi: f64,
        l: u32,
    },
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(QesError::InvalidParameters(msg.into()))
    }
}

impl ModelParameters {
    pub fn non_polynomial(alpha: f64, beta: f64, l: u32) -> Result<Self> {
        let p = ModelParameters::NonPolynomial { alpha, beta, l };
        p.validate()?;
        Ok(p)
    }

    pub fn screened_coulomb(gamma: f64, delta: f64, kappa: f64, l: u32) -> Result<Self> {
        let p = ModelParameters::ScreenedCoulomb {
            gamma,
            delta,
            kappa,
            l,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn singular_power(lambda: f64, mu: f64, xi: f64, tau: f64, l: u32) -> Result<Self> {
        let p = ModelParameters::SingularPower {
            lambda,
            mu,
            xi,
            tau,
            l,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn singular_anharmonic(omega: f64, epsilon: f64, sigma: f64, chi: f64, l: u32) -> Result<Self> {
        let p = ModelParameters::SingularAnharmonic {
            omega,
            epsilon,
            sigma,
            chi,
            l,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds parameters from `(name, value)` pairs. Missing names are an
    /// error; unknown names are ignored.
    pub fn from_named(kind: ModelKind, l: u32, lookup: impl Fn(&str) -> Option<f64>) -> Result<Self> {
        let p = Self::raw_from_named(kind, l, |name| lookup(name))?;
        p.validate()?;
        Ok(p)
    }

    /// Like [`ModelParameters::from_named`] but without the tuned parameter,
    /// which is left as NaN: the input to
    /// [`solve_tuned_parameter`](super::solve_tuned_parameter).
    pub fn template(kind: ModelKind, l: u32, lookup: impl Fn(&str) -> Option<f64>) -> Result<Self> {
        let tuned = kind.tuned_parameter();
        let p = Self::raw_from_named(kind, l, |name| if name == tuned { Some(f64::NAN) } else { lookup(name) })?;
        p.validate_fixed()?;
        Ok(p)
    }

    fn raw_from_named(kind: ModelKind, l: u32, lookup: impl Fn(&str) -> Option<f64>) -> Result<Self> {
        let get = |name: &str| {
            lookup(name).ok_or_else(|| {
                QesError::InvalidParameters(format!("missing parameter '{name}' for {kind}"))
            })
        };
        Ok(match kind {
            ModelKind::NonPolynomial => ModelParameters::NonPolynomial {
                alpha: get("alpha")?,
                beta: get("beta")?,
                l,
            },
            ModelKind::ScreenedCoulomb => ModelParameters::ScreenedCoulomb {
                gamma: get("gamma")?,
                delta: get("delta")?,
                kappa: get("kappa")?,
                l,
            },
            ModelKind::SingularPower => ModelParameters::SingularPower {
                lambda: get("lambda")?,
                mu: get("mu")?,
                xi: get("xi")?,
                tau: get("tau")?,
                l,
            },
            ModelKind::SingularAnharmonic => ModelParameters::SingularAnharmonic {
                omega: get("omega")?,
                epsilon: get("epsilon")?,
                sigma: get("sigma")?,
                chi: get("chi")?,
                l,
            },
        })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParameters::NonPolynomial { .. } => ModelKind::NonPolynomial,
            ModelParameters::ScreenedCoulomb { .. } => ModelKind::ScreenedCoulomb,
            ModelParameters::SingularPower { .. } => ModelKind::SingularPower,
            ModelParameters::SingularAnharmonic { .. } => ModelKind::SingularAnharmonic,
        }
    }

    pub fn l(&self) -> u32 {
        match *self {
            ModelParameters::NonPolynomial { l, .. }
            | ModelParameters::ScreenedCoulomb { l, .. }
            | ModelParameters::SingularPower { l, .. }
            | ModelParameters::SingularAnharmonic { l, .. } => l,
        }
    }

    /// Value of a named parameter (`"l"` included).
    pub fn get(&self, name: &str) -> Option<f64> {
        if name == "l" {
            return Some(self.l() as f64);
        }
        let v = match (*self, name) {
            (ModelParameters::NonPolynomial { alpha, .. }, "alpha") => alpha,
            (ModelParameters::NonPolynomial { beta, .. }, "beta") => beta,
            (ModelParameters::ScreenedCoulomb { gamma, .. }, "gamma") => gamma,
            (ModelParameters::ScreenedCoulomb { delta, .. }, "delta") => delta,
            (ModelParameters::ScreenedCoulomb { kappa, .. }, "kappa") => kappa,
            (ModelParameters::SingularPower { lambda, .. }, "lambda") => lambda,
            (ModelParameters::SingularPower { mu, .. }, "mu") => mu,
            (ModelParameters::SingularPower { xi, .. }, "xi") => xi,
            (ModelParameters::SingularPower { tau, .. }, "tau") => tau,
            (ModelParameters::SingularAnharmonic { omega, .. }, "omega") => omega,
            (ModelParameters::SingularAnharmonic { epsilon, .. }, "epsilon") => epsilon,
            (ModelParameters::SingularAnharmonic { sigma, .. }, "sigma") => sigma,
            (ModelParameters::SingularAnharmonic { chi, .. }, "chi") => chi,
            _ => return None,
        };
        Some(v)
    }

    /// Current value of the tuned parameter.
    pub fn tuned(&self) -> f64 {
        self.get(self.kind().tuned_parameter())
            .expect("every model has a tuned parameter")
    }

    /// Copy with the tuned parameter replaced. No validation.
    pub fn with_tuned(&self, value: f64) -> Self {
        let mut p = *self;
        match &mut p {
            ModelParameters::NonPolynomial { alpha, .. } => *alpha = value,
            ModelParameters::ScreenedCoulomb { kappa, .. } => *kappa = value,
            ModelParameters::SingularPower { mu, .. } => *mu = value,
            ModelParameters::SingularAnharmonic { epsilon, .. } => *epsilon = value,
        }
        p
    }

    /// Checks the sign constraints on every parameter except the tuned one.
    pub fn validate_fixed(&self) -> Result<()> {
        let finite = self
            .kind()
            .fixed_parameter_names()
            .iter()
            .all(|&n| self.get(n).is_some_and(f64::is_finite));
        require(finite, "parameters must be finite")?;
        match *self {
            ModelParameters::NonPolynomial { beta, .. } => require(beta > 0.0, "beta must be > 0"),
            ModelParameters::ScreenedCoulomb { gamma, delta, .. } => {
                require(gamma < -delta, "gamma < -delta required for bound states")
            }
            ModelParameters::SingularPower { lambda, tau, .. } => {
                require(lambda < 0.0, "lambda must be < 0")?;
                require(tau > 0.0, "tau must be > 0")
            }
            ModelParameters::SingularAnharmonic { omega, chi, .. } => {
                require(omega > 0.0, "omega must be > 0")?;
                require(chi > 0.0, "chi must be > 0")
            }
        }
    }

    /// Checks all construction invariants.
    pub fn validate(&self) -> Result<()> {
        self.validate_fixed()?;
        require(self.tuned().is_finite(), "parameters must be finite")?;
        match *self {
            ModelParameters::ScreenedCoulomb { kappa, .. } => require(kappa > 0.0, "kappa must be > 0"),
            ModelParameters::SingularAnharmonic { epsilon, l, .. } => {
                lprime(l, epsilon).map(|_| ())
            }
            _ => Ok(()),
        }
    }

    /// Physical potential `V(r)` (without the centrifugal term).
    pub fn potential(&self, r: f64) -> f64 {
        match *self {
            ModelParameters::NonPolynomial { alpha, beta, .. } => {
                let r2 = r * r;
                r2 + alpha * r2 / (1.0 + beta * r2)
            }
            ModelParameters::ScreenedCoulomb {
                gamma, delta, kappa, ..
            } => gamma / r + delta / (r + kappa),
            ModelParameters::SingularPower {
                lambda, mu, xi, tau, ..
            } => {
                let ri = 1.0 / r;
                ri * (lambda + ri * (mu + ri * (xi + ri * tau)))
            }
            ModelParameters::SingularAnharmonic {
                omega,
                epsilon,
                sigma,
                chi,
                ..
            } => {
                let ri2 = 1.0 / (r * r);
                omega * r * r + ri2 * (epsilon + ri2 * (sigma + ri2 * chi))
            }
        }
    }

    /// Potential plus centrifugal barrier `l(l+1)/(2r²)`.
    pub fn effective_potential(&self, r: f64) -> f64 {
        let l = self.l() as f64;
        l * (l + 1.0) / (2.0 * r * r) + self.potential(r)
    }
}

/// Effective angular momentum `l'` absorbing an extra `ε/r²` coupling:
/// `l'(l'+1) = l(l+1) + 2ε`, taking the root `l' ≥ -1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveAngularMomentum {
    pub l: u32,
    pub epsilon: f64,
    pub lprime: f64,
}

impl EffectiveAngularMomentum {
    pub fn new(l: u32, epsilon: f64) -> Result<Self> {
        Ok(Self {
            l,
            epsilon,
            lprime: lprime(l, epsilon)?,
        })
    }

    /// `l'(l'+1)`, computed without the square root.
    pub fn casimir(&self) -> f64 {
        let l = self.l as f64;
        l * (l + 1.0) + 2.0 * self.epsilon
    }
}

/// `(-1 + √(4l² + 4l + 8ε + 1)) / 2`.
pub fn lprime(l: u32, epsilon: f64) -> Result<f64> {
    let l = l as f64;
    let disc = 4.0 * l * l + 4.0 * l + 8.0 * epsilon + 1.0;
    if disc < 0.0 || disc.is_nan() {
        return Err(QesError::NegativeDiscriminant(disc));
    }
    Ok((-1.0 + disc.sqrt()) / 2.0)
}

/// Energy of the degree-`n` quasi-exact level, from `c1 + n·b2 = 0`.
pub fn closed_form_energy(model: &ModelParameters, n: usize) -> f64 {
    let nf = n as f64;
    match *model {
        ModelParameters::NonPolynomial { alpha, beta, l } => {
            alpha / beta + SQRT_2 * (2.0 * nf + l as f64 + 3.5)
        }
        ModelParameters::ScreenedCoulomb { gamma, delta, l, .. } => {
            let q = (delta + gamma) / (nf + l as f64 + 2.0);
            -0.5 * q * q
        }
        ModelParameters::SingularPower { lambda, xi, tau, .. } => {
            let d = nf + 1.0 + xi / (2.0 * tau).sqrt();
            -lambda * lambda / (2.0 * d * d)
        }
        ModelParameters::SingularAnharmonic {
            omega, sigma, chi, ..
        } => (2.0 * omega).sqrt() * (2.0 * nf + 2.0 + sigma / (2.0 * chi).sqrt()),
    }
}

/// `√(-2E)`, the exponential decay rate of a bound Coulomb-like tail.
pub(crate) fn decay_rate(energy: f64) -> Result<f64> {
    if energy < 0.0 {
        Ok((-2.0 * energy).sqrt())
    } else {
        Err(QesError::NonNegativeEnergy { energy })
    }
}

/// Coefficients of the basic equation obtained from the radial equation at
/// energy `energy` after the model's change of variable and gauge factor.
pub fn coefficient_map(model: &ModelParameters, energy: f64) -> Result<BasicEquationCoefficients> {
    let e = energy;
    Ok(match *model {
        ModelParameters::NonPolynomial { alpha, beta, l } => {
            // z = β r², ψ = (1 + z) r^{l+1} e^{-r²/√2} φ(z)
            let l = l as f64;
            BasicEquationCoefficients {
                a: -1.0,
                b0: l + 1.5,
                b1: l + 3.5 - SQRT_2 / beta,
                b2: -SQRT_2 / beta,
                c0: (e - SQRT_2 * (l + 1.5)) / (2.0 * beta) + l + 1.5,
                c1: (e - alpha / beta) / (2.0 * beta) - (l + 3.5) / (beta * SQRT_2),
            }
        }
        ModelParameters::ScreenedCoulomb {
            gamma,
            delta,
            kappa,
            l,
        } => {
            // z = r, ψ = (r + κ) r^{l+1} e^{-k r} φ(r)
            let k = decay_rate(e)?;
            let l = l as f64;
            BasicEquationCoefficients {
                a: -kappa,
                b0: 2.0 * (l + 1.0) * kappa,
                b1: 2.0 * (-k * kappa + l + 2.0),
                b2: -2.0 * k,
                c0: -2.0 * (kappa * (l + 1.0) * k + kappa * gamma - l - 1.0),
                c1: 2.0 * (-delta - gamma - k * (l + 2.0)),
            }
        }
        ModelParameters::SingularPower {
            lambda,
            mu,
            xi,
            tau,
            l,
        } => {
            // z = r, ψ = r^{1+ξ/√(2τ)} e^{-(k r + √(2τ)/r)} φ(r)
            let k = decay_rate(e)?;
            let l = l as f64;
            let root = (2.0 * tau).sqrt();
            let s = xi / root;
            BasicEquationCoefficients {
                a: 0.0,
                b0: 2.0 * root,
                b1: 2.0 * (1.0 + s),
                b2: -2.0 * k,
                c0: -2.0 * mu - l * (l + 1.0) - 2.0 * root * k + s + xi * xi / (2.0 * tau),
                c1: -2.0 * (k * (1.0 + s) + lambda),
            }
        }
        ModelParameters::SingularAnharmonic {
            omega,
            epsilon,
            sigma,
            chi,
            l,
        } => {
            // z = r², ψ = r^{3/2+σ/√(2χ)} e^{-(√(ω/2) r² + √(χ/2)/r²)} φ(r²)
            let lp = EffectiveAngularMomentum::new(l, epsilon)?;
            let q = sigma / (2.0 * chi).sqrt();
            BasicEquationCoefficients {
                a: 0.0,
                b0: (2.0 * chi).sqrt(),
                b1: 2.0 + q,
                b2: -(2.0 * omega).sqrt(),
                c0: -0.25
                    * (lp.casimir() + 2.0 * (4.0 * omega * chi).sqrt()
                        - sigma * sigma / (2.0 * chi)
                        - 2.0 * q
                        - 0.75),
                c1: e / 2.0 - (omega / 2.0).sqrt() * (2.0 + q),
            }
        }
    })
}
