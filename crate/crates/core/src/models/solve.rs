use crate::coefficients::BasicEquationCoefficients;
use crate::error::{QesError, Result};
use crate::spectral::{allowed_c0_values, expansion_coefficients, spectral_matrix};

use super::{closed_form_energy, coefficient_map, ModelKind, ModelParameters};

/// Name and value of the parameter fixed by the determinant condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunedValue {
    pub name: &'static str,
    pub value: f64,
}

/// How well a solution satisfies the algebraic conditions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    /// `|det M| / ‖M‖_∞^{n+1}`
    pub det_residual: f64,
    /// Last row of the recursion, see [`crate::spectral::Expansion`].
    pub terminal_residual: f64,
    /// Largest coefficient of `H φ`.
    pub operator_residual: f64,
}

impl Diagnostics {
    pub const DET_TOL: f64 = 1e-10;
    pub const TERMINAL_TOL: f64 = 1e-10;
    pub const OPERATOR_TOL: f64 = 1e-12;

    /// All three residuals within tolerance, the last two relative to `max|p_m|`.
    pub fn passes(&self, p: &[f64]) -> bool {
        let pmax = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        self.det_residual <= Self::DET_TOL
            && self.terminal_residual.abs() <= Self::TERMINAL_TOL * pmax
            && self.operator_residual <= Self::OPERATOR_TOL * pmax
    }
}

/// One quasi-exact eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct QesSolution {
    /// Full parameter set, tuned parameter included.
    pub params: ModelParameters,
    pub n: usize,
    pub energy: f64,
    pub tuned: TunedValue,
    /// Polynomial coefficients with `p_0 = 1`.
    pub p: Vec<f64>,
    pub diagnostics: Diagnostics,
}

impl QesSolution {
    pub fn kind(&self) -> ModelKind {
        self.params.kind()
    }

    pub fn coefficients(&self) -> Result<BasicEquationCoefficients> {
        coefficient_map(&self.params, self.energy)
    }

    /// Builds the solution at fully specified parameters, computing the
    /// energy, the polynomial and the diagnostics.
    pub fn at(params: ModelParameters, n: usize) -> Result<Self> {
        let energy = closed_form_energy(&params, n);
        let coeffs = coefficient_map(&params, energy)?;
        let expansion = expansion_coefficients(&coeffs, n)?;
        let diagnostics = Diagnostics {
            det_residual: spectral_matrix(&coeffs, n).relative_determinant(),
            terminal_residual: expansion.terminal_residual,
            operator_residual: coeffs.operator_residual(&expansion.p),
        };
        Ok(Self {
            params,
            n,
            energy,
            tuned: TunedValue {
                name: params.kind().tuned_parameter(),
                value: params.tuned(),
            },
            p: expansion.p,
            diagnostics,
        })
    }
}

/// Knobs for [`solve_tuned_parameter`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Upper end of the κ scan for the screened Coulomb model. Defaults to
    /// `10³ (l+2) / |γ+δ|`.
    pub kappa_upper: Option<f64>,
    pub scan_points: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            kappa_upper: None,
            scan_points: 10_000,
        }
    }
}

/// Solves the determinant condition for the model's tuned parameter with all
/// other parameters taken from `template` (its tuned value is ignored).
///
/// Returns every admissible root, ascending by tuned value.
pub fn solve_tuned_parameter(
    template: &ModelParameters,
    n: usize,
    options: &SolveOptions,
) -> Result<Vec<QesSolution>> {
    template.validate_fixed()?;
    let kind = template.kind();
    let tuned_values = match kind {
        ModelKind::ScreenedCoulomb => scan_kappa(template, n, options)?,
        _ => linear_tuned_roots(template, n)?,
    };

    let mut solutions = Vec::with_capacity(tuned_values.len());
    for t in tuned_values {
        let params = template.with_tuned(t);
        if params.validate().is_err() {
            continue;
        }
        solutions.push(QesSolution::at(params, n)?);
    }
    if solutions.is_empty() {
        return Err(QesError::NoAdmissibleRoot {
            parameter: kind.tuned_parameter(),
        });
    }
    solutions.sort_by(|a, b| a.tuned.value.total_cmp(&b.tuned.value));
    Ok(solutions)
}

/// Rate at which `c0` moves with the tuned parameter, for the models where
/// the tuned parameter enters `c0` alone.
fn c0_slope(template: &ModelParameters) -> f64 {
    match *template {
        // α shifts E by Δ/β, and c0 carries E/(2β)
        ModelParameters::NonPolynomial { beta, .. } => 1.0 / (2.0 * beta * beta),
        ModelParameters::SingularPower { .. } => -2.0,
        // ε enters through l'(l'+1) = l(l+1) + 2ε inside -¼(...)
        ModelParameters::SingularAnharmonic { .. } => -0.5,
        ModelParameters::ScreenedCoulomb { .. } => unreachable!("κ enters a, b0, b1 and c0"),
    }
}

fn linear_tuned_roots(template: &ModelParameters, n: usize) -> Result<Vec<f64>> {
    let base_params = template.with_tuned(0.0);
    let base = coefficient_map(&base_params, closed_form_energy(&base_params, n))?;
    let allowed = allowed_c0_values(base.a, base.b0, base.b1, base.b2, n);
    let slope = c0_slope(template);
    Ok(allowed
        .values
        .iter()
        .map(|c0| (c0 - base.c0) / slope)
        .collect())
}

fn kappa_determinant(template: &ModelParameters, n: usize, energy: f64, kappa: f64) -> Result<f64> {
    let coeffs = coefficient_map(&template.with_tuned(kappa), energy)?;
    Ok(spectral_matrix(&coeffs, n).determinant())
}

fn scan_kappa(template: &ModelParameters, n: usize, options: &SolveOptions) -> Result<Vec<f64>> {
    let ModelParameters::ScreenedCoulomb { gamma, delta, l, .. } = *template else {
        unreachable!()
    };
    let energy = closed_form_energy(template, n);
    let upper = options
        .kappa_upper
        .unwrap_or(1e3 * (l as f64 + 2.0) / (gamma + delta).abs());
    if !(upper > 0.0 && upper.is_finite()) {
        return Err(QesError::InvalidParameters(format!(
            "kappa bracket upper end must be positive, got {upper}"
        )));
    }
    let points = options.scan_points.max(2);
    let f = |k: f64| kappa_determinant(template, n, energy, k);

    let mut roots = Vec::new();
    let mut prev_k = upper / points as f64;
    let mut prev_f = f(prev_k)?;
    if prev_f == 0.0 {
        roots.push(prev_k);
    }
    for i in 2..=points {
        let k = upper * i as f64 / points as f64;
        let fk = f(k)?;
        if fk == 0.0 {
            roots.push(k);
        } else if prev_f != 0.0 && (prev_f < 0.0) != (fk < 0.0) {
            roots.push(bisect(&f, prev_k, k, prev_f)?);
        }
        prev_k = k;
        prev_f = fk;
    }

    if roots.is_empty() {
        // roots beyond the bracket are reported separately from "none at all"
        let mut k = upper;
        for _ in 0..10 {
            k *= 2.0;
            let fk = f(k)?;
            if fk == 0.0 || (fk < 0.0) != (prev_f < 0.0) {
                return Err(QesError::BracketExhausted { upper });
            }
        }
        return Err(QesError::NoAdmissibleRoot { parameter: "kappa" });
    }
    Ok(roots)
}

fn bisect(f: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::SQRT_2;

    #[test]
    fn screened_coulomb_anchor() {
        let t = ModelParameters::ScreenedCoulomb {
            gamma: -0.5,
            delta: -0.9,
            kappa: f64::NAN,
            l: 0,
        };
        let sols = solve_tuned_parameter(&t, 0, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_relative_eq!(sols[0].tuned.value, 5.0, max_relative = 1e-12);
        assert_relative_eq!(sols[0].energy, -0.245, max_relative = 1e-12);
        assert_eq!(sols[0].tuned.name, "kappa");
        assert_eq!(sols[0].p, vec![1.0]);
    }

    #[test]
    fn singular_power_anchor() {
        let t = ModelParameters::SingularPower {
            lambda: -1.0,
            mu: f64::NAN,
            xi: 1.0,
            tau: 0.5,
            l: 0,
        };
        let sols = solve_tuned_parameter(&t, 0, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_relative_eq!(sols[0].tuned.value, 0.5, max_relative = 1e-12);
        assert_eq!(sols[0].energy, -0.125);
    }

    #[test]
    fn singular_anharmonic_anchor() {
        let t = ModelParameters::SingularAnharmonic {
            omega: 0.5,
            epsilon: f64::NAN,
            sigma: 1.0,
            chi: 0.5,
            l: 0,
        };
        let sols = solve_tuned_parameter(&t, 0, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_relative_eq!(sols[0].tuned.value, 0.875, max_relative = 1e-12);
        assert_eq!(sols[0].energy, 3.0);
    }

    #[test]
    fn non_polynomial_anchor() {
        let t = ModelParameters::NonPolynomial {
            alpha: f64::NAN,
            beta: 1.0,
            l: 0,
        };
        let sols = solve_tuned_parameter(&t, 0, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_relative_eq!(sols[0].tuned.value, -(3.0 + 2.0 * SQRT_2), max_relative = 1e-12);
        assert_relative_eq!(sols[0].energy, 3.0 / SQRT_2 - 3.0, max_relative = 1e-12);
    }

    #[test]
    fn screened_coulomb_invalid_template() {
        let t = ModelParameters::ScreenedCoulomb {
            gamma: 0.5,
            delta: -0.2,
            kappa: 1.0,
            l: 0,
        };
        assert!(matches!(
            solve_tuned_parameter(&t, 0, &SolveOptions::default()),
            Err(QesError::InvalidParameters(_))
        ));
    }

    #[test]
    fn screened_coulomb_bracket_too_small() {
        // the n=0 root sits at κ = 5
        let t = ModelParameters::ScreenedCoulomb {
            gamma: -0.5,
            delta: -0.9,
            kappa: 1.0,
            l: 0,
        };
        let opts = SolveOptions {
            kappa_upper: Some(2.0),
            scan_points: 100,
        };
        assert_eq!(
            solve_tuned_parameter(&t, 0, &opts),
            Err(QesError::BracketExhausted { upper: 2.0 })
        );
    }

    #[test]
    fn screened_coulomb_no_positive_root() {
        // n=0 root κ = (l+1)/((l+1)k + γ) is negative when γ < -k(l+1)
        let t = ModelParameters::ScreenedCoulomb {
            gamma: -2.0,
            delta: 1.0,
            kappa: 1.0,
            l: 0,
        };
        assert_eq!(
            solve_tuned_parameter(&t, 0, &SolveOptions::default()),
            Err(QesError::NoAdmissibleRoot { parameter: "kappa" })
        );
    }

    #[test]
    fn every_root_passes_diagnostics() {
        let templates = [
            ModelParameters::NonPolynomial { alpha: 0.0, beta: 1.0, l: 0 },
            ModelParameters::ScreenedCoulomb { gamma: -0.5, delta: -0.9, kappa: 1.0, l: 0 },
            ModelParameters::SingularPower { lambda: -1.0, mu: 0.0, xi: 1.0, tau: 0.5, l: 0 },
            ModelParameters::SingularAnharmonic { omega: 0.5, epsilon: 0.0, sigma: 1.0, chi: 0.5, l: 0 },
        ];
        for t in &templates {
            for n in 0..=3 {
                let Ok(sols) = solve_tuned_parameter(t, n, &SolveOptions::default()) else {
                    continue;
                };
                for s in &sols {
                    assert!(s.diagnostics.passes(&s.p), "{:?} n={n}: {:?}", t.kind(), s.diagnostics);
                    assert_eq!(s.p.len(), n + 1);
                }
                assert!(sols.windows(2).all(|w| w[0].tuned.value <= w[1].tuned.value));
            }
        }
    }
}
