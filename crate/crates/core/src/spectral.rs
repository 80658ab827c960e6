//! The determinant condition and the coefficient recursion.
//!
//! Substituting `φ = Σ_{m≤n} p_m z^m` into the basic equation and collecting
//! powers of `z` gives, for `k = 0..=n`,
//!
//! ```text
//! -(n-k+1) b2 · p_{k-1} + (c0 + k(b1+k-1)) · p_k + (k+1)(b0 - k a) · p_{k+1} = 0
//! ```
//!
//! with `p_{-1} = p_{n+1} = 0`. That is a tridiagonal homogeneous system; it
//! has a non-trivial solution only where its determinant vanishes, and the
//! solution is then generated row by row from `p_0 = 1`.

use nalgebra::DMatrix;

use crate::coefficients::BasicEquationCoefficients;
use crate::error::{QesError, Result};

/// The tridiagonal `(n+1)×(n+1)` matrix of the degree-`n` system, stored as
/// three diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMatrix {
    pub n: usize,
    /// `M[k][k] = c0 + k(b1 + k - 1)`
    pub diag: Vec<f64>,
    /// `sub[k-1] = M[k][k-1] = -(n-k+1) b2`
    pub sub: Vec<f64>,
    /// `sup[k] = M[k][k+1] = (k+1)(b0 - k a)`
    pub sup: Vec<f64>,
}

impl SpectralMatrix {
    pub fn new(coeffs: &BasicEquationCoefficients, n: usize) -> Self {
        let nf = n as f64;
        let diag = (0..=n)
            .map(|k| {
                let kf = k as f64;
                coeffs.c0 + kf * (coeffs.b1 + kf - 1.0)
            })
            .collect();
        let sub = (1..=n)
            .map(|k| -(nf - k as f64 + 1.0) * coeffs.b2)
            .collect();
        let sup = (0..n)
            .map(|k| (k as f64 + 1.0) * coeffs.recursion_denominator(k))
            .collect();
        Self { n, diag, sub, sup }
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for k in 0..dim {
            m[(k, k)] = self.diag[k];
            if k > 0 {
                m[(k, k - 1)] = self.sub[k - 1];
            }
            if k < self.n {
                m[(k, k + 1)] = self.sup[k];
            }
        }
        m
    }

    /// Same matrix with `shift` added to every diagonal entry.
    pub fn shifted(&self, shift: f64) -> Self {
        Self {
            n: self.n,
            diag: self.diag.iter().map(|d| d + shift).collect(),
            sub: self.sub.clone(),
            sup: self.sup.clone(),
        }
    }

    /// Determinant by the continuant recurrence
    /// `D_k = M_kk D_{k-1} - M_{k,k-1} M_{k-1,k} D_{k-2}`.
    pub fn determinant(&self) -> f64 {
        self.determinant_and_derivative(0.0).0
    }

    /// Determinant of `M + shift·I` together with its derivative in `shift`.
    pub fn determinant_and_derivative(&self, shift: f64) -> (f64, f64) {
        let (mut d_prev, mut d) = (1.0, self.diag[0] + shift);
        let (mut dd_prev, mut dd) = (0.0, 1.0);
        for k in 1..self.dim() {
            let t = self.diag[k] + shift;
            let s = self.sub[k - 1] * self.sup[k - 1];
            let next = t * d - s * d_prev;
            let dnext = d + t * dd - s * dd_prev;
            d_prev = d;
            d = next;
            dd_prev = dd;
            dd = dnext;
        }
        (d, dd)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|k| {
                let mut s = self.diag[k].abs();
                if k > 0 {
                    s += self.sub[k - 1].abs();
                }
                if k < self.n {
                    s += self.sup[k].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// `|det M| / max(‖M‖_∞, 1)^{n+1}`. The floor keeps a matrix whose
    /// entries are all cancellation noise (a 1×1 matrix at its root, say) from
    /// scoring 1; the `k(k-1)` diagonal terms already fix a unit scale.
    pub fn relative_determinant(&self) -> f64 {
        let norm = self.norm_inf().max(1.0);
        (self.determinant() / norm.powi(self.dim() as i32)).abs()
    }
}

pub fn spectral_matrix(coeffs: &BasicEquationCoefficients, n: usize) -> SpectralMatrix {
    SpectralMatrix::new(coeffs, n)
}

/// Real values of `c0` at which the degree-`n` determinant vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct AllowedC0 {
    /// Ascending; repeated roots appear with multiplicity.
    pub values: Vec<f64>,
    /// Number of complex-conjugate eigenvalue pairs that were dropped.
    pub complex_pairs: usize,
}

const REAL_IMAG_TOL: f64 = 1e-6;
const ROOT_DET_TOL: f64 = 1e-10;

/// The `c0` values making the spectral matrix singular: negatives of the real
/// eigenvalues of the matrix with `c0` removed from its diagonal. Each root is
/// polished by Newton steps on the continuant determinant.
pub fn allowed_c0_values(a: f64, b0: f64, b1: f64, b2: f64, n: usize) -> AllowedC0 {
    let base = SpectralMatrix::new(&BasicEquationCoefficients::new(a, b0, b1, b2, 0.0, 0.0), n);
    if n == 0 {
        return AllowedC0 {
            values: vec![0.0],
            complex_pairs: 0,
        };
    }
    let scale = base.norm_inf().max(1.0);
    let eigen = base.to_dense().complex_eigenvalues();

    let mut values = Vec::with_capacity(n + 1);
    let mut complex = 0usize;
    for ev in eigen.iter() {
        if ev.im.abs() > REAL_IMAG_TOL * scale {
            complex += 1;
            continue;
        }
        let c0 = polish_root(&base, -ev.re);
        if base.shifted(c0).relative_determinant() <= ROOT_DET_TOL {
            values.push(c0 + 0.0);
        } else {
            complex += 1;
        }
    }
    values.sort_by(|x, y| x.total_cmp(y));
    AllowedC0 {
        values,
        complex_pairs: complex / 2,
    }
}

fn polish_root(base: &SpectralMatrix, start: f64) -> f64 {
    let mut c = start;
    let mut best = (c, base.determinant_and_derivative(c).0.abs());
    for _ in 0..8 {
        let (d, dd) = base.determinant_and_derivative(c);
        if d == 0.0 || dd == 0.0 || !dd.is_finite() {
            break;
        }
        let next = c - d / dd;
        let next_abs = base.determinant_and_derivative(next).0.abs();
        if next_abs.is_nan() || next_abs >= best.1 {
            break;
        }
        best = (next, next_abs);
        c = next;
    }
    best.0
}

/// Polynomial coefficients `p_0..p_n` (with `p_0 = 1`) and the residual of the
/// row that must vanish for the series to terminate.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub p: Vec<f64>,
    /// `b2·p_{n-1} - (c0 + n(b1+n-1))·p_n`; zero exactly when `c0` is allowed.
    pub terminal_residual: f64,
}

/// Runs the three-term recursion
///
/// ```text
/// p_{k+1} = [ (n-k+1) b2 · p_{k-1} - (c0 + k(b1+k-1)) · p_k ] / ((k+1)(b0 - k a))
/// ```
pub fn expansion_coefficients(coeffs: &BasicEquationCoefficients, n: usize) -> Result<Expansion> {
    coeffs.check_denominators(n)?;
    let nf = n as f64;
    let diag = |k: usize| {
        let kf = k as f64;
        coeffs.c0 + kf * (coeffs.b1 + kf - 1.0)
    };
    let mut p = Vec::with_capacity(n + 1);
    p.push(1.0);
    for k in 0..n {
        let kf = k as f64;
        let prev = if k > 0 { p[k - 1] } else { 0.0 };
        let num = (nf - kf + 1.0) * coeffs.b2 * prev - diag(k) * p[k];
        let den = (kf + 1.0) * coeffs.recursion_denominator(k);
        if den == 0.0 {
            return Err(QesError::VanishingDenominator { k });
        }
        p.push(num / den);
    }
    let prev = if n > 0 { p[n - 1] } else { 0.0 };
    // `+ 0.0` turns a signed zero into +0 for stable output.
    let terminal_residual = coeffs.b2 * prev - diag(n) * p[n] + 0.0;
    Ok(Expansion {
        p,
        terminal_residual,
    })
}
