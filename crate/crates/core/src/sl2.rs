//! The hidden sl(2) algebra.
//!
//! The three first-order operators
//!
//! ```text
//! J⁺ = -z² d/dz + n z      J⁰ = z d/dz - n/2      J⁻ = d/dz
//! ```
//!
//! close under commutation (`[J⁺, J⁻] = 2J⁰`, `[J⁰, J^±] = ±J^±`) and leave
//! the space of polynomials of degree at most `n` invariant. Any operator
//! quadratic in them therefore acts on that space as an `(n+1)×(n+1)` matrix.
//!
//! Matrices here act on coefficient vectors `(p_0, …, p_n)` of
//! `φ = Σ p_m z^m`: column `m` is the image of `z^m`.

use nalgebra::DMatrix;

use crate::coefficients::BasicEquationCoefficients;
use crate::error::{QesError, Result};

/// Matrices of `J⁺`, `J⁰`, `J⁻` on the degree-`n` polynomial space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrices {
    pub n: usize,
    pub raising: DMatrix<f64>,
    pub weight: DMatrix<f64>,
    pub lowering: DMatrix<f64>,
}

impl OperatorMatrices {
    /// `A·B - B·A`.
    pub fn commutator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
        a * b - b * a
    }
}

/// Builds the generator matrices from their action on monomials:
/// `J⁺ z^m = (n-m) z^{m+1}`, `J⁰ z^m = (m - n/2) z^m`, `J⁻ z^m = m z^{m-1}`.
pub fn sl2_action_matrices(n: usize) -> OperatorMatrices {
    let dim = n + 1;
    let nf = n as f64;
    let mut raising = DMatrix::zeros(dim, dim);
    let mut weight = DMatrix::zeros(dim, dim);
    let mut lowering = DMatrix::zeros(dim, dim);
    for m in 0..dim {
        let mf = m as f64;
        if m < n {
            raising[(m + 1, m)] = nf - mf;
        }
        weight[(m, m)] = mf - nf / 2.0;
        if m > 0 {
            lowering[(m - 1, m)] = mf;
        }
    }
    OperatorMatrices {
        n,
        raising,
        weight,
        lowering,
    }
}

/// `J⁺` applied to an arbitrary polynomial (no truncation at degree `n`).
pub fn apply_raising(n: usize, p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + 1];
    for (m, &pm) in p.iter().enumerate() {
        out[m + 1] += (n as f64 - m as f64) * pm;
    }
    out
}

/// `J⁰` applied to an arbitrary polynomial.
pub fn apply_weight(n: usize, p: &[f64]) -> Vec<f64> {
    p.iter()
        .enumerate()
        .map(|(m, &pm)| (m as f64 - n as f64 / 2.0) * pm)
        .collect()
}

/// `J⁻` applied to an arbitrary polynomial.
pub fn apply_lowering(p: &[f64]) -> Vec<f64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(m, &pm)| m as f64 * pm)
        .collect()
}

fn axpy(acc: &mut Vec<f64>, scale: f64, x: &[f64]) {
    if acc.len() < x.len() {
        acc.resize(x.len(), 0.0);
    }
    for (a, v) in acc.iter_mut().zip(x) {
        *a += scale * v;
    }
}

/// The basic operator written in the enveloping algebra:
///
/// ```text
/// H = c_{+-} J⁺J⁻ + c_{0-} J⁰J⁻ + c_+ J⁺ + c_0 J⁰ + c_- J⁻ + c
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2Decomposition {
    pub n: usize,
    pub raising_lowering: f64,
    pub weight_lowering: f64,
    pub raising: f64,
    pub weight: f64,
    pub lowering: f64,
    pub scalar: f64,
}

impl Sl2Decomposition {
    /// Applies the reconstructed operator to `φ = Σ p_m z^m` through the
    /// differential action of the generators. The output has `p.len() + 1`
    /// coefficients.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        let n = self.n;
        let low = apply_lowering(p);
        let mut out = vec![0.0; p.len() + 1];
        axpy(&mut out, self.raising_lowering, &apply_raising(n, &low));
        axpy(&mut out, self.weight_lowering, &apply_weight(n, &low));
        axpy(&mut out, self.raising, &apply_raising(n, p));
        axpy(&mut out, self.weight, &apply_weight(n, p));
        axpy(&mut out, self.lowering, &low);
        axpy(&mut out, self.scalar, p);
        out.truncate(p.len() + 1);
        out
    }

    /// The same operator as an `(n+1)×(n+1)` matrix assembled from
    /// [`sl2_action_matrices`].
    pub fn matrix(&self) -> DMatrix<f64> {
        let j = sl2_action_matrices(self.n);
        let dim = self.n + 1;
        &j.raising * &j.lowering * self.raising_lowering
            + &j.weight * &j.lowering * self.weight_lowering
            + &j.raising * self.raising
            + &j.weight * self.weight
            + &j.lowering * self.lowering
            + DMatrix::identity(dim, dim) * self.scalar
    }
}

/// Rewrites the basic operator in terms of the sl(2) generators. Only
/// possible when `c1 = -n·b2`.
pub fn sl2_decompose(coeffs: &BasicEquationCoefficients, n: usize) -> Result<Sl2Decomposition> {
    if !coeffs.is_quasi_exact(n) {
        return Err(QesError::ConstraintViolated {
            n,
            residual: coeffs.quasi_exactness_residual(n),
        });
    }
    let nf = n as f64;
    Ok(Sl2Decomposition {
        n,
        raising_lowering: -1.0,
        weight_lowering: -coeffs.a,
        raising: -coeffs.b2,
        weight: nf + coeffs.b1,
        lowering: coeffs.b0 - nf * coeffs.a / 2.0,
        scalar: nf * nf / 2.0 + nf * coeffs.b1 / 2.0 + coeffs.c0,
    })
}

/// Matrix of the basic operator on the degree-`n` space, column `m` being the
/// image of `z^m`. The `z^{n+1}` component of the last column is dropped; it
/// vanishes exactly under quasi-exactness.
pub fn basic_operator_matrix(coeffs: &BasicEquationCoefficients, n: usize) -> DMatrix<f64> {
    let dim = n + 1;
    let mut h = DMatrix::zeros(dim, dim);
    for m in 0..dim {
        let [lower, diag, upper] = coeffs.monomial_image(m);
        if m > 0 {
            h[(m - 1, m)] = lower;
        }
        h[(m, m)] = diag;
        if m < n {
            h[(m + 1, m)] = upper;
        }
    }
    h
}
