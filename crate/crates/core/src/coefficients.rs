//! The shared second-order equation
//!
//! ```text
//! z(z - a) φ'' + (b2 z² + b1 z + b0) φ' + (c1 z + c0) φ = 0
//! ```
//!
//! to which every supported radial problem reduces after its change of
//! variable and gauge factor.

use crate::error::{QesError, Result};

/// The six real constants of the basic equation, in the transformed variable `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasicEquationCoefficients {
    pub a: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub c0: f64,
    pub c1: f64,
}

impl BasicEquationCoefficients {
    pub fn new(a: f64, b0: f64, b1: f64, b2: f64, c0: f64, c1: f64) -> Self {
        Self { a, b0, b1, b2, c0, c1 }
    }

    /// `c1 + n·b2`; zero exactly when the operator maps degree-`n`
    /// polynomials into themselves.
    pub fn quasi_exactness_residual(&self, n: usize) -> f64 {
        self.c1 + n as f64 * self.b2
    }

    /// Whether the quasi-exactness constraint holds for degree `n` within
    /// `1e-10·max(|c1|, |n·b2|, 1)`.
    pub fn is_quasi_exact(&self, n: usize) -> bool {
        let nb2 = n as f64 * self.b2;
        let tol = 1e-10 * self.c1.abs().max(nb2.abs()).max(1.0);
        self.quasi_exactness_residual(n).abs() <= tol
    }

    /// `b0 - k·a`, the factor multiplying `p_{k+1}` in row `k` of the
    /// recursion.
    pub fn recursion_denominator(&self, k: usize) -> f64 {
        self.b0 - k as f64 * self.a
    }

    /// Fails with [`QesError::VanishingDenominator`] if `b0 - k·a` is zero
    /// (to rounding) for some `k < n`.
    pub fn check_denominators(&self, n: usize) -> Result<()> {
        for k in 0..n {
            let d = self.recursion_denominator(k);
            let scale = self.b0.abs().max((k as f64 * self.a).abs());
            if d == 0.0 || d.abs() <= 4.0 * f64::EPSILON * scale {
                return Err(QesError::VanishingDenominator { k });
            }
        }
        Ok(())
    }

    /// Action on the monomial `z^m`, as the coefficients of
    /// `z^{m-1}`, `z^m` and `z^{m+1}` in that order.
    pub fn monomial_image(&self, m: usize) -> [f64; 3] {
        let mf = m as f64;
        let lower = mf * (self.b0 - self.a * (mf - 1.0));
        let diag = self.c0 + mf * self.b1 + mf * (mf - 1.0);
        let upper = self.c1 + mf * self.b2;
        [lower, diag, upper]
    }

    /// Expands `H φ` for `φ = Σ p_m z^m`. The result has one more coefficient
    /// than `p` (the `z^{len}` term vanishes only under quasi-exactness).
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        if p.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0.0; p.len() + 1];
        for (m, &pm) in p.iter().enumerate() {
            if pm == 0.0 {
                continue;
            }
            let [lower, diag, upper] = self.monomial_image(m);
            if m > 0 {
                out[m - 1] += lower * pm;
            }
            out[m] += diag * pm;
            out[m + 1] += upper * pm;
        }
        out
    }

    /// Largest absolute coefficient of `H φ`. Zero (to rounding) exactly when
    /// `p` solves the basic equation.
    pub fn operator_residual(&self, p: &[f64]) -> f64 {
        self.apply(p).iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_exactness_residual_examples() {
        let c = BasicEquationCoefficients::new(0.0, 1.0, 0.0, -1.0, 0.0, 0.0);
        assert_eq!(c.quasi_exactness_residual(0), 0.0);
        let c = BasicEquationCoefficients::new(0.0, 1.0, 0.0, -1.0, 0.0, 2.0);
        assert_eq!(c.quasi_exactness_residual(2), 0.0);
        assert!(c.is_quasi_exact(2));
        assert!(!c.is_quasi_exact(1));
    }

    #[test]
    fn screened_coulomb_anchor_residual_is_zero() {
        // c1 = 2(-δ - γ - √(-2E)(l+2)) with γ=-0.5, δ=-0.9, l=0, E=-0.245
        let k = (-2.0f64 * -0.245).sqrt();
        let c1 = 2.0 * (0.9 + 0.5 - k * 2.0);
        let c = BasicEquationCoefficients::new(0.0, 1.0, 0.0, -1.4, 0.0, c1);
        assert!(c.quasi_exactness_residual(0).abs() < 1e-15);
    }

    #[test]
    fn operator_residual_of_zero_function() {
        let c = BasicEquationCoefficients::new(0.3, 1.0, 2.0, -1.0, 0.5, 1.0);
        assert_eq!(c.operator_residual(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(c.operator_residual(&[]), 0.0);
    }

    #[test]
    fn operator_residual_of_degree_one_solution() {
        let s = 2f64.sqrt();
        let c = BasicEquationCoefficients::new(0.0, 1.0, 2.0, -1.0, -1.0 + s, 1.0);
        let p = [1.0, 1.0 - s];
        assert!(c.operator_residual(&p) <= 1e-12);
    }

    #[test]
    fn operator_residual_off_root() {
        let c = BasicEquationCoefficients::new(0.0, 1.0, 2.0, -1.0, 0.0, 1.0);
        assert_eq!(c.apply(&[1.0, 0.0]), vec![0.0, 1.0, 0.0]);
        assert_eq!(c.operator_residual(&[1.0, 0.0]), 1.0);
    }

    #[test]
    fn vanishing_denominator_detected() {
        // b0 - k a = 0 at k = 2
        let c = BasicEquationCoefficients::new(1.0, 2.0, 0.0, 0.0, 0.0, 0.0);
        assert!(c.check_denominators(2).is_ok());
        assert_eq!(
            c.check_denominators(3),
            Err(QesError::VanishingDenominator { k: 2 })
        );
    }
}
