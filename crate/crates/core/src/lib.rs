//! Quasi-exactly solvable radial Schrödinger problems reduced to one basic
//! equation
//!
//! ```text
//! z(z - a) φ'' + (b₂z² + b₁z + b₀) φ' + (c₁z + c₀) φ = 0
//! ```
//!
//! with polynomial solutions of degree `n` whenever `c₁ = -n b₂` and a
//! tridiagonal determinant vanishes. [`models`] maps four potentials onto this
//! equation and solves for the parameter that makes a level exact;
//! [`oracle`] checks the results numerically.
//!
//! ```
//! use qes_core::models::{solve_tuned_parameter, ModelKind, ModelParameters, SolveOptions};
//!
//! let fixed = |name: &str| match name {
//!     "gamma" => Some(-0.5),
//!     "delta" => Some(-0.9),
//!     _ => None,
//! };
//! let template = ModelParameters::template(ModelKind::ScreenedCoulomb, 0, fixed).unwrap();
//! let roots = solve_tuned_parameter(&template, 0, &SolveOptions::default()).unwrap();
//! assert!((roots[0].tuned.value - 5.0).abs() < 1e-12);
//! assert!((roots[0].energy + 0.245).abs() < 1e-12);
//! ```

pub mod coefficients;
pub mod error;
pub mod models;
pub mod oracle;
pub mod sl2;
pub mod spectral;

pub use coefficients::BasicEquationCoefficients;
pub use error::{QesError, Result};
pub use models::{ModelKind, ModelParameters, QesSolution};
pub use spectral::{spectral_matrix, SpectralMatrix};

// The guide's code blocks run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/basic-equation.md")]
    mod basic_equation {}
    #[doc = include_str!("../../../book/src/spectral-condition.md")]
    mod spectral_condition {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
    #[doc = include_str!("../../../book/src/corrections.md")]
    mod corrections {}
}
