use nalgebra::DMatrix;

use crate::error::{QesError, Result};
use crate::spectral::SpectralMatrix;

/// Largest degree accepted by [`cofactor_determinant`].
pub const MAX_COFACTOR_DEGREE: usize = 8;

/// Laplace expansion along the first row. Exponential cost; for
/// cross-checking small matrices only.
pub fn laplace_determinant(m: &DMatrix<f64>) -> f64 {
    let dim = m.nrows();
    match dim {
        0 => 1.0,
        1 => m[(0, 0)],
        _ => {
            let mut det = 0.0;
            for j in 0..dim {
                let a = m[(0, j)];
                if a == 0.0 {
                    continue;
                }
                let minor = m.clone().remove_row(0).remove_column(j);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                det += sign * a * laplace_determinant(&minor);
            }
            det
        }
    }
}

/// Determinant of the spectral matrix by brute-force cofactor expansion of its
/// dense form.
pub fn cofactor_determinant(matrix: &SpectralMatrix) -> Result<f64> {
    if matrix.n > MAX_COFACTOR_DEGREE {
        return Err(QesError::DegreeTooLarge(matrix.n));
    }
    Ok(laplace_determinant(&matrix.to_dense()))
}
