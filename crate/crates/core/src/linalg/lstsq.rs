use crate::error::{Error, Result};
use crate::linalg::{symmetric_eig, Matrix, Vector};

/// Eigenvalues of `AᵀA` at or below `RANK_TOL * λ_max` are treated as zero.
pub const RANK_TOL: f64 = 1e-12;

/// Minimum-norm least-squares solution of `A β ≈ b`.
///
/// Uses the pseudo-inverse of the normal matrix `AᵀA` built from its eigendecomposition,
/// discarding eigenvalues below the rank threshold, followed by one refinement step on
/// the residual. Both the solve and the correction lie in the row space of `A`, so the
/// result stays minimum-norm.
pub fn solve_least_squares(a: &Matrix, b: &[f64]) -> Result<Vector> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let pinv = NormalPseudoInverse::new(a)?;
    let mut beta = pinv.apply(a, b)?;
    let fitted = a.mul_vec(&beta)?;
    let residual: Vec<f64> = b.iter().zip(fitted.iter()).map(|(x, y)| x - y).collect();
    let correction = pinv.apply(a, &residual)?;
    beta.iter_mut()
        .zip(correction.iter())
        .for_each(|(x, c)| *x += c);
    Ok(beta)
}

/// `(AᵀA)^+` in factored form.
struct NormalPseudoInverse {
    vectors: Matrix,
    inv_values: Vec<f64>,
}

impl NormalPseudoInverse {
    fn new(a: &Matrix) -> Result<Self> {
        let eig = symmetric_eig(&a.gram())?;
        let lambda_max = eig.eigenvalues.first().copied().unwrap_or(0.0);
        let cutoff = RANK_TOL * lambda_max;
        let inv_values = eig
            .eigenvalues
            .iter()
            .map(|&l| {
                if lambda_max > 0.0 && l > cutoff {
                    1.0 / l
                } else {
                    0.0
                }
            })
            .collect();
        Ok(NormalPseudoInverse {
            vectors: eig.eigenvectors,
            inv_values,
        })
    }

    /// `(AᵀA)^+ Aᵀ b`
    fn apply(&self, a: &Matrix, b: &[f64]) -> Result<Vector> {
        let atb = a.tr_mul_vec(b)?;
        let coeffs = self.vectors.tr_mul_vec(&atb)?;
        let scaled: Vec<f64> = coeffs
            .iter()
            .zip(&self.inv_values)
            .map(|(c, s)| c * s)
            .collect();
        self.vectors.mul_vec(&scaled)
    }
}
