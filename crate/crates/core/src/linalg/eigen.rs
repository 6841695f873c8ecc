//! Cyclic Jacobi eigensolver for dense real symmetric matrices.
//!
//! Each sweep visits every off-diagonal pair `(p, q)` in row order and applies the plane
//! rotation that annihilates `A[p][q]`. Sweeps stop once the off-diagonal Frobenius norm
//! falls below `OFF_DIAG_TOL * ‖A‖_F`, or after `MAX_SWEEPS`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Relative tolerance used to accept an input as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to ‖A‖_F.
pub const OFF_DIAG_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition `A = Q diag(λ) Qᵀ`.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Unit-norm eigenvectors stored as columns, in the same order as `eigenvalues`.
    /// Each column's largest-magnitude entry is positive.
    pub eigenvectors: Matrix,
}

impl EigenResult {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k).into_inner()
    }
}

pub fn symmetric_eig(a: &Matrix) -> Result<EigenResult> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let deviation = a.asymmetry();
    if deviation > SYMMETRY_TOL * (1.0 + a.max_abs()) {
        return Err(Error::Asymmetric { deviation });
    }

    let n = a.rows();
    // Work on the exactly symmetric part.
    let mut w = a.clone();
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (w[(i, j)] + w[(j, i)]);
            w[(i, j)] = m;
            w[(j, i)] = m;
        }
    }
    let mut v = Matrix::identity(n);
    let threshold = OFF_DIAG_TOL * w.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&w) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (w[(q, q)] - w[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut w, &mut v, p, q, c, s);
                w[(p, q)] = 0.0;
                w[(q, p)] = 0.0;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(j, j)].total_cmp(&w[(i, i)]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| w[(i, i)]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let mut col = v.column(src).into_inner();
        let nrm = crate::linalg::norm(&col);
        col.iter_mut().for_each(|x| *x /= nrm);
        canonical_sign(&mut col);
        eigenvectors.set_column(k, &col);
    }
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Flips `v` so that its largest-magnitude entry (first one on ties) is positive.
pub fn canonical_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// `A <- Jᵀ A J`, `V <- V J` for the rotation in the (p, q) plane.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
