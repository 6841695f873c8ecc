use crate::error::{Error, Result};
use crate::linalg::{canonical_sign, dot, norm, symmetric_eig, Matrix, Vector};

/// Principal components of a set of column samples.
#[derive(Debug, Clone)]
pub struct Pca {
    pub mean: Vector,
    /// q×d, orthonormal columns ordered by descending explained variance.
    pub basis: Matrix,
    /// Sample-covariance eigenvalue (divisor `L - 1`) for each basis column.
    pub explained_variance: Vec<f64>,
}

impl Pca {
    /// `basisᵀ (x - mean)`
    pub fn transform(&self, x: &[f64]) -> Result<Vector> {
        if x.len() != self.mean.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.dim(),
                found: x.len(),
            });
        }
        let centered: Vec<f64> = x.iter().zip(self.mean.iter()).map(|(a, m)| a - m).collect();
        self.basis.tr_mul_vec(&centered)
    }
}

/// Fits a `d`-component PCA to the columns of `samples` (q×L).
///
/// When there are fewer samples than features the decomposition goes through the L×L Gram
/// matrix of the centered samples instead of the q×q covariance.
pub fn pca_fit(samples: &Matrix, d: usize) -> Result<Pca> {
    let q = samples.rows();
    let l = samples.cols();
    if d == 0 || d > q.min(l) {
        return Err(Error::BadDimension(format!(
            "pca dimension {d} outside 1..={}",
            q.min(l)
        )));
    }
    let mean: Vec<f64> = (0..q)
        .map(|i| samples.row(i).iter().sum::<f64>() / l as f64)
        .collect();
    let mut centered = samples.clone();
    for i in 0..q {
        for j in 0..l {
            centered[(i, j)] -= mean[i];
        }
    }
    let divisor = (l.max(2) - 1) as f64;

    let (basis, explained_variance) = if l < q {
        gram_route(&centered, d, divisor)?
    } else {
        let mut cov = centered.transpose().gram();
        cov.scale(1.0 / divisor);
        let eig = symmetric_eig(&cov)?;
        let mut basis = Matrix::zeros(q, d);
        for k in 0..d {
            basis.set_column(k, &eig.eigenvector(k));
        }
        (basis, eig.eigenvalues[..d].to_vec())
    };
    Ok(Pca {
        mean: Vector::new(mean),
        basis,
        explained_variance,
    })
}

fn gram_route(centered: &Matrix, d: usize, divisor: f64) -> Result<(Matrix, Vec<f64>)> {
    let q = centered.rows();
    let eig = symmetric_eig(&centered.gram())?;
    let top = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let cutoff = 1e-12 * top;

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut variances = Vec::with_capacity(d);
    for k in 0..d {
        let mu = eig.eigenvalues[k];
        if mu > cutoff && mu > 0.0 {
            let mut col = centered.mul_vec(&eig.eigenvector(k))?.into_inner();
            let s = mu.sqrt();
            col.iter_mut().for_each(|x| *x /= s);
            canonical_sign(&mut col);
            columns.push(col);
            variances.push(mu / divisor);
        } else {
            break;
        }
    }
    // Zero-variance directions: complete the basis with orthonormalized unit vectors.
    let mut axis = 0;
    while columns.len() < d {
        let mut e = vec![0.0; q];
        e[axis] = 1.0;
        axis += 1;
        for _ in 0..2 {
            for c in &columns {
                let proj = dot(&e, c);
                e.iter_mut().zip(c).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let n = norm(&e);
        if n > 1e-8 {
            e.iter_mut().for_each(|x| *x /= n);
            columns.push(e);
            variances.push(0.0);
        }
    }
    Ok((Matrix::from_columns(&columns)?, variances))
}
