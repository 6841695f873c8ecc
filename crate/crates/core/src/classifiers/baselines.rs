//! Reference classifiers and the exact affine-hull distance used to check PRC.

use crate::classifiers::prc::argmin;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg::{dist, norm, solve_least_squares, Matrix};

/// Distance from `x` to the linear span of the class columns (LRC).
pub fn lrc_distance(x: &[f64], class_matrix: &Matrix) -> Result<f64> {
    let beta = solve_least_squares(class_matrix, x)?;
    let fit = class_matrix.mul_vec(&beta)?;
    Ok(dist(x, &fit))
}

/// Returns the LRC label and the per-class span distances.
pub fn lrc_classify(x: &[f64], train: &Dataset) -> Result<(usize, Vec<f64>)> {
    train.check_dim(x.len())?;
    let distances = train
        .classes()
        .iter()
        .map(|m| lrc_distance(x, m))
        .collect::<Result<Vec<_>>>()?;
    Ok((argmin(&distances), distances))
}

/// Label of the single nearest training sample. Ties go to the lowest class id, then the
/// lowest sample index.
pub fn nn_classify(x: &[f64], train: &Dataset) -> Result<usize> {
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    train.check_dim(x.len())?;
    let mut best = (0, f64::INFINITY);
    for (c, m) in train.classes().iter().enumerate() {
        let cols = m.cols();
        let data = m.as_slice();
        for j in 0..cols {
            let d2: f64 = x
                .iter()
                .enumerate()
                .map(|(i, xi)| {
                    let diff = xi - data[i * cols + j];
                    diff * diff
                })
                .sum();
            if d2 < best.1 {
                best = (c, d2);
            }
        }
    }
    Ok(best.0)
}

/// Exact Euclidean distance from `x` to the affine hull of the class columns.
///
/// With `D = [x_2 - x_1, ..., x_N - x_1]` and `α` the minimum-norm least-squares solution of
/// `D α ≈ x - x_1`, the distance is `‖x - x_1 - D α‖`.
pub fn affine_oracle_distance(x: &[f64], class_samples: &Matrix) -> Result<f64> {
    let q = class_samples.rows();
    if x.len() != q {
        return Err(Error::DimensionMismatch {
            expected: q,
            found: x.len(),
        });
    }
    let base = class_samples.column(0);
    let rel: Vec<f64> = x.iter().zip(base.iter()).map(|(a, b)| a - b).collect();
    let n = class_samples.cols();
    if n == 1 {
        return Ok(norm(&rel));
    }
    let mut diffs = Matrix::zeros(q, n - 1);
    for i in 0..q {
        for j in 1..n {
            diffs[(i, j - 1)] = class_samples[(i, j)] - base[i];
        }
    }
    let alpha = solve_least_squares(&diffs, &rel)?;
    let fit = diffs.mul_vec(&alpha)?;
    Ok(dist(&rel, &fit))
}
