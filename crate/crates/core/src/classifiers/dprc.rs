//! Discriminant PRC.
//!
//! Training measures, for every training sample, the residual between the sample and its
//! projection representation on its own class (leaving the sample out) and on every other
//! class. Outer products of these residuals give the within-class scatter `Jw` and the
//! between-class scatter `Jb`, both normalized by `1/L`. The projection `P` holds the top
//! generalized eigenvectors of `Jb p = λ (Jw + εI) p`, each scaled to unit length. Queries
//! and training samples are mapped by `Pᵀ` and classified with PRC in the reduced space.
//!
//! Columns of `P` are `(Jw + εI)`-orthogonal, not Euclidean-orthogonal. Rescaling `Jb`
//! rescales the eigenvalues only.

use rayon::prelude::*;

use crate::classifiers::prc::{prc_classify, Prediction};
use crate::data::{apply_projection, split::select_columns, Dataset};
use crate::engine::{run_projection, PrcConfig};
use crate::error::{Error, Result};
use crate::linalg::{
    canonical_sign, cholesky, solve_lower, solve_lower_transpose, symmetric_eig, Matrix,
    SYMMETRY_TOL,
};

/// Floor applied to a trace-relative regularizer.
pub const EPSILON_FLOOR: f64 = 1e-12;
pub const DEFAULT_RELATIVE_EPSILON: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct ScatterPair {
    pub jb: Matrix,
    pub jw: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonMode {
    /// `ε = f · trace(Jw) / q`, floored at [`EPSILON_FLOOR`].
    Relative(f64),
    Absolute(f64),
}

impl Default for EpsilonMode {
    fn default() -> Self {
        EpsilonMode::Relative(DEFAULT_RELATIVE_EPSILON)
    }
}

impl EpsilonMode {
    pub fn resolve(&self, jw: &Matrix) -> f64 {
        match *self {
            EpsilonMode::Relative(f) => (f * jw.trace() / jw.rows() as f64).max(EPSILON_FLOOR),
            EpsilonMode::Absolute(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantProjection {
    /// q×d, unit-norm columns.
    pub projection: Matrix,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub epsilon: f64,
}

impl DiscriminantProjection {
    pub fn q(&self) -> usize {
        self.projection.rows()
    }

    pub fn d(&self) -> usize {
        self.projection.cols()
    }

    /// `Pᵀ x`
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self.projection.tr_mul_vec(x)?.into_inner())
    }
}

fn require_min_class_size(train: &Dataset, needed: usize) -> Result<()> {
    for c in 0..train.num_classes() {
        if train.class_size(c) < needed {
            return Err(Error::ClassTooSmall {
                label: train.label(c).to_string(),
                count: train.class_size(c),
                needed,
            });
        }
    }
    Ok(())
}

/// Reconstruction scatters of the training set under PRC.
pub fn compute_scatters(train: &Dataset, config: &PrcConfig) -> Result<ScatterPair> {
    config.validate()?;
    require_min_class_size(train, 2)?;
    let q = train.dim();
    let m = train.num_classes();

    let jobs: Vec<(usize, usize)> = (0..m)
        .flat_map(|c| (0..train.class_size(c)).map(move |i| (c, i)))
        .collect();

    // Per-sample residuals are computed in parallel and reduced in sample order.
    let residuals = jobs
        .par_iter()
        .map(|&(c, i)| -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
            let class = train.class(c);
            let x = class.column(i);
            let others: Vec<usize> = (0..class.cols()).filter(|&j| j != i).collect();
            let own = select_columns(class, &others)?;
            let within = run_projection(&x, &own, config)?;
            let within_res = residual(&x, &within.representation);
            let mut between = Vec::with_capacity(m - 1);
            for j in (0..m).filter(|&j| j != c) {
                let r = run_projection(&x, train.class(j), config)?;
                between.push(residual(&x, &r.representation));
            }
            Ok((within_res, between))
        })
        .collect::<Result<Vec<_>>>()?;

    let scale = 1.0 / train.len() as f64;
    let mut jw = Matrix::zeros(q, q);
    let mut jb = Matrix::zeros(q, q);
    for (within, between) in &residuals {
        jw.add_outer(within, scale);
        for b in between {
            jb.add_outer(b, scale);
        }
    }
    Ok(ScatterPair { jb, jw })
}

fn residual(x: &[f64], p: &[f64]) -> Vec<f64> {
    x.iter().zip(p).map(|(a, b)| a - b).collect()
}

/// Top-`d` solutions of `Jb p = λ (Jw + εI) p` via Cholesky reduction to a standard
/// symmetric problem.
pub fn solve_generalized_eig(
    jb: &Matrix,
    jw: &Matrix,
    epsilon: f64,
    d: usize,
) -> Result<DiscriminantProjection> {
    for m in [jb, jw] {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let deviation = m.asymmetry();
        if deviation > SYMMETRY_TOL * (1.0 + m.max_abs()) {
            return Err(Error::Asymmetric { deviation });
        }
    }
    let q = jb.rows();
    if jw.rows() != q {
        return Err(Error::DimensionMismatch {
            expected: q,
            found: jw.rows(),
        });
    }
    if d == 0 || d > q {
        return Err(Error::BadDimension(format!("d = {d} outside 1..={q}")));
    }
    if !epsilon.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "epsilon must be finite, got {epsilon}"
        )));
    }

    let mut regularized = jw.clone();
    for i in 0..q {
        regularized[(i, i)] += epsilon;
    }
    let l = cholesky(&regularized)?;

    // C = L⁻¹ Jb L⁻ᵀ, built column by column: Y = L⁻¹ Jb, then C = L⁻¹ Yᵀ (Jb symmetric).
    let mut y = Matrix::zeros(q, q);
    for j in 0..q {
        y.set_column(j, &solve_lower(&l, &jb.column(j)));
    }
    let yt = y.transpose();
    let mut c = Matrix::zeros(q, q);
    for j in 0..q {
        c.set_column(j, &solve_lower(&l, &yt.column(j)));
    }
    for i in 0..q {
        for j in 0..i {
            let s = 0.5 * (c[(i, j)] + c[(j, i)]);
            c[(i, j)] = s;
            c[(j, i)] = s;
        }
    }
    let eig = symmetric_eig(&c)?;

    let mut projection = Matrix::zeros(q, d);
    for k in 0..d {
        let mut p = solve_lower_transpose(&l, &eig.eigenvector(k));
        let n = crate::linalg::norm(&p);
        p.iter_mut().for_each(|v| *v /= n);
        canonical_sign(&mut p);
        projection.set_column(k, &p);
    }
    Ok(DiscriminantProjection {
        projection,
        eigenvalues: eig.eigenvalues[..d].to_vec(),
        epsilon,
    })
}

pub fn dprc_fit(
    train: &Dataset,
    d: usize,
    epsilon_mode: EpsilonMode,
    config: &PrcConfig,
) -> Result<DiscriminantProjection> {
    let q = train.dim();
    if d == 0 || d > q {
        return Err(Error::BadDimension(format!("d = {d} outside 1..={q}")));
    }
    require_min_class_size(train, 2)?;
    let scatters = compute_scatters(train, config)?;
    let epsilon = epsilon_mode.resolve(&scatters.jw);
    solve_generalized_eig(&scatters.jb, &scatters.jw, epsilon, d)
}

/// DPRC classifier with the training set already mapped into the reduced space.
#[derive(Debug, Clone)]
pub struct DprcClassifier {
    model: DiscriminantProjection,
    projected: Dataset,
    config: PrcConfig,
}

impl DprcClassifier {
    pub fn new(model: DiscriminantProjection, train: &Dataset, config: PrcConfig) -> Result<Self> {
        let projected = apply_projection(train, &model.projection)?;
        Ok(DprcClassifier {
            model,
            projected,
            config,
        })
    }

    pub fn model(&self) -> &DiscriminantProjection {
        &self.model
    }

    pub fn classify(&self, x: &[f64]) -> Result<Prediction> {
        if x.len() != self.model.q() {
            return Err(Error::DimensionMismatch {
                expected: self.model.q(),
                found: x.len(),
            });
        }
        let w = self.model.project(x)?;
        prc_classify(&w, self.projected.classes(), &self.config)
    }
}

/// Maps `x` and the training set by `Pᵀ` and applies PRC in the reduced space.
pub fn dprc_classify(
    x: &[f64],
    model: &DiscriminantProjection,
    train: &Dataset,
    config: &PrcConfig,
) -> Result<Prediction> {
    DprcClassifier::new(model.clone(), train, *config)?.classify(x)
}
