use crate::data::Dataset;
use crate::engine::{run_projection, PrcConfig, ProjectionResult};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone)]
pub struct Prediction {
    /// Dense class id of the winning class.
    pub label: usize,
    /// Distance from the query to each class representation.
    pub distances: Vec<f64>,
    pub per_class_results: Vec<ProjectionResult>,
}

/// Index of the smallest value; ties go to the lowest index.
pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[best] {
            best = i;
        }
    }
    best
}

/// Assigns `x` to the class whose projection representation is closest.
pub fn prc_classify(x: &[f64], class_models: &[Matrix], config: &PrcConfig) -> Result<Prediction> {
    if class_models.is_empty() {
        return Err(Error::NoClasses);
    }
    let per_class_results = class_models
        .iter()
        .map(|m| run_projection(x, m, config))
        .collect::<Result<Vec<_>>>()?;
    let distances: Vec<f64> = per_class_results.iter().map(|r| r.distance).collect();
    Ok(Prediction {
        label: argmin(&distances),
        distances,
        per_class_results,
    })
}

pub fn prc_classify_dataset(x: &[f64], train: &Dataset, config: &PrcConfig) -> Result<Prediction> {
    train.check_dim(x.len())?;
    prc_classify(x, train.classes(), config)
}
