use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

/// Labeled feature vectors grouped by class.
///
/// Class `c` is stored as a q×N_c matrix whose columns are its samples. Classes are
/// numbered densely in the order their labels were first seen.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    labels: Vec<String>,
    classes: Vec<Matrix>,
}

impl Dataset {
    pub fn new(labels: Vec<String>, classes: Vec<Matrix>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if labels.len() != classes.len() {
            return Err(Error::DimensionMismatch {
                expected: classes.len(),
                found: labels.len(),
            });
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::InvalidConfig(format!("duplicate class label `{l}`")));
            }
        }
        let dim = classes[0].rows();
        for c in &classes {
            if c.rows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.rows(),
                });
            }
        }
        Ok(Dataset {
            dim,
            labels,
            classes,
        })
    }

    /// Groups `(label, features)` pairs by label in first-appearance order.
    pub fn from_labeled<S: AsRef<str>>(samples: &[(S, Vector)]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut grouped: Vec<Vec<&[f64]>> = Vec::new();
        for (label, x) in samples {
            let label = label.as_ref();
            let id = *index.entry(label.to_string()).or_insert_with(|| {
                labels.push(label.to_string());
                grouped.push(Vec::new());
                labels.len() - 1
            });
            grouped[id].push(x.as_slice());
        }
        let classes = grouped
            .iter()
            .map(|cols| Matrix::from_columns(cols))
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(labels, classes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Total number of samples `L`.
    pub fn len(&self) -> usize {
        self.classes.iter().map(|c| c.cols()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn class(&self, c: usize) -> &Matrix {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Matrix] {
        &self.classes
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].cols()
    }

    pub fn label(&self, c: usize) -> &str {
        &self.labels[c]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_id(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn sample(&self, c: usize, i: usize) -> Vector {
        self.classes[c].column(i)
    }

    /// All samples as `(class id, sample)` in class-major order.
    pub fn samples(&self) -> Vec<(usize, Vector)> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(c, m)| m.columns().into_iter().map(move |v| (c, v)))
            .collect()
    }

    /// Applies `f` to every sample, keeping labels and class membership.
    pub fn map_samples<F>(&self, mut f: F) -> Result<Dataset>
    where
        F: FnMut(&[f64]) -> Result<Vector>,
    {
        let classes = self
            .classes
            .iter()
            .map(|m| {
                let cols = m
                    .columns()
                    .iter()
                    .map(|x| f(x))
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_columns(&cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(self.labels.clone(), classes)
    }

    /// All samples as columns of one q×L matrix, class-major.
    pub fn stacked(&self) -> Matrix {
        let cols: Vec<Vector> = self.samples().into_iter().map(|(_, x)| x).collect();
        Matrix::from_columns(&cols).expect("dataset has at least one sample")
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}
