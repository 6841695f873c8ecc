use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::SeededRng;

/// Per class, a seeded shuffle picks `train_per_class` samples for training; the rest
/// form the test set. Class `c` draws from stream `c` of `seed`, and both halves keep the
/// original sample order.
pub fn split_dataset(
    data: &Dataset,
    train_per_class: usize,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    if train_per_class == 0 {
        return Err(Error::InvalidConfig(
            "train_per_class must be at least 1".into(),
        ));
    }
    let mut train = Vec::with_capacity(data.num_classes());
    let mut test = Vec::with_capacity(data.num_classes());
    for c in 0..data.num_classes() {
        let n = data.class_size(c);
        if n < train_per_class + 1 {
            return Err(Error::ClassTooSmall {
                label: data.label(c).to_string(),
                count: n,
                needed: train_per_class + 1,
            });
        }
        let mut order: Vec<usize> = (0..n).collect();
        SeededRng::new(seed, c as u64).shuffle(&mut order);
        let mut chosen = order[..train_per_class].to_vec();
        let mut rest = order[train_per_class..].to_vec();
        chosen.sort_unstable();
        rest.sort_unstable();
        let class = data.class(c);
        train.push(select_columns(class, &chosen)?);
        test.push(select_columns(class, &rest)?);
    }
    Ok((
        Dataset::new(data.labels().to_vec(), train)?,
        Dataset::new(data.labels().to_vec(), test)?,
    ))
}

pub(crate) fn select_columns(m: &Matrix, idx: &[usize]) -> Result<Matrix> {
    let cols: Vec<_> = idx.iter().map(|&j| m.column(j)).collect();
    Matrix::from_columns(&cols)
}
