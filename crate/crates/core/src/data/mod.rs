//! Datasets: CSV ingestion, synthetic generation, seeded splits, projection, model files.

mod csv_io;
mod dataset;
mod model_io;
pub(crate) mod split;
mod synth;

pub use csv_io::{load_csv_dataset, parse_csv_dataset, save_csv_dataset};
pub use dataset::Dataset;
pub use model_io::{load_model, model_from_str, model_to_string, save_model, FORMAT_VERSION};
pub use split::split_dataset;
pub use synth::{gen_synthetic_subspace, random_orthonormal, SynthSpec};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Replaces every sample `x` by `Pᵀ x`; `P` must have `q` rows.
pub fn apply_projection(data: &Dataset, p: &Matrix) -> Result<Dataset> {
    if p.rows() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: p.rows(),
        });
    }
    let pt = p.transpose();
    let classes = data
        .classes()
        .iter()
        .map(|m| pt.matmul(m))
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(data.labels().to_vec(), classes)
}
