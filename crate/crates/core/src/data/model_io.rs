//! Text serialization of a trained [`DiscriminantProjection`].
//!
//! The file is a JSON document:
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "q": 2,
//!   "d": 1,
//!   "epsilon": 1.0000000000000000e-2,
//!   "eigenvalues": [9.0000000000000000e2],
//!   "P": [0.0000000000000000e0, 1.0000000000000000e0]
//! }
//! ```
//!
//! `P` is row-major (q rows, d columns). Reals are written with 17 significant digits,
//! which round-trips every finite `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::classifiers::DiscriminantProjection;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    format_version: u32,
    q: usize,
    d: usize,
    epsilon: f64,
    eigenvalues: Vec<f64>,
    #[serde(rename = "P")]
    p: Vec<f64>,
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

fn real_array(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| real(v)).collect();
    format!("[{}]", items.join(", "))
}

pub fn model_to_string(model: &DiscriminantProjection) -> String {
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"format_version\": {FORMAT_VERSION},");
    let _ = writeln!(s, "  \"q\": {},", model.q());
    let _ = writeln!(s, "  \"d\": {},", model.d());
    let _ = writeln!(s, "  \"epsilon\": {},", real(model.epsilon));
    let _ = writeln!(s, "  \"eigenvalues\": {},", real_array(&model.eigenvalues));
    let _ = writeln!(s, "  \"P\": {}", real_array(model.projection.as_slice()));
    s.push_str("}\n");
    s
}

pub fn model_from_str(text: &str) -> Result<DiscriminantProjection> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::SchemaMismatch(e.to_string()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::SchemaMismatch(format!(
            "unsupported format_version {}",
            file.format_version
        )));
    }
    if file.q == 0 || file.d == 0 || file.d > file.q {
        return Err(Error::SchemaMismatch(format!(
            "invalid shape q={} d={}",
            file.q, file.d
        )));
    }
    if file.eigenvalues.len() != file.d {
        return Err(Error::SchemaMismatch(format!(
            "{} eigenvalues recorded for d={}",
            file.eigenvalues.len(),
            file.d
        )));
    }
    if file.p.len() != file.q * file.d {
        return Err(Error::SchemaMismatch(format!(
            "P has {} entries, expected q*d = {}",
            file.p.len(),
            file.q * file.d
        )));
    }
    let projection = Matrix::from_row_major(file.q, file.d, file.p)
        .map_err(|e| Error::SchemaMismatch(e.to_string()))?;
    Ok(DiscriminantProjection {
        projection,
        eigenvalues: file.eigenvalues,
        epsilon: file.epsilon,
    })
}

pub fn save_model(model: &DiscriminantProjection, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, model_to_string(model)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<DiscriminantProjection> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    model_from_str(&text)
}
