use std::fmt;
use std::str::FromStr;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix};
use crate::rng::SeededRng;

/// Parameters for a union-of-affine-subspaces dataset.
///
/// Class `c` samples are `o_c + B_c a + n` where `B_c` is a random q×k orthonormal basis,
/// `‖o_c‖ = separation`, `a ~ N(0, I_k)` and `n ~ N(0, σ² I_q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub q: usize,
    pub classes: usize,
    pub samples_per_class: usize,
    pub subspace_dim: usize,
    pub noise_sigma: f64,
    pub separation: f64,
    pub seed: u64,
    /// Use one basis for every class.
    pub shared_basis: bool,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            q: 20,
            classes: 5,
            samples_per_class: 10,
            subspace_dim: 3,
            noise_sigma: 0.05,
            separation: 5.0,
            seed: 0,
            shared_basis: false,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.q == 0 || self.classes == 0 || self.samples_per_class == 0 || self.subspace_dim == 0
        {
            return Err(Error::BadSpec("all counts must be at least 1".into()));
        }
        if self.subspace_dim >= self.q {
            return Err(Error::BadSpec(format!(
                "subspace_dim {} must be below q {}",
                self.subspace_dim, self.q
            )));
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return Err(Error::BadSpec(
                "noise must be finite and non-negative".into(),
            ));
        }
        if !(self.separation.is_finite() && self.separation >= 0.0) {
            return Err(Error::BadSpec(
                "separation must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Parses `key=value` pairs separated by commas, e.g.
/// `q=20,m=5,n=10,k=3,noise=0.05,sep=5,seed=7`. Unspecified keys keep their defaults.
impl FromStr for SynthSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut spec = SynthSpec::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::BadSpec(format!("expected key=value, got `{part}`")))?;
            let bad = || Error::BadSpec(format!("bad value for `{key}`: `{value}`"));
            match key.trim() {
                "q" => spec.q = value.parse().map_err(|_| bad())?,
                "m" | "classes" => spec.classes = value.parse().map_err(|_| bad())?,
                "n" | "per_class" => spec.samples_per_class = value.parse().map_err(|_| bad())?,
                "k" | "subspace_dim" => spec.subspace_dim = value.parse().map_err(|_| bad())?,
                "noise" => spec.noise_sigma = value.parse().map_err(|_| bad())?,
                "sep" | "separation" => spec.separation = value.parse().map_err(|_| bad())?,
                "seed" => spec.seed = value.parse().map_err(|_| bad())?,
                "shared" => spec.shared_basis = value.parse().map_err(|_| bad())?,
                other => return Err(Error::BadSpec(format!("unknown key `{other}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for SynthSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={},m={},n={},k={},noise={},sep={},seed={},shared={}",
            self.q,
            self.classes,
            self.samples_per_class,
            self.subspace_dim,
            self.noise_sigma,
            self.separation,
            self.seed,
            self.shared_basis
        )
    }
}

const STREAM_BASIS: u64 = 1 << 32;
const STREAM_OFFSET: u64 = 2 << 32;
const STREAM_SAMPLES: u64 = 3 << 32;

/// Random q×k matrix with orthonormal columns (Gram-Schmidt, two passes).
pub fn random_orthonormal(q: usize, k: usize, rng: &mut SeededRng) -> Matrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    while cols.len() < k {
        let mut v = rng.gaussian_vec(q);
        for _ in 0..2 {
            for c in &cols {
                let p = dot(&v, c);
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= p * y);
            }
        }
        let n = norm(&v);
        if n > 1e-10 {
            v.iter_mut().for_each(|x| *x /= n);
            cols.push(v);
        }
    }
    Matrix::from_columns(&cols).expect("non-empty orthonormal basis")
}

pub fn gen_synthetic_subspace(spec: &SynthSpec) -> Result<Dataset> {
    spec.validate()?;
    let q = spec.q;
    let k = spec.subspace_dim;
    let mut labels = Vec::with_capacity(spec.classes);
    let mut classes = Vec::with_capacity(spec.classes);
    for c in 0..spec.classes as u64 {
        let basis_stream = if spec.shared_basis { 0 } else { c };
        let basis = random_orthonormal(
            q,
            k,
            &mut SeededRng::new(spec.seed, STREAM_BASIS | basis_stream),
        );

        let mut offset = SeededRng::new(spec.seed, STREAM_OFFSET | c).gaussian_vec(q);
        let on = norm(&offset);
        offset
            .iter_mut()
            .for_each(|x| *x *= if on > 0.0 { spec.separation / on } else { 0.0 });

        let mut rng = SeededRng::new(spec.seed, STREAM_SAMPLES | c);
        let mut columns = Vec::with_capacity(spec.samples_per_class);
        for _ in 0..spec.samples_per_class {
            let coeffs = rng.gaussian_vec(k);
            let mut x = basis.mul_vec(&coeffs)?.into_inner();
            for (xi, oi) in x.iter_mut().zip(&offset) {
                *xi += oi + spec.noise_sigma * rng.gaussian();
            }
            columns.push(x);
        }
        labels.push(format!("c{c}"));
        classes.push(Matrix::from_columns(&columns)?);
    }
    Dataset::new(labels, classes)
}
