//! Projection representation-based classification.
//!
//! PRC approximates the orthogonal projection of a query onto each class's affine hull by
//! repeatedly projecting onto lines through class-model points ([`engine`]), then picks the
//! class with the smallest residual. DPRC learns a low-dimensional map that maximizes the
//! ratio of between-class to within-class PRC reconstruction scatter before classifying
//! ([`classifiers`]).

pub mod classifiers;
pub mod data;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod rng;

pub use classifiers::{
    affine_oracle_distance, compute_scatters, dprc_classify, dprc_fit, lrc_distance, nn_classify,
    prc_classify, solve_generalized_eig, DiscriminantProjection, EpsilonMode, Prediction,
    ScatterPair,
};
pub use data::Dataset;
pub use engine::{run_projection, PrcConfig, ProjectionResult, StopReason};
pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
