//! Decision rules: PRC, DPRC, and the LRC / nearest-neighbor baselines.

mod baselines;
mod dprc;
mod prc;

pub use baselines::{affine_oracle_distance, lrc_classify, lrc_distance, nn_classify};
pub use dprc::{
    compute_scatters, dprc_classify, dprc_fit, solve_generalized_eig, DiscriminantProjection,
    DprcClassifier, EpsilonMode, ScatterPair, DEFAULT_RELATIVE_EPSILON, EPSILON_FLOOR,
};
pub use prc::{prc_classify, prc_classify_dataset, Prediction};
