//! Finite-dimensional quantum states, channels, and their joint purification.
//!
//! The central object is the purification of a pair (ρ, Φ): a single pure
//! state on reference ⊗ output ⊗ environment whose marginals carry the
//! channel output, the exchange state, and through them the entropy
//! quantities (input/output entropy, entropy exchange, mutual and coherent
//! information). On top of that sit numerical checks of the data processing
//! inequality and of subadditivity of mutual information, with seeded random
//! campaigns.
//!
//! Numerical kernels are generic over the scalar precision via [`Scalar`]
//! (`f32` or `f64`); the `f64` instantiations are aliased at the crate root.
//! All default tolerances are calibrated for `f64`.

// Validation gates deliberately use `!(value <= tol)`: the negation also
// rejects NaN values and NaN tolerances, which the positive `value > tol`
// would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod campaign;
pub mod channel;
pub mod checks;
pub mod eigen;
pub mod error;
pub mod factor;
pub mod info;
pub mod matrix;
pub mod pure;
pub mod purify;
pub mod scalar;
pub mod state;

pub use campaign::{derive_seed, run_campaign, CheckKind, TrialError};
pub use channel::{named_channel, random_channel, random_channel_with, ChannelKind};
pub use checks::{
    check_dpi, check_exchange_identity, check_marginal_consistency, check_strong_subadditivity,
    check_subadditivity, evaluate_dpi, purification_norm_defect, ROUTE_TOL,
};
pub use error::{Error, Result};
pub use factor::partial_trace;
pub use info::{
    coherent_information, entropy_exchange, info_report, mutual_information, von_neumann_entropy,
};
pub use matrix::kron;
pub use purify::{
    partial_states, purify_pair, purify_pair_composed, purify_pair_product, purify_state,
};
pub use scalar::Scalar;
pub use state::{random_state, random_state_with, RANK_CUTOFF};

/// Double-precision aliases; the generic types live in their modules.
pub type ComplexMatrix = matrix::ComplexMatrix<f64>;
pub type DensityMatrix = state::DensityMatrix<f64>;
pub type SpectralDecomposition = state::SpectralDecomposition<f64>;
pub type KrausChannel = channel::KrausChannel<f64>;
pub type LabeledPureState = pure::LabeledPureState<f64>;
pub type MarginalState = pure::MarginalState<f64>;
pub type InfoReport = info::InfoReport<f64>;
pub type CheckResult = checks::CheckResult<f64>;
pub type DpiEvaluation = checks::DpiEvaluation<f64>;
pub type CampaignConfig = campaign::CampaignConfig<f64>;
pub type CampaignReport = campaign::CampaignReport<f64>;
pub type CheckStats = campaign::CheckStats<f64>;

pub use factor::FactorShape;

/// Compiles and runs the README's code example as a doc test.
#[doc = include_str!("../../../README.md")]
#[cfg(doctest)]
mod readme {}
