//! Bayesian VAR with sign restrictions and loose-rationality weights.

pub mod analysis;
pub mod identify;
pub mod posterior;
pub mod rotation;
pub mod var;

pub use analysis::{
    counterfactual_irf, delta_robustness, fevd, fevd_shares, historical_decomposition, irf, shock_diagnostics, Band,
    DeltaRobustness, Diagnostics, Fevd, HistoricalDecomposition, IrfRow,
};
pub use identify::{
    identify, identify_with_patterns, loose_weight, match_signs, Assignment, IdentifiedSet,
    IdentifyOptions, VariableRoleMap,
};
pub use posterior::{sample_posterior, PosteriorDraw};
pub use rotation::draw_rotation;
pub use var::{fit_ols, fit_ols_var, OlsVar, VarData, VarModel};
