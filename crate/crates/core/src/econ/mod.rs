//! Single-equation estimators: OLS and two-step GMM with Bartlett HAC
//! covariances, the bootstrap J test, local projections and the leakage
//! experiment.

pub mod bootstrap;
pub mod data;
pub mod expect;
pub mod gmm;
pub mod hac;
pub mod leakage;
pub mod lp;

pub use bootstrap::{bootstrap_j, block_signs, resample_j, BootstrapJ};
pub use data::{taylor_rule_data, InstrumentSetKind, RegressionData, TaylorColumns};
pub use expect::expectations_regression;
pub use gmm::{first_stage_f, gmm_two_step, ols_hac, two_stage_least_squares, GmmResult};
pub use hac::{bartlett_weights, hac_covariance, long_run_covariance, HacOptions};
pub use leakage::{leakage_experiment, LeakInstrument, LeakageConfig, LeakageRow, LeakageTable};
pub use lp::{lp_irf, LpOptions, LpRow};
