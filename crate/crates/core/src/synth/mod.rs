//! Synthetic data generators for the estimators and the acceptance suite.

pub mod leakage;
pub mod lp;
pub mod svar9;
pub mod taylor;
pub mod var;

pub use leakage::{simulate_leakage, LeakageDgp};
pub use lp::GeometricIrfProcess;
pub use svar9::svar9_dgp;
pub use taylor::{simulate_taylor_panel, TaylorDgp};
pub use var::{simulate_var, SimulatedVar, VarDgp};
