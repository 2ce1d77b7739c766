//! Monetary-policy econometrics around a behavioral New-Keynesian model with
//! media sentiment: model solution, sign-restricted Bayesian SVAR
//! identification, GMM Taylor-rule estimation, local projections, dictionary
//! text indices and the synthetic data generators that exercise them.
//!
//! The model solver and the small numerical kernels are generic over the
//! scalar type; the aliases below fix it to `f64`.

pub mod bnk;
pub mod econ;
pub mod error;
pub mod frame;
pub mod numeric;
pub mod rng;
pub mod scalar;
pub mod svar;
pub mod synth;
pub mod text;

pub use error::{Error, Result};
pub use frame::TimeSeriesFrame;
pub use scalar::Real;

pub type Calibration = bnk::Calibration<f64>;
pub type StableMode = bnk::StableMode<f64>;
pub type ImpactResponse = bnk::ImpactResponse<f64>;
pub type ImpulseResponseSet = bnk::ImpulseResponseSet<f64>;

pub type Calibration32 = bnk::Calibration<f32>;
pub type StableMode32 = bnk::StableMode<f32>;
