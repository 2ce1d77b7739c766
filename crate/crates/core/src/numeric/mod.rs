//! Scalar-generic numerical kernels.

pub mod banded;
pub mod roots;
pub mod weighted;

pub use banded::BandMatrix;
pub use roots::{bisect, scan_roots};
pub use weighted::{ess, weighted_quantiles};
