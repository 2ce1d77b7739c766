//! Scalar abstraction shared by the scalar-generic numerics.
//!
//! The model solver, the banded linear solver, the weighted-quantile
//! machinery and the HAC kernel are written against [`Real`] so they can be
//! instantiated for `f32` or `f64`. Estimation pipelines that sample random
//! matrices run on `f64` only.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable throughout the generic numerics.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    ///
    /// Every literal used by the numerics is representable in `f32`, so the
    /// conversion cannot fail for the two supported scalar types.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}
