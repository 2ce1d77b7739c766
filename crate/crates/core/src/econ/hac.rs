//! Bartlett (Newey-West) long-run covariance of moment contributions.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct HacOptions {
    pub bandwidth: usize,
}

impl Default for HacOptions {
    fn default() -> Self {
        Self { bandwidth: 4 }
    }
}

impl HacOptions {
    pub fn new(bandwidth: usize) -> Self {
        Self { bandwidth }
    }
}

/// `w_l = 1 - l/(L+1)` for `l = 0..=L`.
pub fn bartlett_weights<T: Real>(bandwidth: usize) -> Vec<T> {
    let denom = T::from_usize_lossy(bandwidth + 1);
    (0..=bandwidth)
        .map(|l| T::one() - T::from_usize_lossy(l) / denom)
        .collect()
}

/// Long-run covariance `S = G_0 + sum_l w_l (G_l + G_l')` with
/// `G_l = (1/T) sum_t g_t g_{t-l}'`. `scores` is row-major `t x k`. No
/// small-sample correction.
pub fn long_run_covariance<T: Real>(scores: &[T], t: usize, k: usize, bandwidth: usize) -> Vec<T> {
    assert_eq!(scores.len(), t * k, "score buffer is not t x k");
    let mut s = vec![T::zero(); k * k];
    if t == 0 {
        return s;
    }
    let inv_t = T::one() / T::from_usize_lossy(t);
    let weights = bartlett_weights::<T>(bandwidth);
    for (l, &w) in weights.iter().enumerate().take(t) {
        let mut gamma = vec![T::zero(); k * k];
        for row in l..t {
            let a = &scores[row * k..(row + 1) * k];
            let b = &scores[(row - l) * k..(row - l + 1) * k];
            for i in 0..k {
                for j in 0..k {
                    gamma[i * k + j] = gamma[i * k + j] + a[i] * b[j];
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                let v = if l == 0 {
                    gamma[i * k + j]
                } else {
                    w * (gamma[i * k + j] + gamma[j * k + i])
                };
                s[i * k + j] = s[i * k + j] + v * inv_t;
            }
        }
    }
    s
}

/// Matrix form of [`long_run_covariance`]; rows of `g` are the per-period
/// moment contributions.
pub fn hac_covariance(g: &DMatrix<f64>, bandwidth: usize) -> DMatrix<f64> {
    let (t, k) = g.shape();
    let flat: Vec<f64> = (0..t).flat_map(|r| (0..k).map(move |c| g[(r, c)])).collect();
    let s = long_run_covariance(&flat, t, k, bandwidth);
    DMatrix::from_row_slice(k, k, &s)
}
