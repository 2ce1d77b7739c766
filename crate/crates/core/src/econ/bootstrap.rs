//! Block wild Rademacher bootstrap of Hansen's J.

use nalgebra::DVector;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::data::RegressionData;
use super::gmm::{gmm_two_step, GmmResult};
use super::hac::HacOptions;
use crate::error::{Error, Result};
use crate::rng::{substream, Stream};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapJ {
    pub j_obs: f64,
    pub p_value: f64,
    pub resamples: usize,
    pub failed: usize,
    /// More than a tenth of the resamples failed to re-estimate.
    pub unreliable: bool,
    pub block_len: usize,
}

/// One `±1` draw per non-overlapping block of length `block_len`; a
/// trailing partial block gets its own draw.
pub fn block_signs<R: Rng>(t: usize, block_len: usize, rng: &mut R) -> Vec<f64> {
    let mut w = Vec::with_capacity(t);
    while w.len() < t {
        let s = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let take = block_len.min(t - w.len());
        w.extend(std::iter::repeat_n(s, take));
    }
    w
}

/// J of the resample `y* = fit + w u` built from a second-step fit.
/// Observations with weight `+1` keep their original `y` so that all-`+1`
/// weights reproduce the data bit for bit.
pub fn resample_j(data: &RegressionData, base: &GmmResult, hac: &HacOptions, weights: &[f64]) -> Result<f64> {
    if weights.len() != data.nobs() {
        return Err(Error::DimensionMismatch("bootstrap weights".into()));
    }
    let fit = base.fitted(data);
    let y = DVector::from_fn(data.nobs(), |i, _| {
        if weights[i] == 1.0 {
            data.y[i]
        } else {
            fit[i] + weights[i] * base.residuals[i]
        }
    });
    Ok(gmm_two_step(&data.with_y(y), hac)?.j_stat)
}

/// `p = #{J* >= J_obs} / #successful resamples`. Each resample draws from its
/// own stream keyed by `(seed, index)`.
pub fn bootstrap_j(data: &RegressionData, hac: &HacOptions, resamples: usize, block_len: usize, seed: u64) -> Result<BootstrapJ> {
    if resamples == 0 || block_len == 0 {
        return Err(Error::InvalidArgument("bootstrap needs B >= 1 and block length >= 1".into()));
    }
    let base = gmm_two_step(data, hac)?;
    let outcomes: Vec<Option<bool>> = (0..resamples)
        .into_par_iter()
        .map(|r| {
            let mut rng = substream(seed, Stream::Bootstrap, r as u64, 0);
            let w = block_signs(data.nobs(), block_len, &mut rng);
            resample_j(data, &base, hac, &w).ok().map(|j| j >= base.j_stat)
        })
        .collect();
    let failed = outcomes.iter().filter(|o| o.is_none()).count();
    let ok = resamples - failed;
    if ok == 0 {
        return Err(Error::DegenerateData("every bootstrap resample failed".into()));
    }
    let exceed = outcomes.iter().filter(|o| **o == Some(true)).count();
    Ok(BootstrapJ {
        j_obs: base.j_stat,
        p_value: exceed as f64 / ok as f64,
        resamples,
        failed,
        unreliable: failed * 10 > resamples,
        block_len,
    })
}
