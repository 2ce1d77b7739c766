//! Weighted quantiles and effective sample size.
//!
//! Quantiles interpolate linearly between the midpoints of each element's
//! cumulative-weight interval. With equal weights this reduces to the Hazen
//! plotting-position quantile, `p_i = (i - 1/2) / n`.

use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn weighted_quantiles<T: Real>(values: &[T], weights: &[T], probs: &[T]) -> Result<Vec<T>> {
    if values.len() != weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values, {} weights",
            values.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| *w < T::zero() || !w.is_finite()) {
        return Err(Error::InvalidArgument("weights must be finite and non-negative".into()));
    }
    let mut pairs: Vec<(T, T)> = values
        .iter()
        .zip(weights)
        .filter(|(_, w)| **w > T::zero())
        .map(|(v, w)| (*v, *w))
        .collect();
    if pairs.is_empty() {
        return Err(Error::AllZeroWeights);
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let total = pairs.iter().fold(T::zero(), |s, p| s + p.1);
    let half = T::lit(0.5);
    let mut mids = Vec::with_capacity(pairs.len());
    let mut cum = T::zero();
    for (_, w) in &pairs {
        mids.push((cum + *w * half) / total);
        cum = cum + *w;
    }
    let last = pairs.len() - 1;
    Ok(probs
        .iter()
        .map(|&q| {
            if q <= mids[0] {
                return pairs[0].0;
            }
            if q >= mids[last] {
                return pairs[last].0;
            }
            let i = mids.partition_point(|m| *m <= q);
            let (m0, m1) = (mids[i - 1], mids[i]);
            let t = (q - m0) / (m1 - m0);
            pairs[i - 1].0 + t * (pairs[i].0 - pairs[i - 1].0)
        })
        .collect())
}

pub fn weighted_median<T: Real>(values: &[T], weights: &[T]) -> Result<T> {
    Ok(weighted_quantiles(values, weights, &[T::lit(0.5)])?[0])
}

/// Kish effective sample size `(sum w)^2 / sum w^2`.
pub fn ess<T: Real>(weights: &[T]) -> Result<T> {
    let s = weights.iter().fold(T::zero(), |a, w| a + *w);
    let s2 = weights.iter().fold(T::zero(), |a, w| a + *w * *w);
    if s2 == T::zero() {
        return Err(Error::AllZeroWeights);
    }
    Ok(s * s / s2)
}
