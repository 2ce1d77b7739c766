//! Local projections `y_{t+h} - y_{t-1} = a + b_h e_t + sum_k c_k e_{t-k} + d' x_{t-1} + u`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::data::RegressionData;
use super::gmm::ols_hac;
use super::hac::HacOptions;
use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;

/// Two-sided normal critical values.
pub const Z68: f64 = 0.994_457_883_209_753_1;
pub const Z90: f64 = 1.644_853_626_951_472_2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LpOptions {
    /// Largest horizon; projections run for `h = 0..=horizons`.
    pub horizons: usize,
    pub shock_lags: usize,
    pub hac: HacOptions,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self { horizons: 20, shock_lags: 12, hac: HacOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpRow {
    pub horizon: usize,
    pub beta: f64,
    pub se: f64,
    pub lo68: f64,
    pub hi68: f64,
    pub lo90: f64,
    pub hi90: f64,
    pub nobs: usize,
}

impl LpRow {
    pub fn covers90(&self, v: f64) -> bool {
        self.lo90 <= v && v <= self.hi90
    }
}

pub fn lp_irf(
    frame: &TimeSeriesFrame,
    outcome: &str,
    shock: &str,
    controls: &[&str],
    opts: &LpOptions,
) -> Result<Vec<LpRow>> {
    let y = frame.column(outcome)?;
    let e = frame.column(shock)?;
    let ctrl: Vec<&[f64]> = controls.iter().map(|c| frame.column(c)).collect::<Result<_>>()?;
    let p = opts.shock_lags;
    let k = 2 + p + controls.len();
    let mut names = vec!["const".to_string(), shock.to_string()];
    names.extend((1..=p).map(|l| format!("{shock}_l{l}")));
    names.extend(controls.iter().map(|c| format!("{c}_l1")));

    let mut out = Vec::with_capacity(opts.horizons + 1);
    for h in 0..=opts.horizons {
        let mut lhs = Vec::new();
        let mut rows = Vec::new();
        for t in p.max(1)..frame.len().saturating_sub(h) {
            let mut row = vec![1.0, e[t]];
            row.extend((1..=p).map(|l| e[t - l]));
            row.extend(ctrl.iter().map(|c| c[t - 1]));
            let dy = y[t + h] - y[t - 1];
            if dy.is_finite() && row.iter().all(|v| v.is_finite()) {
                lhs.push(dy);
                rows.extend(row);
            }
        }
        let n = lhs.len();
        if n < k + 10 {
            return Err(Error::InsufficientData { need: k + 10, have: n });
        }
        let data = RegressionData::exogenous(DVector::from_vec(lhs), DMatrix::from_row_slice(n, k, &rows), names.clone())?;
        let fit = ols_hac(&data, &opts.hac)?;
        let (beta, se) = (fit.coefficients[1], fit.std_errors[1]);
        out.push(LpRow {
            horizon: h,
            beta,
            se,
            lo68: beta - Z68 * se,
            hi68: beta + Z68 * se,
            lo90: beta - Z90 * se,
            hi90: beta + Z90 * se,
            nobs: n,
        });
    }
    Ok(out)
}
