use nalgebra::{DMatrix, DVector};

use super::data::RegressionData;
use super::gmm::{ols_hac, GmmResult};
use super::hac::HacOptions;
use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;

/// `E_t z = a + g E_{t-1} z + b s_t + u_t` by OLS, with HAC and plain
/// standard errors.
pub fn expectations_regression(
    frame: &TimeSeriesFrame,
    expectation: &str,
    sentiment: &str,
    hac: &HacOptions,
) -> Result<GmmResult> {
    let e = frame.column(expectation)?;
    let s = frame.column(sentiment)?;
    let mut y = Vec::new();
    let mut x = Vec::new();
    for t in 1..frame.len() {
        let row = [1.0, e[t - 1], s[t]];
        if e[t].is_finite() && row.iter().all(|v| v.is_finite()) {
            y.push(e[t]);
            x.extend(row);
        }
    }
    if y.len() < 10 {
        return Err(Error::InsufficientData { need: 10, have: y.len() });
    }
    let n = y.len();
    let names = vec!["const".to_string(), format!("{expectation}_l1"), sentiment.to_string()];
    let data = RegressionData::exogenous(DVector::from_vec(y), DMatrix::from_row_slice(n, 3, &x), names)?;
    ols_hac(&data, hac)
}
