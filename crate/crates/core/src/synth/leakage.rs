//! Sentiment scores contaminated by information from after their date.
//!
//! The macro fundamental `x` is AR(1), the structural score `s*` loads on
//! lagged fundamentals, and the rate is `i = delta s* + u`. The observed
//! score adds `eta_t = leak * mean(m_{t+1..t+W}) + noise`, where
//! `m = x - psi u` is the realised macro state the scorer has read about.
//! Because `m` carries future policy shocks, `eta` is correlated with the
//! rule residual of nearby dates.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;
use crate::rng::{substream, Stream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LeakageDgp {
    pub delta: f64,
    pub rho_x: f64,
    pub rho_s: f64,
    pub s_on_x: f64,
    pub s_noise: f64,
    pub sigma_u: f64,
    pub psi: f64,
    pub leak: f64,
    pub leak_horizon: usize,
    pub leak_noise: f64,
    pub burn_in: usize,
}

impl Default for LeakageDgp {
    fn default() -> Self {
        Self {
            delta: 0.5,
            rho_x: 0.6,
            rho_s: 0.8,
            s_on_x: 1.0,
            s_noise: 0.5,
            sigma_u: 2.0,
            psi: 1.0,
            leak: 1.0,
            leak_horizon: 4,
            leak_noise: 0.3,
            burn_in: 200,
        }
    }
}

/// Frame with columns `i`, `s` (observed), `s_star`, `x`.
pub fn simulate_leakage(dgp: &LeakageDgp, t: usize, seed: u64) -> Result<TimeSeriesFrame> {
    if dgp.leak_horizon < 1 || t == 0 {
        return Err(Error::InvalidArgument("need T >= 1 and leak horizon >= 1".into()));
    }
    let mut rng = substream(seed, Stream::Simulation, 3, 0);
    let mut z = || -> f64 { StandardNormal.sample(&mut rng) };
    let w = dgp.leak_horizon;
    let n = dgp.burn_in + t + w;
    let mut x = vec![0.0; n];
    let mut ss = vec![0.0; n];
    let mut u = vec![0.0; n];
    for k in 0..n {
        u[k] = dgp.sigma_u * z();
        if k > 0 {
            x[k] = dgp.rho_x * x[k - 1] + z();
            ss[k] = dgp.rho_s * ss[k - 1] + dgp.s_on_x * x[k - 1] + dgp.s_noise * z();
        }
    }
    let m: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a - dgp.psi * b).collect();
    let mut s = ss.clone();
    for k in 0..n - w {
        let future = m[k + 1..=k + w].iter().sum::<f64>() / w as f64;
        s[k] += dgp.leak * future + dgp.leak_noise * z();
    }
    let i: Vec<f64> = ss.iter().zip(&u).map(|(a, b)| dgp.delta * a + b).collect();
    let range = dgp.burn_in..dgp.burn_in + t;
    TimeSeriesFrame::quarterly(t)
        .with_column("i", i[range.clone()].to_vec())?
        .with_column("s", s[range.clone()].to_vec())?
        .with_column("s_star", ss[range.clone()].to_vec())?
        .with_column("x", x[range].to_vec())
}
