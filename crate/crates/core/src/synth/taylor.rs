//! Taylor-rule panel with a rate and sentiment determined jointly each
//! period.
//!
//! Per period the rule and the sentiment equation are
//!
//! ```text
//! i_t = c + rho i_{t-1} + alpha r*_t + gamma gpi_t + beta gx_t + delta s_t + e_t
//! s_t = rho_s s_{t-1} + sum_k m^{tau-k} (lambda_pi gpi + lambda_x gx)_{t-tau+k} - zeta i_t + e^s_t
//! ```
//!
//! and the pair is solved exactly. With `zeta = 0` sentiment is
//! predetermined relative to the rate shock.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;
use crate::rng::{substream, Stream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TaylorDgp {
    pub c: f64,
    pub rho: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub beta: f64,
    pub delta: f64,
    pub sigma_eps: f64,

    pub rho_s: f64,
    pub tau: usize,
    pub m: f64,
    pub lambda_pi: f64,
    pub lambda_x: f64,
    /// Response of sentiment to the contemporaneous rate.
    pub zeta: f64,
    pub sigma_s: f64,

    pub rstar_ar: f64,
    pub rstar_sd: f64,
    pub gap_ar: f64,
    pub gap_sd: f64,

    /// Observed sentiment adds `leak` times the mean output gap over the
    /// next `leak_horizon` periods plus noise.
    pub leak: f64,
    pub leak_horizon: usize,
    pub leak_noise: f64,

    pub burn_in: usize,
}

impl Default for TaylorDgp {
    fn default() -> Self {
        Self {
            c: 0.1,
            rho: 0.8,
            alpha: 0.1,
            gamma: 0.3,
            beta: 0.2,
            delta: 0.5,
            sigma_eps: 0.3,
            rho_s: 0.5,
            tau: 4,
            m: 0.85,
            lambda_pi: 1.0,
            lambda_x: 1.0,
            zeta: 0.5,
            sigma_s: 0.3,
            rstar_ar: 0.9,
            rstar_sd: 0.3,
            gap_ar: 0.7,
            gap_sd: 0.5,
            leak: 0.0,
            leak_horizon: 4,
            leak_noise: 0.3,
            burn_in: 200,
        }
    }
}

impl TaylorDgp {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho.abs() < 1.0) {
            return Err(Error::InvalidArgument("|rho| must be below one".into()));
        }
        if self.leak_horizon < 1 {
            return Err(Error::InvalidArgument("leak horizon must be at least 1".into()));
        }
        if (1.0 + self.delta * self.zeta).abs() < 1e-12 {
            return Err(Error::InvalidArgument("simultaneous block is singular".into()));
        }
        Ok(())
    }
}

/// Column names of the simulated panel.
pub mod cols {
    pub const RATE: &str = "i";
    pub const RSTAR: &str = "rstar";
    pub const GAP_PI: &str = "gap_pi";
    pub const GAP_X: &str = "gap_x";
    pub const S: &str = "s";
    pub const S_STAR: &str = "s_star";
    pub const EPS: &str = "eps";
    pub const EPS_S: &str = "eps_s";
    pub const REV_PI: &str = "rev_gap_pi";
    pub const REV_X: &str = "rev_gap_x";
}

fn normal<R: Rng>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

pub fn simulate_taylor_panel(dgp: &TaylorDgp, t: usize, seed: u64) -> Result<TimeSeriesFrame> {
    if t < 50 {
        return Err(Error::InvalidArgument("panel needs T >= 50".into()));
    }
    dgp.validate()?;
    let mut rng = substream(seed, Stream::Simulation, 2, 0);
    let w = dgp.leak_horizon;
    let n = dgp.burn_in + t + w;
    let mut rstar = vec![0.0; n];
    let mut gp = vec![0.0; n];
    let mut gx = vec![0.0; n];
    let mut i = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut eps = vec![0.0; n];
    let mut eps_s = vec![0.0; n];
    let weights: Vec<f64> = (0..=dgp.tau).map(|k| dgp.m.powi((dgp.tau - k) as i32)).collect();

    for k in 1..n {
        rstar[k] = dgp.rstar_ar * rstar[k - 1] + dgp.rstar_sd * normal(&mut rng);
        gp[k] = dgp.gap_ar * gp[k - 1] + dgp.gap_sd * normal(&mut rng);
        gx[k] = dgp.gap_ar * gx[k - 1] + dgp.gap_sd * normal(&mut rng);
        eps[k] = dgp.sigma_eps * normal(&mut rng);
        eps_s[k] = dgp.sigma_s * normal(&mut rng);

        let a0 = dgp.c + dgp.rho * i[k - 1] + dgp.alpha * rstar[k] + dgp.gamma * gp[k] + dgp.beta * gx[k] + eps[k];
        let mut b0 = dgp.rho_s * s[k - 1] + eps_s[k];
        for (j, wk) in weights.iter().enumerate() {
            if let Some(d) = (k + j).checked_sub(dgp.tau) {
                b0 += wk * (dgp.lambda_pi * gp[d] + dgp.lambda_x * gx[d]);
            }
        }
        i[k] = (a0 + dgp.delta * b0) / (1.0 + dgp.delta * dgp.zeta);
        s[k] = b0 - dgp.zeta * i[k];
        if !i[k].is_finite() || i[k].abs() > 1e6 {
            return Err(Error::ExplosivePath);
        }
    }

    // second pass: observed sentiment reads the future output gap
    let mut s_obs = s.clone();
    if dgp.leak != 0.0 {
        for k in 0..n - w {
            let future = gx[k + 1..=k + w].iter().sum::<f64>() / w as f64;
            s_obs[k] += dgp.leak * future + dgp.leak_noise * normal(&mut rng);
        }
    }

    let rev = |g: &[f64], k: usize| dgp.gap_ar * (g[k] - dgp.gap_ar * g[k - 1]);
    let range = dgp.burn_in..dgp.burn_in + t;
    let take = |v: &[f64]| v[range.clone()].to_vec();
    TimeSeriesFrame::quarterly(t)
        .with_column(cols::RATE, take(&i))?
        .with_column(cols::RSTAR, take(&rstar))?
        .with_column(cols::GAP_PI, take(&gp))?
        .with_column(cols::GAP_X, take(&gx))?
        .with_column(cols::S, take(&s_obs))?
        .with_column(cols::S_STAR, take(&s))?
        .with_column(cols::EPS, take(&eps))?
        .with_column(cols::EPS_S, take(&eps_s))?
        .with_column(cols::REV_PI, range.clone().map(|k| rev(&gp, k)).collect())?
        .with_column(cols::REV_X, range.clone().map(|k| rev(&gx, k)).collect())
}
