//! Monte Carlo of instrument validity when scores read the future.
//!
//! The rule `i = delta s + u` is estimated by 2SLS on observed scores that
//! load on future macro states. Instruments lagged `k` periods are
//! contaminated through the overlap of the leak window with the persistence
//! of the state, so the estimate is `delta (1 - theta_k)` with `theta_k`
//! decaying in `k` for macro lags. Lagged scores carry the leak themselves.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::RegressionData;
use super::gmm::two_stage_least_squares;
use crate::error::{Error, Result};
use crate::rng::{child_seed, Stream};
use crate::synth::{simulate_leakage, LeakageDgp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeakInstrument {
    /// Lags of the macro fundamental.
    Macro,
    /// Lags of the observed score.
    Score,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LeakageConfig {
    pub t: usize,
    pub reps: usize,
    pub ks: Vec<usize>,
    /// Instruments per set: lags `k .. k + lags - 1`.
    pub lags: usize,
    pub dgp: LeakageDgp,
}

impl Default for LeakageConfig {
    fn default() -> Self {
        Self { t: 400, reps: 1000, ks: vec![1, 2, 3, 4], lags: 3, dgp: LeakageDgp::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeakageRow {
    pub instrument: LeakInstrument,
    pub k: usize,
    pub mean_delta: f64,
    pub bias: f64,
    pub mc_se: f64,
    /// `1 - mean(delta_hat) / delta`.
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeakageTable {
    pub delta: f64,
    pub reps: usize,
    pub failed: usize,
    pub rows: Vec<LeakageRow>,
    /// Per replication estimates, ordered as `rows`.
    #[serde(skip)]
    pub estimates: Vec<Vec<f64>>,
}

impl LeakageTable {
    fn index(&self, inst: LeakInstrument, k: usize) -> Option<usize> {
        self.rows.iter().position(|r| r.instrument == inst && r.k == k)
    }

    pub fn row(&self, inst: LeakInstrument, k: usize) -> Option<&LeakageRow> {
        self.index(inst, k).map(|i| &self.rows[i])
    }

    /// `|theta_a| - |theta_b|` and its Monte Carlo standard error from the
    /// paired per-replication differences.
    pub fn theta_gap(&self, inst: LeakInstrument, a: usize, b: usize) -> Option<(f64, f64)> {
        let (ia, ib) = (self.index(inst, a)?, self.index(inst, b)?);
        let gap = self.rows[ia].theta.abs() - self.rows[ib].theta.abs();
        let sign_a = self.rows[ia].theta.signum();
        let sign_b = self.rows[ib].theta.signum();
        // |theta| = sign * (1 - mean/delta), linear in the paired draws
        let d: Vec<f64> = self
            .estimates
            .iter()
            .map(|e| (sign_a * (1.0 - e[ia] / self.delta)) - (sign_b * (1.0 - e[ib] / self.delta)))
            .collect();
        Some((gap, mean_se(&d).1))
    }
}

fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (m, f64::NAN);
    }
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

fn one_rep(cfg: &LeakageConfig, seed: u64) -> Result<Vec<f64>> {
    let kmax = *cfg.ks.iter().max().unwrap_or(&1);
    let pre = kmax + cfg.lags - 1;
    let f = simulate_leakage(&cfg.dgp, cfg.t + pre, seed)?;
    let (i, s, x) = (f.column("i")?, f.column("s")?, f.column("x")?);
    let t = cfg.t;
    let rows = pre..pre + t;
    let y = DVector::from_iterator(t, rows.clone().map(|r| i[r]));
    let xm = DMatrix::from_fn(t, 2, |r, j| if j == 0 { 1.0 } else { s[pre + r] });
    let names = vec!["const".to_string(), "s".to_string()];
    let mut out = Vec::with_capacity(2 * cfg.ks.len());
    for inst in [LeakInstrument::Macro, LeakInstrument::Score] {
        let src = if inst == LeakInstrument::Macro { x } else { s };
        for &k in &cfg.ks {
            let z = DMatrix::from_fn(t, 1 + cfg.lags, |r, j| if j == 0 { 1.0 } else { src[pre + r - k - (j - 1)] });
            let zn = (0..=cfg.lags).map(|j| format!("z{j}")).collect();
            let data = RegressionData::new(y.clone(), xm.clone(), names.clone(), z, zn, vec![1])?;
            out.push(two_stage_least_squares(&data)?[1]);
        }
    }
    Ok(out)
}

pub fn leakage_experiment(cfg: &LeakageConfig, seed: u64) -> Result<LeakageTable> {
    if cfg.reps == 0 || cfg.ks.is_empty() || cfg.lags == 0 || cfg.ks.contains(&0) {
        return Err(Error::InvalidArgument("need reps >= 1, lags >= 1 and instrument lags k >= 1".into()));
    }
    let results: Vec<Result<Vec<f64>>> = (0..cfg.reps)
        .into_par_iter()
        .map(|r| one_rep(cfg, child_seed(seed, Stream::MonteCarlo, r as u64)))
        .collect();
    let estimates: Vec<Vec<f64>> = results.iter().filter_map(|r| r.as_ref().ok().cloned()).collect();
    let failed = cfg.reps - estimates.len();
    if estimates.is_empty() {
        return Err(Error::DegenerateData("every replication failed".into()));
    }
    let delta = cfg.dgp.delta;
    let mut rows = Vec::new();
    let mut col = 0;
    for inst in [LeakInstrument::Macro, LeakInstrument::Score] {
        for &k in &cfg.ks {
            let v: Vec<f64> = estimates.iter().map(|e| e[col]).collect();
            let (m, se) = mean_se(&v);
            rows.push(LeakageRow {
                instrument: inst,
                k,
                mean_delta: m,
                bias: m - delta,
                mc_se: se,
                theta: 1.0 - m / delta,
            });
            col += 1;
        }
    }
    Ok(LeakageTable { delta, reps: cfg.reps, failed, rows, estimates })
}
