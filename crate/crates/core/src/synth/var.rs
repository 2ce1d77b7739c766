use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;
use crate::rng::{substream, Stream};
use crate::svar::VarModel;

/// A VAR with standard-normal structural innovations.
#[derive(Debug, Clone, PartialEq)]
pub struct VarDgp {
    pub model: VarModel,
    /// Structural impact matrix; when absent the Cholesky factor is used.
    pub impact: Option<DMatrix<f64>>,
}

impl VarDgp {
    pub fn new(model: VarModel, impact: Option<DMatrix<f64>>) -> Result<Self> {
        if model.spectral_radius() >= 1.0 {
            return Err(Error::UnstableDgp);
        }
        if let Some(b) = &impact {
            if b.shape() != (model.n, model.n) {
                return Err(Error::DimensionMismatch("impact matrix shape".into()));
            }
            let err = (b * b.transpose() - &model.sigma).abs().max();
            if err > 1e-10 {
                return Err(Error::InvalidArgument(format!("B B' differs from sigma by {err:e}")));
            }
        }
        Ok(Self { model, impact })
    }

    /// Builds the model with `sigma = B B'`.
    pub fn structural(coef: DMatrix<f64>, impact: DMatrix<f64>) -> Result<Self> {
        let sigma = &impact * impact.transpose();
        Self::new(VarModel::new(coef, sigma)?, Some(impact))
    }

    fn impact_or_chol(&self) -> Result<DMatrix<f64>> {
        match &self.impact {
            Some(b) => Ok(b.clone()),
            None => Ok(self
                .model
                .sigma
                .clone()
                .cholesky()
                .ok_or(Error::RankDeficient("innovation covariance".into()))?
                .l()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedVar {
    /// `T x n` levels.
    pub data: DMatrix<f64>,
    /// `T x n` unit-normal structural draws.
    pub shocks: DMatrix<f64>,
}

impl SimulatedVar {
    pub fn to_frame(&self, names: &[&str]) -> Result<TimeSeriesFrame> {
        if names.len() != self.data.ncols() {
            return Err(Error::DimensionMismatch("column names".into()));
        }
        let mut f = TimeSeriesFrame::quarterly(self.data.nrows());
        for (j, name) in names.iter().enumerate() {
            f.push_column(*name, self.data.column(j).iter().copied().collect())?;
        }
        Ok(f)
    }
}

/// Iterates the VAR from zero initial conditions and drops `burn_in` rows.
pub fn simulate_var(dgp: &VarDgp, t: usize, burn_in: usize, seed: u64) -> Result<SimulatedVar> {
    if t == 0 {
        return Err(Error::InvalidArgument("T must be positive".into()));
    }
    let m = &dgp.model;
    let (n, p) = (m.n, m.p);
    let b = dgp.impact_or_chol()?;
    let c = m.intercept();
    let lags: Vec<DMatrix<f64>> = (1..=p).map(|l| m.lag(l)).collect();
    let mut rng = substream(seed, Stream::Simulation, 1, 0);
    let total = t + burn_in;
    let mut hist: Vec<DVector<f64>> = vec![DVector::zeros(n); p];
    let mut data = DMatrix::zeros(t, n);
    let mut shocks = DMatrix::zeros(t, n);
    for step in 0..total {
        let z = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
        let mut y = &c + &b * &z;
        for (l, a) in lags.iter().enumerate() {
            y += a * &hist[hist.len() - 1 - l];
        }
        if y.iter().any(|v| !v.is_finite() || v.abs() > 1e6) {
            return Err(Error::ExplosivePath);
        }
        if step >= burn_in {
            data.set_row(step - burn_in, &y.transpose());
            shocks.set_row(step - burn_in, &z.transpose());
        }
        hist.push(y);
        if hist.len() > p {
            hist.remove(0);
        }
    }
    Ok(SimulatedVar { data, shocks })
}
