//! Reduced-form VAR with intercept, estimated equation by equation.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;

/// `y_t = c + A_1 y_{t-1} + ... + A_p y_{t-p} + u_t`, `u_t ~ (0, sigma)`.
///
/// `coef` is `n x (1 + n p)` with columns `[c, A_1, ..., A_p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarModel {
    pub n: usize,
    pub p: usize,
    pub coef: DMatrix<f64>,
    pub sigma: DMatrix<f64>,
}

impl VarModel {
    pub fn new(coef: DMatrix<f64>, sigma: DMatrix<f64>) -> Result<Self> {
        let n = coef.nrows();
        if n == 0 || !(coef.ncols() - 1).is_multiple_of(n) || sigma.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "coef {:?}, sigma {:?}",
                coef.shape(),
                sigma.shape()
            )));
        }
        Ok(Self { n, p: (coef.ncols() - 1) / n, coef, sigma })
    }

    pub fn intercept(&self) -> DVector<f64> {
        self.coef.column(0).into_owned()
    }

    /// Lag matrix `A_l`, `l` in `1..=p`.
    pub fn lag(&self, l: usize) -> DMatrix<f64> {
        assert!(l >= 1 && l <= self.p);
        self.coef.columns(1 + (l - 1) * self.n, self.n).into_owned()
    }

    pub fn companion(&self) -> DMatrix<f64> {
        let (n, p) = (self.n, self.p);
        let mut c = DMatrix::zeros(n * p, n * p);
        for l in 1..=p {
            c.view_mut((0, (l - 1) * n), (n, n)).copy_from(&self.lag(l));
        }
        for i in n..n * p {
            c[(i, i - n)] = 1.0;
        }
        c
    }

    pub fn spectral_radius(&self) -> f64 {
        self.companion()
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_stable(&self) -> bool {
        self.spectral_radius() < 1.0
    }

    /// Moving-average matrices `Psi_0 = I, ..., Psi_h_max`.
    pub fn ma_coefficients(&self, h_max: usize) -> Vec<DMatrix<f64>> {
        let lags: Vec<DMatrix<f64>> = (1..=self.p).map(|l| self.lag(l)).collect();
        let mut psi = vec![DMatrix::identity(self.n, self.n)];
        for h in 1..=h_max {
            let mut m = DMatrix::zeros(self.n, self.n);
            for (l, a) in lags.iter().enumerate().take(h.min(self.p)) {
                m += a * &psi[h - 1 - l];
            }
            psi.push(m);
        }
        psi
    }

    /// Structural responses `Psi_h B` for `h = 0..horizons`.
    pub fn irf(&self, b: &DMatrix<f64>, horizons: usize) -> Vec<DMatrix<f64>> {
        self.ma_coefficients(horizons.saturating_sub(1))
            .iter()
            .map(|psi| psi * b)
            .collect()
    }

    /// One-step residuals `y_t - c - sum A_l y_{t-l}` for `t = p..T`.
    pub fn residuals(&self, data: &VarData) -> DMatrix<f64> {
        &data.y - &data.x * self.coef.transpose()
    }
}

/// Regressand and regressor matrices after lag trimming.
#[derive(Debug, Clone, PartialEq)]
pub struct VarData {
    /// `T_eff x n`.
    pub y: DMatrix<f64>,
    /// `T_eff x (1 + n p)`: intercept then lags 1..p.
    pub x: DMatrix<f64>,
    /// Full sample `T x n` including the `p` presample rows.
    pub levels: DMatrix<f64>,
    pub p: usize,
}

impl VarData {
    pub fn from_matrix(levels: DMatrix<f64>, p: usize) -> Result<Self> {
        let (t, n) = levels.shape();
        if p == 0 {
            return Err(Error::InvalidArgument("lag order must be at least 1".into()));
        }
        let need = n * p + n + 10 + p;
        if t < need {
            return Err(Error::InsufficientData { need, have: t });
        }
        let te = t - p;
        let y = levels.rows(p, te).into_owned();
        let mut x = DMatrix::zeros(te, 1 + n * p);
        for r in 0..te {
            x[(r, 0)] = 1.0;
            for l in 1..=p {
                for j in 0..n {
                    x[(r, 1 + (l - 1) * n + j)] = levels[(p + r - l, j)];
                }
            }
        }
        Ok(Self { y, x, levels, p })
    }

    pub fn from_frame(frame: &TimeSeriesFrame, names: &[&str], p: usize) -> Result<Self> {
        Self::from_matrix(frame.matrix(names)?, p)
    }

    pub fn n(&self) -> usize {
        self.y.ncols()
    }

    pub fn t_eff(&self) -> usize {
        self.y.nrows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OlsVar {
    pub model: VarModel,
    /// `(X'X)^{-1}`.
    pub xtx_inv: DMatrix<f64>,
    /// Residual cross-product `U'U`.
    pub scatter: DMatrix<f64>,
    pub data: VarData,
}

/// Rejects regressor matrices whose scaled condition number is too large.
pub(crate) fn check_full_rank(x: &DMatrix<f64>) -> Result<()> {
    let scaled = DMatrix::from_fn(x.nrows(), x.ncols(), |i, j| {
        let norm = x.column(j).norm();
        if norm > 0.0 {
            x[(i, j)] / norm
        } else {
            0.0
        }
    });
    let sv = scaled.singular_values();
    let max = sv.max();
    let min = sv.min();
    if !(max > 0.0) || min <= 1e-10 * max {
        return Err(Error::SingularRegressors);
    }
    Ok(())
}

pub fn fit_ols(data: VarData) -> Result<OlsVar> {
    check_full_rank(&data.x)?;
    let xtx = data.x.transpose() * &data.x;
    let xtx_inv = xtx
        .cholesky()
        .ok_or(Error::SingularRegressors)?
        .inverse();
    let b = &xtx_inv * (data.x.transpose() * &data.y);
    let u = &data.y - &data.x * &b;
    let scatter = u.transpose() * &u;
    let dof = data.t_eff() as f64 - data.x.ncols() as f64;
    let mut sigma = &scatter / dof;
    sigma = (&sigma + sigma.transpose()) * 0.5;
    let model = VarModel::new(b.transpose(), sigma)?;
    Ok(OlsVar { model, xtx_inv, scatter, data })
}

/// OLS VAR(p) on the frame's columns `names`, in that order.
pub fn fit_ols_var(frame: &TimeSeriesFrame, names: &[&str], p: usize) -> Result<OlsVar> {
    fit_ols(VarData::from_frame(frame, names, p)?)
}
