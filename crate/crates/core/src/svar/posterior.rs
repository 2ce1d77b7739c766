//! Normal-Inverse-Wishart posterior under a g-prior centred at OLS.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use super::var::{OlsVar, VarModel};
use crate::error::{Error, Result};
use crate::rng::{substream, Stream};

#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorDraw {
    pub index: usize,
    pub model: VarModel,
    /// Lower Cholesky factor of the draw's covariance.
    pub chol: DMatrix<f64>,
    pub stable: bool,
}

/// Draws `W ~ Wishart(scale, df)` by the Bartlett decomposition.
fn wishart<R: Rng>(rng: &mut R, scale_chol: &DMatrix<f64>, df: f64) -> DMatrix<f64> {
    let n = scale_chol.nrows();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        let chi = ChiSquared::new(df - i as f64).expect("positive degrees of freedom");
        a[(i, i)] = chi.sample(rng).sqrt();
        for j in 0..i {
            a[(i, j)] = StandardNormal.sample(rng);
        }
    }
    let la = scale_chol * a;
    &la * la.transpose()
}

/// Posterior scale and degrees of freedom of `Sigma`.
pub fn iw_parameters(ols: &OlsVar) -> (DMatrix<f64>, f64) {
    let n = ols.model.n;
    let scale = &ols.scatter + DMatrix::identity(n, n) * 1e-6;
    (scale, (ols.data.t_eff() + n + 2) as f64)
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// One unfiltered draw of `(Phi, Sigma)`.
pub fn draw_model<R: Rng>(
    rng: &mut R,
    ols: &OlsVar,
    scale_inv_chol: &DMatrix<f64>,
    df: f64,
    v_chol: &DMatrix<f64>,
) -> Result<(VarModel, DMatrix<f64>)> {
    let n = ols.model.n;
    let k = ols.model.coef.ncols();
    let w = wishart(rng, scale_inv_chol, df);
    let sigma = symmetrize(
        w.cholesky().ok_or(Error::RankDeficient("Wishart draw".into()))?.inverse(),
    );
    let p_chol = sigma
        .clone()
        .cholesky()
        .ok_or(Error::RankDeficient("posterior covariance".into()))?
        .l();
    let z = DMatrix::from_fn(k, n, |_, _| StandardNormal.sample(rng));
    let b = ols.model.coef.transpose() + v_chol * z * p_chol.transpose();
    Ok((VarModel::new(b.transpose(), sigma)?, p_chol))
}

/// Samples `draws` stable posterior models from one seeded stream.
///
/// Coefficients are matrix-normal around OLS with column covariance
/// `(1 + shrink)^{-1} (X'X)^{-1}` and row covariance `Sigma`.
pub fn sample_posterior(
    ols: &OlsVar,
    draws: usize,
    shrink: f64,
    seed: u64,
) -> Result<Vec<PosteriorDraw>> {
    if draws == 0 {
        return Err(Error::InvalidArgument("draws must be at least 1".into()));
    }
    if !(shrink > 0.0) {
        return Err(Error::InvalidArgument("shrinkage must be positive".into()));
    }
    let (scale, df) = iw_parameters(ols);
    let scale_inv_chol = symmetrize(
        scale.cholesky().ok_or(Error::RankDeficient("IW scale".into()))?.inverse(),
    )
    .cholesky()
    .ok_or(Error::RankDeficient("IW scale inverse".into()))?
    .l();
    let v = symmetrize(&ols.xtx_inv / (1.0 + shrink));
    let v_chol = v.cholesky().ok_or(Error::RankDeficient("coefficient covariance".into()))?.l();

    let mut rng = substream(seed, Stream::Posterior, 0, 0);
    let cap = draws.saturating_mul(100);
    let mut out = Vec::with_capacity(draws);
    let mut attempts = 0;
    while out.len() < draws {
        if attempts >= cap {
            return Err(Error::StabilityExhausted { attempts });
        }
        attempts += 1;
        let (model, chol) = draw_model(&mut rng, ols, &scale_inv_chol, df, &v_chol)?;
        if model.is_stable() {
            out.push(PosteriorDraw { index: out.len(), model, chol, stable: true });
        }
    }
    Ok(out)
}
