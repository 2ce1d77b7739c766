use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::data::RegressionData;
use super::hac::{hac_covariance, HacOptions};
use crate::error::{Error, Result};
use crate::svar::var::check_full_rank;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GmmResult {
    pub estimator: String,
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    /// Bartlett-HAC standard errors.
    pub std_errors: Vec<f64>,
    /// Conventional homoskedastic standard errors (OLS only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iid_std_errors: Option<Vec<f64>>,
    pub j_stat: f64,
    pub j_df: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bootstrap_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_stage_f: Option<f64>,
    pub nobs: usize,
    pub bandwidth: usize,
    #[serde(skip)]
    pub covariance: DMatrix<f64>,
    #[serde(skip)]
    pub residuals: DVector<f64>,
}

impl GmmResult {
    pub fn coef(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| n == name).map(|j| self.coefficients[j])
    }

    pub fn se(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| n == name).map(|j| self.std_errors[j])
    }

    pub fn fitted(&self, data: &RegressionData) -> DVector<f64> {
        &data.x * DVector::from_column_slice(&self.coefficients)
    }
}

/// Inverse of a symmetric positive definite matrix; `err` on failure.
fn spd_inverse(m: &DMatrix<f64>, err: Error) -> Result<DMatrix<f64>> {
    let sym = (m + m.transpose()) * 0.5;
    match sym.clone().cholesky() {
        Some(c) => Ok(c.inverse()),
        None => Err(err),
    }
}

/// Rows of `m` scaled by the matching entry of `u`.
fn scale_rows(m: &DMatrix<f64>, u: &DVector<f64>) -> DMatrix<f64> {
    let mut out = m.clone();
    for (i, mut row) in out.row_iter_mut().enumerate() {
        row *= u[i];
    }
    out
}

fn std_errors(v: &DMatrix<f64>) -> Vec<f64> {
    v.diagonal().iter().map(|d| d.max(0.0).sqrt()).collect()
}

pub fn ols_hac(data: &RegressionData, hac: &HacOptions) -> Result<GmmResult> {
    let t = data.nobs();
    let k = data.x.ncols();
    if t <= k {
        return Err(Error::InsufficientData { need: k + 1, have: t });
    }
    check_full_rank(&data.x).map_err(|_| Error::RankDeficient("regressors".into()))?;
    let xtx = data.x.transpose() * &data.x;
    let xtx_inv = spd_inverse(&xtx, Error::RankDeficient("regressors".into()))?;
    let b = &xtx_inv * (data.x.transpose() * &data.y);
    let u = &data.y - &data.x * &b;
    let s = hac_covariance(&scale_rows(&data.x, &u), hac.bandwidth);
    let tf = t as f64;
    let v = &xtx_inv * s * &xtx_inv * tf;
    let v = (&v + v.transpose()) * 0.5;
    let sigma2 = u.norm_squared() / (t - k) as f64;
    let iid = std_errors(&(&xtx_inv * sigma2));
    Ok(GmmResult {
        estimator: "ols".into(),
        names: data.x_names.clone(),
        coefficients: b.iter().copied().collect(),
        std_errors: std_errors(&v),
        iid_std_errors: Some(iid),
        j_stat: 0.0,
        j_df: 0,
        bootstrap_p: None,
        first_stage_f: None,
        nobs: t,
        bandwidth: hac.bandwidth,
        covariance: v,
        residuals: u,
    })
}

/// Weighted GMM step: `b = (X'Z W Z'X)^{-1} X'Z W Z'y`.
fn gmm_step(data: &RegressionData, w: &DMatrix<f64>) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let zx = data.z.transpose() * &data.x;
    let a = zx.transpose() * w * &zx;
    let a_inv = spd_inverse(&a, Error::RankDeficient("Z'X".into()))?;
    let b = &a_inv * (zx.transpose() * w * (data.z.transpose() * &data.y));
    Ok((b, a_inv))
}

/// Two-step efficient GMM: 2SLS first, then the inverse Bartlett-HAC
/// covariance of the first-step moments. `J = T g' W g` at the second step.
pub fn gmm_two_step(data: &RegressionData, hac: &HacOptions) -> Result<GmmResult> {
    let t = data.nobs();
    let (k, m) = (data.x.ncols(), data.z.ncols());
    if m < k {
        return Err(Error::RankDeficient(format!("{m} instruments for {k} parameters")));
    }
    if t <= m {
        return Err(Error::InsufficientData { need: m + 1, have: t });
    }
    check_full_rank(&data.z).map_err(|_| Error::RankDeficient("instruments".into()))?;
    check_full_rank(&data.x).map_err(|_| Error::RankDeficient("regressors".into()))?;
    let tf = t as f64;

    let zz = data.z.transpose() * &data.z / tf;
    let w1 = spd_inverse(&zz, Error::RankDeficient("instruments".into()))?;
    let (b1, _) = gmm_step(data, &w1)?;
    let u1 = &data.y - &data.x * &b1;
    let s = hac_covariance(&scale_rows(&data.z, &u1), hac.bandwidth);
    let w2 = spd_inverse(&s, Error::WeightingSingular)?;
    if !w2.iter().all(|v| v.is_finite()) {
        return Err(Error::WeightingSingular);
    }

    let (b2, _) = gmm_step(data, &w2)?;
    let u2 = &data.y - &data.x * &b2;
    let gbar = data.z.transpose() * &u2 / tf;
    let j = (tf * (gbar.transpose() * &w2 * &gbar)[(0, 0)]).max(0.0);
    let g = data.z.transpose() * &data.x / tf;
    let v = spd_inverse(&(g.transpose() * &w2 * &g), Error::RankDeficient("Z'X".into()))? / tf;
    let v = (&v + v.transpose()) * 0.5;
    Ok(GmmResult {
        estimator: "gmm".into(),
        names: data.x_names.clone(),
        coefficients: b2.iter().copied().collect(),
        std_errors: std_errors(&v),
        iid_std_errors: None,
        j_stat: j,
        j_df: m - k,
        bootstrap_p: None,
        first_stage_f: None,
        nobs: t,
        bandwidth: hac.bandwidth,
        covariance: v,
        residuals: u2,
    })
}

/// Plain 2SLS point estimates (the first GMM step).
pub fn two_stage_least_squares(data: &RegressionData) -> Result<Vec<f64>> {
    check_full_rank(&data.z).map_err(|_| Error::RankDeficient("instruments".into()))?;
    let zz = data.z.transpose() * &data.z;
    let w = spd_inverse(&zz, Error::RankDeficient("instruments".into()))?;
    Ok(gmm_step(data, &w)?.0.iter().copied().collect())
}

/// HAC Wald F for the excluded instruments in the regression of the single
/// endogenous regressor on all instruments. A perfect first-stage fit gives
/// `f64::INFINITY`.
pub fn first_stage_f(data: &RegressionData, hac: &HacOptions) -> Result<f64> {
    let [e] = data.endogenous[..] else {
        return Err(Error::InvalidArgument("first-stage F needs exactly one endogenous regressor".into()));
    };
    let excluded = data.excluded_instruments();
    if excluded.is_empty() {
        return Err(Error::RankDeficient("no excluded instruments".into()));
    }
    let stage = RegressionData::exogenous(data.x.column(e).into_owned(), data.z.clone(), data.z_names.clone())?;
    let fit = ols_hac(&stage, hac)?;
    let q = excluded.len();
    let scale = stage.y.amax().max(1.0);
    if fit.residuals.amax() <= 1e-12 * scale {
        return Ok(f64::INFINITY);
    }
    let pi = DVector::from_iterator(q, excluded.iter().map(|&j| fit.coefficients[j]));
    let v = DMatrix::from_fn(q, q, |a, b| fit.covariance[(excluded[a], excluded[b])]);
    let wald = match v.clone().cholesky() {
        Some(c) => (pi.transpose() * c.solve(&pi))[(0, 0)],
        None => return Ok(f64::INFINITY),
    };
    Ok(wald / q as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{substream, Stream};
    use rand_distr::{Distribution, StandardNormal};

    fn random_data(t: usize, k: usize, extra: usize, seed: u64) -> RegressionData {
        let mut rng = substream(seed, Stream::MonteCarlo, 99, 0);
        let mut z = || -> f64 { StandardNormal.sample(&mut rng) };
        let zmat = DMatrix::from_fn(t, k + extra, |_, j| if j == 0 { 1.0 } else { z() });
        let mut x = zmat.columns(0, k).into_owned();
        // last regressor endogenous: correlated with the error
        let u = DVector::from_fn(t, |_, _| z());
        for i in 0..t {
            let pi: f64 = (k..k + extra).map(|j| zmat[(i, j)]).sum::<f64>() * 0.5;
            x[(i, k - 1)] += pi + 0.5 * u[i];
        }
        let b = DVector::from_fn(k, |j, _| 1.0 + j as f64 * 0.5);
        let y = &x * b + u;
        let xn = (0..k).map(|j| format!("x{j}")).collect();
        let zn = (0..k + extra)
            .map(|j| if j < k - 1 { format!("x{j}") } else { format!("z{j}") })
            .collect();
        RegressionData::new(y, x, xn, zmat, zn, vec![k - 1]).unwrap()
    }

    #[test]
    fn exact_data_gives_exact_coefficients() {
        let x = DMatrix::from_fn(20, 2, |i, j| if j == 0 { 1.0 } else { (i as f64).sin() });
        let y = DVector::from_fn(20, |i, _| 2.0 - 3.0 * (i as f64).sin());
        let d = RegressionData::exogenous(y, x, vec!["c".into(), "x".into()]).unwrap();
        let r = ols_hac(&d, &HacOptions::default()).unwrap();
        assert!((r.coefficients[0] - 2.0).abs() < 1e-12);
        assert!((r.coefficients[1] + 3.0).abs() < 1e-12);
        assert!(r.std_errors.iter().all(|s| *s < 1e-12));
    }

    #[test]
    fn bandwidth_zero_is_white_sandwich() {
        let d = random_data(80, 2, 0, 1).with_y(DVector::from_fn(80, |i, _| (i as f64 * 0.37).cos()));
        let d = RegressionData::exogenous(d.y.clone(), d.x.clone(), d.x_names.clone()).unwrap();
        let r = ols_hac(&d, &HacOptions::new(0)).unwrap();
        let xtx_inv = (d.x.transpose() * &d.x).try_inverse().unwrap();
        let mut meat = DMatrix::zeros(2, 2);
        for i in 0..80 {
            let xi = d.x.row(i).transpose();
            meat += &xi * xi.transpose() * r.residuals[i].powi(2);
        }
        let v = &xtx_inv * meat * &xtx_inv;
        assert!((v - &r.covariance).amax() < 1e-12);
    }

    #[test]
    fn exactly_identified_is_ols_with_zero_j() {
        let d = random_data(120, 3, 0, 2);
        let d = RegressionData::exogenous(d.y.clone(), d.x.clone(), d.x_names.clone()).unwrap();
        let o = ols_hac(&d, &HacOptions::default()).unwrap();
        let g = gmm_two_step(&d, &HacOptions::default()).unwrap();
        let iv = two_stage_least_squares(&d).unwrap();
        for j in 0..3 {
            assert!((o.coefficients[j] - g.coefficients[j]).abs() < 1e-10);
            assert!((iv[j] - g.coefficients[j]).abs() < 1e-10);
        }
        assert!(g.j_stat < 1e-10);
        assert_eq!(g.j_df, 0);
    }

    #[test]
    fn j_invariant_to_instrument_reparameterization() {
        let d = random_data(150, 2, 3, 3);
        let base = gmm_two_step(&d, &HacOptions::default()).unwrap();
        let m = d.z.ncols();
        let a = DMatrix::from_fn(m, m, |i, j| if i == j { 2.0 + i as f64 } else { 0.3 * ((i * m + j) as f64).sin() });
        let d2 = RegressionData { z: &d.z * a, ..d.clone() };
        let re = gmm_two_step(&d2, &HacOptions::default()).unwrap();
        assert!((base.j_stat - re.j_stat).abs() < 1e-8);
        for j in 0..2 {
            assert!((base.coefficients[j] - re.coefficients[j]).abs() < 1e-8);
        }
    }

    #[test]
    fn fewer_instruments_than_parameters_rejected() {
        let d = random_data(60, 3, 0, 4);
        let thin = RegressionData { z: d.z.columns(0, 2).into_owned(), z_names: d.z_names[..2].to_vec(), ..d };
        assert!(matches!(gmm_two_step(&thin, &HacOptions::default()), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn collinear_regressors_rejected() {
        let x = DMatrix::from_fn(30, 2, |_, _| 1.0);
        let d = RegressionData::exogenous(DVector::from_element(30, 1.0), x, vec!["a".into(), "b".into()]).unwrap();
        assert!(matches!(ols_hac(&d, &HacOptions::default()), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn first_stage_perfect_fit_is_infinite() {
        let mut d = random_data(100, 2, 2, 5);
        let zcol = d.z.column(2).into_owned();
        d.x.set_column(1, &zcol);
        assert_eq!(first_stage_f(&d, &HacOptions::default()).unwrap(), f64::INFINITY);
    }

    #[test]
    fn first_stage_strong_instruments() {
        let d = random_data(200, 2, 2, 6);
        let f = first_stage_f(&d, &HacOptions::default()).unwrap();
        assert!(f > 10.0, "{f}");
    }

    #[test]
    fn hac_standard_errors_symmetric() {
        let d = random_data(100, 2, 3, 7);
        let g = gmm_two_step(&d, &HacOptions::default()).unwrap();
        assert!((&g.covariance - g.covariance.transpose()).amax() < 1e-12);
        assert!(g.std_errors.iter().all(|s| *s > 0.0));
        assert!(g.j_stat >= 0.0);
    }
}
