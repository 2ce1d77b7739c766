//! Post-identification summaries over the accepted rotations.
//!
//! Every summary of an identified shock uses that shock's own weights.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::identify::{AcceptedRotation, IdentifiedSet};
use super::var::VarModel;
use crate::bnk::ShockKind;
use crate::error::{Error, Result};
use crate::numeric::weighted_quantiles;

pub const BAND_68: [f64; 3] = [0.5, 0.16, 0.84];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub median: f64,
    pub lo68: f64,
    pub hi68: f64,
}

pub fn band(values: &[f64], weights: &[f64]) -> Result<Band> {
    let q = weighted_quantiles(values, weights, &BAND_68)?;
    Ok(Band { median: q[0], lo68: q[1], hi68: q[2] })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrfRow {
    pub shock: ShockKind,
    pub variable: String,
    pub horizon: usize,
    #[serde(flatten)]
    pub band: Band,
}

fn nonempty(set: &IdentifiedSet) -> Result<()> {
    if set.accepted.is_empty() {
        Err(Error::EmptyIdentifiedSet)
    } else {
        Ok(())
    }
}

/// MA coefficients per posterior draw that owns an accepted rotation.
fn ma_cache(set: &IdentifiedSet, h_max: usize, model: impl Fn(&VarModel) -> VarModel) -> HashMap<usize, Vec<DMatrix<f64>>> {
    let mut cache = HashMap::new();
    for a in &set.accepted {
        cache
            .entry(a.draw)
            .or_insert_with(|| model(&set.draws[a.draw].model).ma_coefficients(h_max));
    }
    cache
}

/// Responses `[h][variable]` of identified shock `k` for one rotation.
fn shock_paths(psi: &[DMatrix<f64>], a: &AcceptedRotation, k: usize, horizons: usize) -> Vec<DVector<f64>> {
    let col = a.shock_column(k);
    psi.iter().take(horizons).map(|m| m * &col).collect()
}

fn summarize_paths(
    set: &IdentifiedSet,
    paths: &[[Vec<DVector<f64>>; 3]],
    horizons: usize,
) -> Result<Vec<IrfRow>> {
    let mut rows = Vec::new();
    for (k, shock) in ShockKind::ALL.into_iter().enumerate() {
        let w = set.weights(k);
        for (i, name) in set.names.iter().enumerate() {
            for h in 0..horizons {
                let v: Vec<f64> = paths.iter().map(|p| p[k][h][i]).collect();
                rows.push(IrfRow { shock, variable: name.clone(), horizon: h, band: band(&v, &w)? });
            }
        }
    }
    Ok(rows)
}

/// Weighted median IRFs with 68% bands, shock by shock.
pub fn irf(set: &IdentifiedSet, horizons: usize) -> Result<Vec<IrfRow>> {
    nonempty(set)?;
    let cache = ma_cache(set, horizons.saturating_sub(1), |m| m.clone());
    let paths: Vec<[Vec<DVector<f64>>; 3]> = set
        .accepted
        .iter()
        .map(|a| std::array::from_fn(|k| shock_paths(&cache[&a.draw], a, k, horizons)))
        .collect();
    summarize_paths(set, &paths, horizons)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaRobustness {
    pub delta: f64,
    /// Largest |median(delta) - median(uniform)| over every shock,
    /// variable and horizon.
    pub max_median_diff: f64,
    /// Mean 68% band widths over shocks, variables and horizons
    /// `0..=width_horizon`, the window the weights act on.
    pub width_horizon: usize,
    pub mean_width_delta: f64,
    pub mean_width_uniform: f64,
}

impl DeltaRobustness {
    pub fn weakly_narrower(&self) -> bool {
        self.mean_width_delta <= self.mean_width_uniform
    }
}

/// The set's own weights against uniform weights on the same rotations.
pub fn delta_robustness(set: &IdentifiedSet, horizons: usize) -> Result<DeltaRobustness> {
    let weighted = irf(set, horizons)?;
    let uniform = irf(&set.reweighted(f64::INFINITY)?, horizons)?;
    let max_median_diff = weighted
        .iter()
        .zip(&uniform)
        .map(|(a, b)| (a.band.median - b.band.median).abs())
        .fold(0.0, f64::max);
    let window = set.options.check_horizon;
    let width = |rows: &[IrfRow]| {
        let w: Vec<f64> = rows.iter().filter(|r| r.horizon <= window).map(|r| r.band.hi68 - r.band.lo68).collect();
        w.iter().sum::<f64>() / w.len() as f64
    };
    Ok(DeltaRobustness {
        delta: set.options.delta,
        max_median_diff,
        width_horizon: window,
        mean_width_delta: width(&weighted),
        mean_width_uniform: width(&uniform),
    })
}

/// Forecast-error variance shares `[h](variable, shock)` over all `n`
/// structural columns of `b`.
pub fn fevd_shares(model: &VarModel, b: &DMatrix<f64>, horizons: usize) -> Vec<DMatrix<f64>> {
    let n = model.n;
    let mut acc = DMatrix::<f64>::zeros(n, n);
    let mut out = Vec::with_capacity(horizons);
    for theta in model.irf(b, horizons) {
        acc += theta.component_mul(&theta);
        let mut shares = acc.clone();
        for i in 0..n {
            let total: f64 = acc.row(i).sum();
            shares.row_mut(i).scale_mut(1.0 / total);
        }
        out.push(shares);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FevdRow {
    pub shock: ShockKind,
    pub variable: String,
    pub horizon: usize,
    #[serde(flatten)]
    pub band: Band,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fevd {
    pub rows: Vec<FevdRow>,
    /// Largest deviation from one of the all-shock share sums, over every
    /// accepted rotation, variable and horizon.
    pub max_sum_error: f64,
}

pub fn fevd(set: &IdentifiedSet, horizons: usize) -> Result<Fevd> {
    nonempty(set)?;
    let mut max_sum_error = 0.0f64;
    let per: Vec<Vec<DMatrix<f64>>> = set
        .accepted
        .iter()
        .map(|a| {
            let s = fevd_shares(&set.draws[a.draw].model, &a.b, horizons);
            for m in &s {
                for i in 0..m.nrows() {
                    max_sum_error = max_sum_error.max((m.row(i).sum() - 1.0).abs());
                }
            }
            s
        })
        .collect();
    let mut rows = Vec::new();
    for (k, shock) in ShockKind::ALL.into_iter().enumerate() {
        let w = set.weights(k);
        for (i, name) in set.names.iter().enumerate() {
            for h in 0..horizons {
                let v: Vec<f64> = set
                    .accepted
                    .iter()
                    .zip(&per)
                    .map(|(a, s)| s[h][(i, a.assignment.columns[k])])
                    .collect();
                rows.push(FevdRow { shock, variable: name.clone(), horizon: h, band: band(&v, &w)? });
            }
        }
    }
    Ok(Fevd { rows, max_sum_error })
}

/// Additive decomposition of one rotation's sample path over every
/// structural column, by direct MA convolution.
#[derive(Debug, Clone, PartialEq)]
pub struct HdDraw {
    /// Structural shocks `T_eff x n` (columns of `B`, unsigned).
    pub shocks: DMatrix<f64>,
    /// Contribution of each structural column: `contributions[c]` is
    /// `T_eff x n`.
    pub contributions: Vec<DMatrix<f64>>,
    /// Intercept and initial-condition path, `T_eff x n`.
    pub deterministic: DMatrix<f64>,
    pub max_error: f64,
}

pub fn hd_for_rotation(set: &IdentifiedSet, a: &AcceptedRotation) -> Result<HdDraw> {
    let model = &set.draws[a.draw].model;
    let data = &set.ols.data;
    let (te, n, p) = (data.t_eff(), model.n, model.p);
    let u = model.residuals(data);
    let b_inv = a
        .b
        .clone()
        .try_inverse()
        .ok_or(Error::RankDeficient("structural impact matrix".into()))?;
    let shocks = &u * b_inv.transpose();
    let psi = model.ma_coefficients(te.saturating_sub(1));

    let mut contributions = Vec::with_capacity(n);
    for c in 0..n {
        let resp: Vec<DVector<f64>> = psi.iter().map(|m| m * a.b.column(c)).collect();
        let mut out = DMatrix::zeros(te, n);
        for t in 0..te {
            let mut v = DVector::zeros(n);
            for l in 0..=t {
                v += &resp[l] * shocks[(t - l, c)];
            }
            out.set_row(t, &v.transpose());
        }
        contributions.push(out);
    }

    // deterministic path: iterate the VAR from the presample with no shocks
    let mut hist: Vec<DVector<f64>> =
        (0..p).map(|r| data.levels.row(r).transpose()).collect();
    let c = model.intercept();
    let lags: Vec<DMatrix<f64>> = (1..=p).map(|l| model.lag(l)).collect();
    let mut deterministic = DMatrix::zeros(te, n);
    for t in 0..te {
        let mut v = c.clone();
        for (l, a_l) in lags.iter().enumerate() {
            v += a_l * &hist[hist.len() - 1 - l];
        }
        deterministic.set_row(t, &v.transpose());
        hist.push(v);
    }

    let mut recon = deterministic.clone();
    for m in &contributions {
        recon += m;
    }
    let max_error = (&recon - &data.y).abs().max();
    Ok(HdDraw { shocks, contributions, deterministic, max_error })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HdRow {
    pub date: String,
    pub variable: String,
    /// One of the shock labels, `remainder` or `deterministic`.
    pub component: String,
    #[serde(flatten)]
    pub band: Band,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistoricalDecomposition {
    pub rows: Vec<HdRow>,
    pub max_reconstruction_error: f64,
}

/// `out_t = sum_l A_l out_{t-l} + drive_t` from zero initial conditions.
/// `out` holds the drive on entry, row-major `T x n`.
fn filter_in_place(lags: &[DMatrix<f64>], out: &mut [f64], n: usize) {
    let te = out.len() / n;
    for t in 1..te {
        let (past, rest) = out.split_at_mut(t * n);
        let cur = &mut rest[..n];
        for (l, a) in lags.iter().enumerate().take(t) {
            let prev = &past[(t - l - 1) * n..(t - l) * n];
            // column-major storage: column j is a contiguous run
            for (&pj, col) in prev.iter().zip(a.as_slice().chunks_exact(n)) {
                for (c, &aij) in cur.iter_mut().zip(col) {
                    *c += aij * pj;
                }
            }
        }
    }
}

fn filter(lags: &[DMatrix<f64>], drive: &DMatrix<f64>) -> DMatrix<f64> {
    let (te, n) = drive.shape();
    let mut out: Vec<f64> = drive.transpose().as_slice().to_vec();
    filter_in_place(lags, &mut out, n);
    DMatrix::from_row_slice(te, n, &out)
}

/// Reduced-form paths shared by every rotation of one posterior draw.
struct DrawPaths {
    u: DMatrix<f64>,
    lags: Vec<DMatrix<f64>>,
    deterministic: DMatrix<f64>,
    /// All shocks together, `sum_l Psi_l u_{t-l}`.
    stochastic: DMatrix<f64>,
}

fn draw_paths(set: &IdentifiedSet, draw: usize) -> (DrawPaths, f64) {
    let model = &set.draws[draw].model;
    let data = &set.ols.data;
    let (te, p) = (data.t_eff(), model.p);
    let u = model.residuals(data);
    let lags: Vec<DMatrix<f64>> = (1..=p).map(|l| model.lag(l)).collect();
    let mut hist: Vec<DVector<f64>> = (0..p).map(|r| data.levels.row(r).transpose()).collect();
    let c = model.intercept();
    let mut deterministic = DMatrix::zeros(te, model.n);
    for t in 0..te {
        let mut v = c.clone();
        for (l, a_l) in lags.iter().enumerate() {
            v += a_l * &hist[hist.len() - 1 - l];
        }
        deterministic.set_row(t, &v.transpose());
        hist.push(v);
    }
    let stochastic = filter(&lags, &u);
    let err = (&deterministic + &stochastic - &data.y).abs().max();
    (DrawPaths { u, lags, deterministic, stochastic }, err)
}

/// Paths of the three identified columns, row-major `T x n` each, and the
/// largest `|B e_t - u_t|` over the sample.
fn identified_paths(dp: &DrawPaths, a: &AcceptedRotation) -> Result<([Vec<f64>; 3], f64)> {
    let b_inv = a.b.clone().try_inverse().ok_or(Error::RankDeficient("structural impact matrix".into()))?;
    let e = &dp.u * b_inv.transpose();
    let err = (&e * a.b.transpose() - &dp.u).abs().max();
    let n = a.b.nrows();
    let paths = std::array::from_fn(|k| {
        let c = a.assignment.columns[k];
        let b = a.b.column(c);
        let mut out: Vec<f64> = e.column(c).iter().flat_map(|&et| b.iter().map(move |bi| bi * et)).collect();
        filter_in_place(&dp.lags, &mut out, n);
        out
    });
    Ok((paths, err))
}

/// Upper bound on buffered contribution values per pass.
const HD_BUFFER: usize = 1 << 25;

/// Identified-shock contributions (weighted by their shock's weight) plus
/// the unidentified remainder and the deterministic path (weighted by the
/// mean of the three weights). `dates` label the rows after lag trimming.
///
/// The remainder is the all-shock path less the identified contributions.
/// The reconstruction error checks the deterministic plus all-shock path
/// against the data for every draw, and `B e_t = u_t` for every rotation.
pub fn historical_decomposition(set: &IdentifiedSet, dates: &[String]) -> Result<HistoricalDecomposition> {
    decompose(set, dates, HD_BUFFER)
}

fn decompose(set: &IdentifiedSet, dates: &[String], buffer: usize) -> Result<HistoricalDecomposition> {
    nonempty(set)?;
    let te = set.ols.data.t_eff();
    if dates.len() != te {
        return Err(Error::DimensionMismatch(format!("{} dates for {te} rows", dates.len())));
    }
    let n = set.names.len();
    let mut max_reconstruction_error = 0.0f64;
    let mut by_draw: HashMap<usize, DrawPaths> = HashMap::new();
    for a in &set.accepted {
        if let std::collections::hash_map::Entry::Vacant(slot) = by_draw.entry(a.draw) {
            let (dp, err) = draw_paths(set, a.draw);
            max_reconstruction_error = max_reconstruction_error.max(err);
            slot.insert(dp);
        }
    }
    let r = set.accepted.len();
    let owner: Vec<&DrawPaths> = set.accepted.iter().map(|a| &by_draw[&a.draw]).collect();
    let w: [Vec<f64>; 3] = std::array::from_fn(|k| set.weights(k));
    let mean_w: Vec<f64> = set.accepted.iter().map(|a| a.weights.iter().sum::<f64>() / 3.0).collect();

    let group = (buffer / (3 * te * r).max(1)).clamp(1, n);
    let mut rows = Vec::with_capacity(n * te * 5);
    for lo in (0..n).step_by(group) {
        let hi = (lo + group).min(n);
        let g = hi - lo;
        // cell-major: values of cell ((i - lo) * te + t) * 3 + k are contiguous
        let mut buf = vec![0.0; 3 * te * g * r];
        for (ri, a) in set.accepted.iter().enumerate() {
            let (paths, err) = identified_paths(owner[ri], a)?;
            max_reconstruction_error = max_reconstruction_error.max(err);
            for (k, path) in paths.iter().enumerate() {
                for i in lo..hi {
                    for t in 0..te {
                        buf[(((i - lo) * te + t) * 3 + k) * r + ri] = path[t * n + i];
                    }
                }
            }
        }
        for i in lo..hi {
            for t in 0..te {
                let cell = |k: usize| &buf[(((i - lo) * te + t) * 3 + k) * r..][..r];
                let mut row = |component: &str, band: Band| {
                    rows.push(HdRow { date: dates[t].clone(), variable: set.names[i].clone(), component: component.into(), band })
                };
                for (k, shock) in ShockKind::ALL.into_iter().enumerate() {
                    row(shock.label(), band(cell(k), &w[k])?);
                }
                let rem: Vec<f64> = owner
                    .iter()
                    .enumerate()
                    .map(|(ri, dp)| dp.stochastic[(t, i)] - (0..3).map(|k| cell(k)[ri]).sum::<f64>())
                    .collect();
                row("remainder", band(&rem, &mean_w)?);
                let det: Vec<f64> = owner.iter().map(|dp| dp.deterministic[(t, i)]).collect();
                row("deterministic", band(&det, &mean_w)?);
            }
        }
    }
    Ok(HistoricalDecomposition { rows, max_reconstruction_error })
}

/// Zeroes the lag coefficients of the sentiment variable in every other
/// equation.
pub fn shut_sentiment_channel(model: &VarModel, s: usize) -> VarModel {
    let mut m = model.clone();
    for l in 0..m.p {
        let col = 1 + l * m.n + s;
        for i in 0..m.n {
            if i != s {
                m.coef[(i, col)] = 0.0;
            }
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterfactualRow {
    pub shock: ShockKind,
    pub variable: String,
    pub horizon: usize,
    pub baseline: Band,
    pub counterfactual: Band,
}

/// Baseline and channel-shutdown IRFs of one identified shock.
pub fn counterfactual_irf(set: &IdentifiedSet, shock: ShockKind, horizons: usize) -> Result<Vec<CounterfactualRow>> {
    nonempty(set)?;
    let k = ShockKind::ALL.iter().position(|s| *s == shock).expect("known shock");
    let s = set.roles.sentiment;
    let h_max = horizons.saturating_sub(1);
    let base = ma_cache(set, h_max, |m| m.clone());
    let cf = ma_cache(set, h_max, |m| shut_sentiment_channel(m, s));
    let w = set.weights(k);
    let b_paths: Vec<Vec<DVector<f64>>> = set.accepted.iter().map(|a| shock_paths(&base[&a.draw], a, k, horizons)).collect();
    let c_paths: Vec<Vec<DVector<f64>>> = set.accepted.iter().map(|a| shock_paths(&cf[&a.draw], a, k, horizons)).collect();
    let mut rows = Vec::new();
    for (i, name) in set.names.iter().enumerate() {
        for h in 0..horizons {
            let bv: Vec<f64> = b_paths.iter().map(|p| p[h][i]).collect();
            let cv: Vec<f64> = c_paths.iter().map(|p| p[h][i]).collect();
            rows.push(CounterfactualRow {
                shock,
                variable: name.clone(),
                horizon: h,
                baseline: band(&bv, &w)?,
                counterfactual: band(&cv, &w)?,
            });
        }
    }
    Ok(rows)
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    sab / (saa * sbb).sqrt()
}

pub fn lag1_autocorrelation(x: &[f64]) -> f64 {
    let n = x.len();
    let m = x.iter().sum::<f64>() / n as f64;
    let den: f64 = x.iter().map(|v| (v - m).powi(2)).sum();
    let num: f64 = (1..n).map(|t| (x[t] - m) * (x[t - 1] - m)).sum();
    num / den
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShockRow {
    pub date: String,
    pub shock: ShockKind,
    #[serde(flatten)]
    pub band: Band,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub accepted: usize,
    pub rotations_tried: usize,
    pub acceptance_rate: f64,
    pub delta: f64,
    pub ess: [f64; 3],
    /// Pairs (a,u), (a,s), (u,s), weighted by `sqrt(w_j w_k)`.
    pub pair_correlations: [Band; 3],
    pub autocorrelations: [Band; 3],
    #[serde(skip)]
    pub shocks: Vec<ShockRow>,
}

/// Within-draw correlations of the recovered identified shocks.
pub fn shock_diagnostics(set: &IdentifiedSet, dates: &[String]) -> Result<Diagnostics> {
    nonempty(set)?;
    let te = set.ols.data.t_eff();
    if dates.len() != te {
        return Err(Error::DimensionMismatch(format!("{} dates for {te} rows", dates.len())));
    }
    let mut series: Vec<[Vec<f64>; 3]> = Vec::with_capacity(set.accepted.len());
    for a in &set.accepted {
        let model = &set.draws[a.draw].model;
        let u = model.residuals(&set.ols.data);
        let b_inv = a.b.clone().try_inverse().ok_or(Error::RankDeficient("impact matrix".into()))?;
        let e = &u * b_inv.transpose();
        series.push(std::array::from_fn(|k| {
            let c = a.assignment.columns[k];
            let sgn = a.assignment.signs[k] as f64;
            e.column(c).iter().map(|v| sgn * v).collect()
        }));
    }
    let w: [Vec<f64>; 3] = std::array::from_fn(|k| set.weights(k));
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut pair_correlations = [Band { median: 0.0, lo68: 0.0, hi68: 0.0 }; 3];
    for (slot, (j, k)) in pair_correlations.iter_mut().zip(pairs) {
        let v: Vec<f64> = series.iter().map(|s| correlation(&s[j], &s[k])).collect();
        let pw: Vec<f64> = w[j].iter().zip(&w[k]).map(|(a, b)| (a * b).sqrt()).collect();
        *slot = band(&v, &pw)?;
    }
    let mut autocorrelations = pair_correlations;
    for (k, slot) in autocorrelations.iter_mut().enumerate() {
        let v: Vec<f64> = series.iter().map(|s| lag1_autocorrelation(&s[k])).collect();
        *slot = band(&v, &w[k])?;
    }
    let mut shocks = Vec::new();
    for t in 0..te {
        for (k, shock) in ShockKind::ALL.into_iter().enumerate() {
            let v: Vec<f64> = series.iter().map(|s| s[k][t]).collect();
            shocks.push(ShockRow { date: dates[t].clone(), shock, band: band(&v, &w[k])? });
        }
    }
    Ok(Diagnostics {
        accepted: set.accepted.len(),
        rotations_tried: set.rotations_tried,
        acceptance_rate: set.acceptance_rate(),
        delta: set.options.delta,
        ess: set.ess,
        pair_correlations,
        autocorrelations,
        shocks,
    })
}
