//! Sign-restriction search with loose-rationality importance weights.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::posterior::{sample_posterior, PosteriorDraw};
use super::rotation::draw_rotation;
use super::var::{fit_ols, OlsVar, VarData};
use crate::bnk::{sign_pattern, Sign, ShockKind, SignPattern};
use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;
use crate::numeric::ess;
use crate::rng::{substream, Stream};

/// Positions of the model roles among the VAR variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableRoleMap {
    pub exp_rate: usize,
    pub exp_output: usize,
    pub exp_inflation: usize,
    pub rate: usize,
    pub output: Option<usize>,
    pub inflation: Option<usize>,
    pub hours: Option<usize>,
    pub bond: Option<usize>,
    pub sentiment: usize,
}

impl VariableRoleMap {
    /// Conventional column names, in the order of the nine-variable system.
    pub const DEFAULT_NAMES: [&'static str; 9] =
        ["e_r", "e_y", "e_p", "r", "y", "p", "h", "bond", "s"];

    /// The nine roles at positions `0..9` of [`Self::DEFAULT_NAMES`].
    pub fn standard() -> Self {
        Self {
            exp_rate: 0,
            exp_output: 1,
            exp_inflation: 2,
            rate: 3,
            output: Some(4),
            inflation: Some(5),
            hours: Some(6),
            bond: Some(7),
            sentiment: 8,
        }
    }

    /// Locates roles by column name; the optional roles may be missing.
    pub fn from_names(names: &[&str], role_names: &[&str; 9]) -> Result<Self> {
        let find = |k: usize| names.iter().position(|n| *n == role_names[k]);
        let need = |k: usize| find(k).ok_or_else(|| Error::MissingColumn(role_names[k].to_string()));
        let map = Self {
            exp_rate: need(0)?,
            exp_output: need(1)?,
            exp_inflation: need(2)?,
            rate: need(3)?,
            output: find(4),
            inflation: find(5),
            hours: find(6),
            bond: find(7),
            sentiment: need(8)?,
        };
        map.validate(names.len())?;
        Ok(map)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let mut all = vec![self.exp_rate, self.exp_output, self.exp_inflation, self.rate, self.sentiment];
        all.extend([self.output, self.inflation, self.hours, self.bond].into_iter().flatten());
        if all.iter().any(|&i| i >= n) {
            return Err(Error::InvalidArgument("role index out of range".into()));
        }
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != all.len() {
            return Err(Error::InvalidArgument("role indices must be distinct".into()));
        }
        Ok(())
    }
}

/// Column and sign chosen for each identified shock, in
/// [`ShockKind::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub columns: [usize; 3],
    pub signs: [i8; 3],
}

/// The realized-variable objects a survey expectation should match: the mean
/// rate response over horizons `1..=H`, and output and inflation at `H`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizonObjects {
    pub rate_mean: f64,
    pub output: Option<f64>,
    pub inflation: Option<f64>,
}

/// Impact and short-horizon responses of one draw, `resp[h] = Psi_h B`.
pub struct DrawResponses<'a> {
    pub resp: &'a [DMatrix<f64>],
}

impl DrawResponses<'_> {
    fn horizon_objects(&self, roles: &VariableRoleMap, col: usize, sign: f64) -> HorizonObjects {
        let h = self.resp.len() - 1;
        let rate_mean = (1..=h).map(|k| self.resp[k][(roles.rate, col)]).sum::<f64>() / h as f64;
        HorizonObjects {
            rate_mean: sign * rate_mean,
            output: roles.output.map(|i| sign * self.resp[h][(i, col)]),
            inflation: roles.inflation.map(|i| sign * self.resp[h][(i, col)]),
        }
    }

    fn admits(&self, roles: &VariableRoleMap, pat: &SignPattern, col: usize, sign: f64) -> bool {
        let b = |i: usize| sign * self.resp[0][(i, col)];
        let opt = |s: Sign, i: Option<usize>| i.is_none_or(|i| s.admits(b(i)));
        if !(pat.rate.admits(b(roles.rate))
            && pat.sentiment.admits(b(roles.sentiment))
            && pat.exp_rate.admits(b(roles.exp_rate))
            && pat.exp_output.admits(b(roles.exp_output))
            && pat.exp_inflation.admits(b(roles.exp_inflation))
            && opt(pat.output, roles.output)
            && opt(pat.inflation, roles.inflation))
        {
            return false;
        }
        let ho = self.horizon_objects(roles, col, sign);
        pat.exp_rate.admits(ho.rate_mean)
            && ho.output.is_none_or(|v| pat.exp_output.admits(v))
            && ho.inflation.is_none_or(|v| pat.exp_inflation.admits(v))
    }

    /// Squared distance between the expectation rows' impact response and
    /// the realized-variable objects for column `col`.
    pub fn discrepancy(&self, roles: &VariableRoleMap, col: usize, sign: f64) -> f64 {
        let b = |i: usize| sign * self.resp[0][(i, col)];
        let ho = self.horizon_objects(roles, col, sign);
        let mut d = (b(roles.exp_rate) - ho.rate_mean).powi(2);
        if let Some(v) = ho.output {
            d += (b(roles.exp_output) - v).powi(2);
        }
        if let Some(v) = ho.inflation {
            d += (b(roles.exp_inflation) - v).powi(2);
        }
        d
    }
}

/// Lexicographically first valid assignment: shocks in [`ShockKind::ALL`]
/// order, columns ascending, `+` before `-`.
pub fn match_signs(
    responses: &DrawResponses<'_>,
    roles: &VariableRoleMap,
    patterns: &[SignPattern; 3],
) -> Option<Assignment> {
    let n = responses.resp[0].ncols();
    let candidates: Vec<Vec<(usize, f64)>> = patterns
        .iter()
        .map(|pat| {
            (0..n)
                .flat_map(|c| [(c, 1.0), (c, -1.0)])
                .filter(|&(c, s)| responses.admits(roles, pat, c, s))
                .collect()
        })
        .collect();
    for &(c0, s0) in &candidates[0] {
        for &(c1, s1) in &candidates[1] {
            if c1 == c0 {
                continue;
            }
            for &(c2, s2) in &candidates[2] {
                if c2 == c0 || c2 == c1 {
                    continue;
                }
                return Some(Assignment {
                    columns: [c0, c1, c2],
                    signs: [s0 as i8, s1 as i8, s2 as i8],
                });
            }
        }
    }
    None
}

/// `exp(-d / (2 delta))`; an infinite `delta` gives 1.
pub fn loose_weight_from_discrepancy(d: f64, delta: f64) -> f64 {
    if delta.is_infinite() {
        1.0
    } else {
        (-d / (2.0 * delta)).exp()
    }
}

/// Per-shock weights `(w_a, w_u, w_s)` for an assignment.
pub fn loose_weight(
    responses: &DrawResponses<'_>,
    assignment: &Assignment,
    roles: &VariableRoleMap,
    delta: f64,
) -> [f64; 3] {
    std::array::from_fn(|k| {
        let d = responses.discrepancy(roles, assignment.columns[k], assignment.signs[k] as f64);
        loose_weight_from_discrepancy(d, delta)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentifyOptions {
    pub lags: usize,
    pub draws: usize,
    pub rotations: usize,
    pub delta: f64,
    pub shrink: f64,
    /// Horizon of the expectation consistency checks.
    pub check_horizon: usize,
    pub seed: u64,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        Self { lags: 2, draws: 100, rotations: 2000, delta: 0.5, shrink: 4.0, check_horizon: 4, seed: 1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptedRotation {
    pub draw: usize,
    pub rotation: usize,
    pub q: DMatrix<f64>,
    /// Structural impact matrix `P Q`.
    pub b: DMatrix<f64>,
    pub assignment: Assignment,
    /// Squared expectation discrepancies, one per identified shock.
    pub discrepancy: [f64; 3],
    pub weights: [f64; 3],
}

impl AcceptedRotation {
    /// Sign-normalised impact column of identified shock `k`.
    pub fn shock_column(&self, k: usize) -> nalgebra::DVector<f64> {
        self.b.column(self.assignment.columns[k]) * self.assignment.signs[k] as f64
    }
}

#[derive(Debug, Clone)]
pub struct IdentifiedSet {
    pub names: Vec<String>,
    pub roles: VariableRoleMap,
    pub options: IdentifyOptions,
    pub ols: OlsVar,
    pub draws: Vec<PosteriorDraw>,
    pub accepted: Vec<AcceptedRotation>,
    pub rotations_tried: usize,
    pub ess: [f64; 3],
}

impl IdentifiedSet {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted.len() as f64 / self.rotations_tried as f64
    }

    pub fn weights(&self, k: usize) -> Vec<f64> {
        self.accepted.iter().map(|a| a.weights[k]).collect()
    }

    /// Same accepted rotations under a different penalty; `f64::INFINITY`
    /// gives uniform weights.
    pub fn reweighted(&self, delta: f64) -> Result<Self> {
        let mut out = self.clone();
        out.options.delta = delta;
        for a in &mut out.accepted {
            a.weights = a.discrepancy.map(|d| loose_weight_from_discrepancy(d, delta));
        }
        out.ess = compute_ess(&out.accepted)?;
        Ok(out)
    }

    pub fn draw_of(&self, a: &AcceptedRotation) -> &PosteriorDraw {
        &self.draws[a.draw]
    }
}

fn compute_ess(accepted: &[AcceptedRotation]) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let w: Vec<f64> = accepted.iter().map(|a| a.weights[k]).collect();
        *slot = ess(&w)?;
    }
    Ok(out)
}

/// Evaluates rotation `j` of `draw`; pure in `(seed, draw, j)`.
fn evaluate_rotation(
    draw: &PosteriorDraw,
    base: &[DMatrix<f64>],
    j: usize,
    roles: &VariableRoleMap,
    patterns: &[SignPattern; 3],
    opts: &IdentifyOptions,
) -> Option<AcceptedRotation> {
    let n = draw.model.n;
    let mut rng = substream(opts.seed, Stream::Rotation, draw.index as u64, j as u64);
    let q = draw_rotation(n, &mut rng);
    let resp: Vec<DMatrix<f64>> = base.iter().map(|m| m * &q).collect();
    let view = DrawResponses { resp: &resp };
    let assignment = match_signs(&view, roles, patterns)?;
    let discrepancy: [f64; 3] = std::array::from_fn(|k| {
        view.discrepancy(roles, assignment.columns[k], assignment.signs[k] as f64)
    });
    Some(AcceptedRotation {
        draw: draw.index,
        rotation: j,
        b: &draw.chol * &q,
        q,
        assignment,
        discrepancy,
        weights: discrepancy.map(|d| loose_weight_from_discrepancy(d, opts.delta)),
    })
}

pub fn identify_with_patterns(
    data: VarData,
    names: Vec<String>,
    roles: VariableRoleMap,
    patterns: [SignPattern; 3],
    opts: &IdentifyOptions,
) -> Result<IdentifiedSet> {
    if opts.draws == 0 || opts.rotations == 0 {
        return Err(Error::InvalidArgument("draws and rotations must be at least 1".into()));
    }
    if opts.check_horizon == 0 {
        return Err(Error::InvalidArgument("check horizon must be at least 1".into()));
    }
    if !(opts.delta > 0.0) {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    roles.validate(data.n())?;
    let ols = fit_ols(data)?;
    let draws = sample_posterior(&ols, opts.draws, opts.shrink, opts.seed)?;

    let mut accepted = Vec::new();
    for draw in &draws {
        let psi = draw.model.ma_coefficients(opts.check_horizon);
        let base: Vec<DMatrix<f64>> = psi.iter().map(|m| m * &draw.chol).collect();
        let found: Vec<AcceptedRotation> = (0..opts.rotations)
            .into_par_iter()
            .filter_map(|j| evaluate_rotation(draw, &base, j, &roles, &patterns, opts))
            .collect();
        accepted.extend(found);
    }
    if accepted.is_empty() {
        return Err(Error::EmptyIdentifiedSet);
    }
    let ess = compute_ess(&accepted)?;
    Ok(IdentifiedSet {
        names,
        roles,
        options: opts.clone(),
        ols,
        draws,
        rotations_tried: opts.draws * opts.rotations,
        accepted,
        ess,
    })
}

/// Full identification pipeline on the frame columns `names` (VAR order).
pub fn identify(
    frame: &TimeSeriesFrame,
    names: &[&str],
    roles: VariableRoleMap,
    opts: &IdentifyOptions,
) -> Result<IdentifiedSet> {
    let data = VarData::from_frame(frame, names, opts.lags)?;
    let patterns = ShockKind::ALL.map(sign_pattern);
    identify_with_patterns(
        data,
        names.iter().map(|s| s.to_string()).collect(),
        roles,
        patterns,
        opts,
    )
}
