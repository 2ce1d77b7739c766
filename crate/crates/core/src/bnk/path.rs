//! Perfect-foresight impulse paths from a stacked, banded linear system.
//!
//! Unknowns are ordered `(x_t, pi_t, r_t, s_t)` for `t = 0..H`; values beyond
//! the stacking horizon are zero. Each date contributes four equations: IS
//! curve, Phillips curve, Taylor rule and sentiment law.

use serde::Serialize;

use super::calibration::{check_determinacy, Calibration};
use super::signs::ShockKind;
use super::stable::solve_stable_mode;
use crate::error::{Error, Result};
use crate::numeric::BandMatrix;
use crate::scalar::Real;

/// Which version of the sentiment law enters the stacked system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
pub enum SentimentLaw {
    /// Persistence plus the discounted distributed lag of fundamentals and
    /// communication over the announcement window.
    #[default]
    DistributedLag,
    /// Only the current-date fundamentals term (plus persistence); the
    /// system behind the closed-form impact algebra.
    CurrentOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpulseResponseSet<T> {
    pub shock: ShockKind,
    pub horizons: usize,
    /// Lead of the forward expectation paths: `e_r[h] = E_h[r_{h+lead}]`.
    pub expectation_lead: usize,
    pub r: Vec<T>,
    pub x: Vec<T>,
    pub pi: Vec<T>,
    pub s: Vec<T>,
    pub e_r: Vec<T>,
    pub e_x: Vec<T>,
    pub e_pi: Vec<T>,
}

impl<T: Real> ImpulseResponseSet<T> {
    pub fn series(&self) -> [(&'static str, &[T]); 7] {
        [
            ("r", &self.r),
            ("x", &self.x),
            ("pi", &self.pi),
            ("s", &self.s),
            ("e_r", &self.e_r),
            ("e_x", &self.e_x),
            ("e_pi", &self.e_pi),
        ]
    }
}

/// Forecast horizon the expectation paths refer to: the implementation date
/// for an announced change, one period otherwise.
pub fn expectation_lead(shock: ShockKind, tau: usize) -> usize {
    match shock {
        ShockKind::AnticipatedMP => tau,
        _ => 1,
    }
}

const X: usize = 0;
const PI: usize = 1;
const R: usize = 2;
const S: usize = 3;

#[inline]
fn idx(var: usize, t: usize) -> usize {
    4 * t + var
}

fn stack_length<T: Real>(cal: &Calibration<T>, horizons: usize, lead: usize) -> usize {
    let persistence = solve_stable_mode(cal)
        .map(|m| m.alpha)
        .unwrap_or(cal.rho_r)
        .max(cal.rho_s)
        .to_f64()
        .unwrap_or(0.9);
    let decay = if persistence > 0.0 && persistence < 1.0 {
        ((1e-16f64).ln() / persistence.ln()).ceil() as usize
    } else {
        0
    };
    [200, 10 * cal.tau, horizons + lead + 100, decay.min(20_000)]
        .into_iter()
        .max()
        .unwrap_or(200)
}

pub fn solve_path<T: Real>(
    cal: &Calibration<T>,
    shock: ShockKind,
    size: T,
    horizons: usize,
) -> Result<ImpulseResponseSet<T>> {
    solve_path_with(cal, shock, size, horizons, SentimentLaw::DistributedLag)
}

pub fn solve_path_with<T: Real>(
    cal: &Calibration<T>,
    shock: ShockKind,
    size: T,
    horizons: usize,
    law: SentimentLaw,
) -> Result<ImpulseResponseSet<T>> {
    cal.validate()?;
    if !check_determinacy(cal) {
        return Err(Error::Indeterminate);
    }
    let tau = cal.tau;
    if horizons < tau + 10 {
        return Err(Error::InvalidArgument(format!(
            "horizons must be at least tau + 10 = {}",
            tau + 10
        )));
    }
    let lead = expectation_lead(shock, tau);
    let h_stack = stack_length(cal, horizons, lead);
    let z = solve_stacked(cal, shock, size, h_stack, law)?;

    let take = |var: usize, from: usize| -> Vec<T> {
        (from..from + horizons).map(|t| z[idx(var, t)]).collect()
    };
    Ok(ImpulseResponseSet {
        shock,
        horizons,
        expectation_lead: lead,
        r: take(R, 0),
        x: take(X, 0),
        pi: take(PI, 0),
        s: take(S, 0),
        e_r: take(R, lead),
        e_x: take(X, lead),
        e_pi: take(PI, lead),
    })
}

fn solve_stacked<T: Real>(
    cal: &Calibration<T>,
    shock: ShockKind,
    size: T,
    h: usize,
    law: SentimentLaw,
) -> Result<Vec<T>> {
    let tau = cal.tau;
    let one = T::one();
    let inv_sigma = one / cal.sigma;
    let taylor = one - cal.rho_r;
    let n = 4 * h;
    let mut a = BandMatrix::zeros(n, 4 * tau + 3, 5);
    let mut rhs = vec![T::zero(); n];

    let eps = |kind: ShockKind, t: isize| -> T {
        if kind == shock && t == 0 {
            size
        } else {
            T::zero()
        }
    };
    let lag_terms: Vec<usize> = match law {
        SentimentLaw::DistributedLag => (0..=tau).collect(),
        SentimentLaw::CurrentOnly => vec![tau],
    };

    for t in 0..h {
        let ti = t as isize;

        let e = idx(X, t);
        a.add(e, idx(X, t), one);
        a.add(e, idx(R, t), inv_sigma);
        if t + 1 < h {
            a.add(e, idx(X, t + 1), -cal.m_h);
            a.add(e, idx(PI, t + 1), -inv_sigma);
        }

        let e = idx(PI, t);
        a.add(e, idx(PI, t), one);
        a.add(e, idx(X, t), -cal.kappa);
        if t + 1 < h {
            a.add(e, idx(PI, t + 1), -cal.beta * cal.m_f);
        }

        let e = idx(R, t);
        a.add(e, idx(R, t), one);
        if t >= 1 {
            a.add(e, idx(R, t - 1), -cal.rho_r);
        }
        a.add(e, idx(PI, t), -taylor * cal.phi_pi);
        a.add(e, idx(X, t), -taylor * cal.phi_x);
        a.add(e, idx(S, t), -taylor * cal.phi_s);
        rhs[e] = eps(ShockKind::UnanticipatedMP, ti)
            + eps(ShockKind::AnticipatedMP, ti - tau as isize);

        let e = idx(S, t);
        a.add(e, idx(S, t), one);
        if t >= 1 {
            a.add(e, idx(S, t - 1), -cal.rho_s);
        }
        let mut acc = eps(ShockKind::Narrative, ti);
        for &k in &lag_terms {
            let j = ti - tau as isize + k as isize;
            if j < 0 {
                continue;
            }
            let w = cal.m_s.powi((tau - k) as i32);
            let j = j as usize;
            a.add(e, idx(X, j), -w * cal.lambda_x);
            a.add(e, idx(PI, j), -w * cal.lambda_pi);
            acc = acc + w * cal.lambda_a * eps(ShockKind::AnticipatedMP, j as isize);
        }
        rhs[e] = acc;
    }
    a.solve(&rhs)
}
