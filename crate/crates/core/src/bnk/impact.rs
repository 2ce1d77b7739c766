//! Closed-form impact responses for the one-period announcement case.

use serde::Serialize;

use super::calibration::Calibration;
use super::signs::{ShockKind, SignPattern};
use super::stable::{solve_stable_mode, StableMode};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImpactResponse<T> {
    pub r0: T,
    pub x0: T,
    pub pi0: T,
    pub s0: T,
    pub e_r1: T,
    pub e_x1: T,
    pub e_pi1: T,
}

impl ImpactResponse<f64> {
    /// Checks every restricted entry of `pattern` (output and inflation are
    /// checked only if the pattern restricts them).
    pub fn conforms(&self, pattern: &SignPattern) -> bool {
        pattern.rate.admits(self.r0)
            && pattern.sentiment.admits(self.s0)
            && pattern.exp_rate.admits(self.e_r1)
            && pattern.exp_output.admits(self.e_x1)
            && pattern.exp_inflation.admits(self.e_pi1)
            && pattern.output.admits(self.x0)
            && pattern.inflation.admits(self.pi0)
    }
}

/// Stage B forecasts one period ahead of an announced rate change,
/// `(A_x, A_pi)`.
pub fn announcement_loadings<T: Real>(cal: &Calibration<T>, m: &StableMode<T>) -> (T, T) {
    let a_x = cal.m_h * m.g1_imp + m.g2_imp / cal.sigma;
    let a_pi = cal.beta * cal.m_f * m.g2_imp + cal.kappa * a_x;
    (a_x, a_pi)
}

/// Multiplicative shrink of the narrative innovation's pass-through to
/// sentiment, `1 - |G1 + G2| (1 - rho_r)/rho_r phi_s`.
pub fn narrative_bracket<T: Real>(cal: &Calibration<T>) -> Result<T> {
    let m = solve_stable_mode(cal)?;
    Ok(T::one()
        - (m.g1_mode + m.g2_mode).abs() * ((T::one() - cal.rho_r) / cal.rho_r) * cal.phi_s)
}

pub fn impact_responses<T: Real>(
    cal: &Calibration<T>,
    shock: ShockKind,
    size: T,
) -> Result<ImpactResponse<T>> {
    if !cal.is_simplified() {
        return Err(Error::Unsupported(
            "closed-form impacts need rho_s = 0 and unit sentiment loadings; use solve_path".into(),
        ));
    }
    let m = solve_stable_mode(cal)?;
    let one = T::one();
    let lean = m.beta_g * (one - cal.rho_r);
    let out = match shock {
        ShockKind::UnanticipatedMP => {
            let r0 = m.beta_g * size;
            let x0 = m.g1_imp * size;
            let pi0 = m.g2_imp * size;
            ImpactResponse {
                r0,
                x0,
                pi0,
                s0: x0 + pi0,
                e_r1: m.alpha * r0,
                e_x1: m.g1_mode * r0,
                e_pi1: m.g2_mode * r0,
            }
        }
        ShockKind::AnticipatedMP => {
            let (a_x, a_pi) = announcement_loadings(cal, &m);
            let r0 =
                lean * (cal.phi_pi_eff() * a_pi + cal.phi_x_eff() * a_x + cal.phi_s) * size;
            let x0 = m.g1_mode / m.alpha * r0 + a_x * size;
            let pi0 = m.g2_mode / m.alpha * r0 + a_pi * size;
            ImpactResponse {
                r0,
                x0,
                pi0,
                s0: x0 + pi0 + size,
                e_r1: m.alpha * r0 + m.beta_g * size,
                e_x1: m.g1_mode * r0 + m.g1_imp * size,
                e_pi1: m.g2_mode * r0 + m.g2_imp * size,
            }
        }
        ShockKind::Narrative => {
            let r0 = lean * cal.phi_s * size;
            let x0 = m.g1_mode / m.alpha * r0;
            let pi0 = m.g2_mode / m.alpha * r0;
            ImpactResponse {
                r0,
                x0,
                pi0,
                s0: x0 + pi0 + size,
                e_r1: m.alpha * r0,
                e_x1: m.g1_mode * r0,
                e_pi1: m.g2_mode * r0,
            }
        }
    };
    Ok(out)
}

/// Whether fundamentals dominate the communication term on impact of a unit
/// anticipated easing, so that sentiment rises.
pub fn dominance_holds<T: Real>(cal: &Calibration<T>) -> Result<bool> {
    let mut simple = *cal;
    simple.rho_s = T::zero();
    simple.lambda_x = T::one();
    simple.lambda_pi = T::one();
    simple.lambda_a = T::one();
    let imp = impact_responses(&simple, ShockKind::AnticipatedMP, -T::one())?;
    Ok(cal.lambda_x * imp.x0 + cal.lambda_pi * imp.pi0 > cal.lambda_a.abs())
}
