//! Autonomous mode of the three-equation block after a rate innovation.
//!
//! Guessing `x_t = G1 r_{t-1}`, `pi_t = G2 r_{t-1}`, `r_t = alpha r_{t-1}` and
//! substituting into the IS curve and the Phillips curve gives
//! `G1(alpha)`, `G2(alpha)`; the Taylor rule then pins `alpha` through a
//! scalar fixed point.

use serde::Serialize;

use super::calibration::{check_determinacy, Calibration};
use crate::error::{Error, Result};
use crate::numeric::scan_roots;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StableMode<T> {
    pub alpha: T,
    pub g1_mode: T,
    pub g2_mode: T,
    pub beta_g: T,
    pub g1_imp: T,
    pub g2_imp: T,
    /// Absolute fixed-point residual at the returned root.
    pub residual: T,
}

fn g1_denominator<T: Real>(cal: &Calibration<T>, a: T) -> T {
    (T::one() - cal.m_h * a) * (T::one() - cal.beta * cal.m_f * a) - cal.kappa * a / cal.sigma
}

/// Mode loadings `(G1, G2)` as functions of the persistence `a`.
pub fn mode_loadings<T: Real>(cal: &Calibration<T>, a: T) -> (T, T) {
    let pc = T::one() - cal.beta * cal.m_f * a;
    let g1 = -a * pc / cal.sigma / g1_denominator(cal, a);
    (g1, cal.kappa * g1 / pc)
}

/// Fixed-point residual `a - rho_r - (1 - rho_r)(phi~_pi G2 + phi~_x G1)`.
pub fn alpha_residual<T: Real>(cal: &Calibration<T>, a: T) -> T {
    let (g1, g2) = mode_loadings(cal, a);
    a - cal.rho_r - (T::one() - cal.rho_r) * (cal.phi_pi_eff() * g2 + cal.phi_x_eff() * g1)
}

pub fn solve_stable_mode<T: Real>(cal: &Calibration<T>) -> Result<StableMode<T>> {
    cal.validate()?;
    if !check_determinacy(cal) {
        return Err(Error::Indeterminate);
    }
    if cal.rho_r == T::zero() {
        return Err(Error::Unsupported("stable mode needs rho_r > 0".into()));
    }
    let alpha = if cal.phi_pi_eff() == T::zero() && cal.phi_x_eff() == T::zero() {
        cal.rho_r
    } else {
        let f = |a: T| alpha_residual(cal, a);
        let step = T::lit(1e-4);
        // bracket endpoints where the G1 denominator changes sign straddle a
        // pole, not a root
        let no_pole = |a: T, b: T| {
            let (da, db) = (g1_denominator(cal, a), g1_denominator(cal, b));
            da != T::zero() && db != T::zero() && (da > T::zero()) == (db > T::zero())
        };
        let roots = scan_roots(f, step, T::one() - step, step, T::lit(1e-12), no_pole);
        roots
            .into_iter()
            .filter(|r| *r > T::zero() && *r < T::one())
            .min_by(|a, b| {
                let da = (*a - cal.rho_r).abs();
                let db = (*b - cal.rho_r).abs();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or(Error::NoStableRoot)?
    };
    let (g1_mode, g2_mode) = mode_loadings(cal, alpha);
    let beta_g = alpha / cal.rho_r;
    let scale = beta_g / alpha;
    Ok(StableMode {
        alpha,
        g1_mode,
        g2_mode,
        beta_g,
        g1_imp: scale * g1_mode,
        g2_imp: scale * g2_mode,
        residual: alpha_residual(cal, alpha).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headline_constants() {
        let m = solve_stable_mode(&Calibration::<f64>::table1(0.8, 0.5)).unwrap();
        assert!((m.alpha - 0.639049).abs() < 1e-6, "{m:?}");
        assert!((m.g1_mode + 2.27109).abs() < 1e-5);
        assert!((m.g2_mode + 0.73698).abs() < 1e-5);
        assert!(m.residual < 1e-10);
    }

    #[test]
    fn identities_hold_exactly() {
        for (mh, ps) in [(0.8, 0.5), (1.0, 0.0), (0.8, 0.0), (1.0, 0.5)] {
            let cal = Calibration::<f64>::table1(mh, ps);
            let m = solve_stable_mode(&cal).unwrap();
            assert!((m.beta_g - m.alpha / cal.rho_r).abs() < 1e-12);
            assert!((m.g1_imp - m.beta_g / m.alpha * m.g1_mode).abs() < 1e-12);
            assert!((m.g2_imp - m.beta_g / m.alpha * m.g2_mode).abs() < 1e-12);
            assert!(m.alpha > 0.0 && m.alpha < 1.0);
        }
    }

    #[test]
    fn vanishing_kappa_kills_inflation_loading() {
        let mut cal = Calibration::<f64>::table1(0.8, 0.5);
        cal.kappa = 1e-12;
        let m = solve_stable_mode(&cal).unwrap();
        assert!(m.g2_mode.abs() < 1e-9);
    }

    #[test]
    fn no_feedback_gives_rho_r() {
        // keep determinacy through a small kappa
        let mut cal = Calibration::<f64>::table1(0.8, 0.0);
        cal.phi_pi = 0.0;
        cal.kappa = 0.01;
        let m = solve_stable_mode(&cal).unwrap();
        assert_eq!(m.alpha, cal.rho_r);
    }

    #[test]
    fn indeterminate_is_reported() {
        let mut cal = Calibration::<f64>::table1(1.0, 0.0);
        cal.phi_pi = 0.5;
        assert_eq!(solve_stable_mode(&cal).unwrap_err(), Error::Indeterminate);
    }

    #[test]
    fn f32_agrees_with_f64() {
        let a = solve_stable_mode(&Calibration::<f32>::table1(0.8, 0.5)).unwrap();
        let b = solve_stable_mode(&Calibration::<f64>::table1(0.8, 0.5)).unwrap();
        assert!((a.alpha as f64 - b.alpha).abs() < 1e-4);
    }
}
