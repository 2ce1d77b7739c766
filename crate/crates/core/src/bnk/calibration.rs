use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Structural parameters of the behavioral NK model with media sentiment.
///
/// `calvo_theta` is carried for reference only: the Phillips-curve slope
/// `kappa` is calibrated directly and nothing downstream maps θ into it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Calibration<T> {
    pub beta: T,
    pub sigma: T,
    pub kappa: T,
    pub rho_r: T,
    pub phi_pi: T,
    pub phi_x: T,
    pub phi_s: T,
    pub tau: usize,
    pub m_h: T,
    pub m_f: T,
    pub m_s: T,
    pub rho_s: T,
    pub lambda_x: T,
    pub lambda_pi: T,
    pub lambda_a: T,
    pub calvo_theta: T,
}

impl<T: Real> Calibration<T> {
    /// The baseline calibration with the two parameters the paper varies.
    pub fn table1(m_h: f64, phi_s: f64) -> Self {
        Self {
            beta: T::lit(0.99),
            sigma: T::one(),
            kappa: T::lit(0.15),
            rho_r: T::lit(0.9),
            phi_pi: T::lit(1.5),
            phi_x: T::zero(),
            phi_s: T::lit(phi_s),
            tau: 4,
            m_h: T::lit(m_h),
            m_f: T::lit(0.85),
            m_s: T::lit(0.85),
            rho_s: T::zero(),
            lambda_x: T::one(),
            lambda_pi: T::one(),
            lambda_a: T::one(),
            calvo_theta: T::lit(0.75),
        }
    }

    pub fn with_tau(mut self, tau: usize) -> Self {
        self.tau = tau;
        self
    }

    /// Effective inflation loading once sentiment is folded into the rule.
    pub fn phi_pi_eff(&self) -> T {
        self.phi_pi + self.phi_s
    }

    pub fn phi_x_eff(&self) -> T {
        self.phi_x + self.phi_s
    }

    pub fn validate(&self) -> Result<()> {
        let zero = T::zero();
        let one = T::one();
        let unit = |v: T| v > zero && v <= one;
        let mut bad = Vec::new();
        if !(self.beta > zero && self.beta < one) {
            bad.push("beta must lie in (0,1)");
        }
        if !(self.rho_r >= zero && self.rho_r < one) {
            bad.push("rho_r must lie in [0,1)");
        }
        if !unit(self.m_h) || !unit(self.m_f) || !unit(self.m_s) {
            bad.push("attention parameters must lie in (0,1]");
        }
        if self.tau < 1 {
            bad.push("tau must be at least 1");
        }
        if !(self.kappa > zero) {
            bad.push("kappa must be positive");
        }
        if !(self.sigma > zero) {
            bad.push("sigma must be positive");
        }
        let fields = [
            self.phi_pi,
            self.phi_x,
            self.phi_s,
            self.rho_s,
            self.lambda_x,
            self.lambda_pi,
            self.lambda_a,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            bad.push("loadings must be finite");
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidCalibration(bad.join("; ")))
        }
    }

    /// Whether the closed-form impact algebra applies: no sentiment
    /// persistence and unit loadings in the law of motion.
    pub fn is_simplified(&self) -> bool {
        self.rho_s == T::zero()
            && self.lambda_x == T::one()
            && self.lambda_pi == T::one()
            && self.lambda_a == T::one()
    }
}

impl<T: Real> Default for Calibration<T> {
    fn default() -> Self {
        Self::table1(0.8, 0.5)
    }
}

/// Determinacy condition with sentiment folded into the rule loadings.
pub fn check_determinacy<T: Real>(cal: &Calibration<T>) -> bool {
    let slack = T::one() - cal.beta * cal.m_f;
    let lhs = cal.phi_pi_eff()
        + slack / cal.kappa * cal.phi_x_eff()
        + cal.sigma * slack * (T::one() - cal.m_h) / cal.kappa;
    lhs > T::one()
}
