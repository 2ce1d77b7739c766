use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::frame::TimeSeriesFrame;
use crate::rng::{substream, Stream};

/// `y_t = rho y_{t-1} + b eps_t + v_t`, `v_t = phi v_{t-1} + sd e_t`, with
/// an observed unit-variance shock `eps`. The response of `y_{t+h}` to
/// `eps_t` is `b rho^h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricIrfProcess {
    pub rho: f64,
    pub b: f64,
    pub noise_ar: f64,
    pub noise_sd: f64,
}

impl Default for GeometricIrfProcess {
    fn default() -> Self {
        Self { rho: 0.8, b: 1.0, noise_ar: 0.5, noise_sd: 1.0 }
    }
}

impl GeometricIrfProcess {
    pub fn true_irf(&self, horizons: usize) -> Vec<f64> {
        (0..horizons).map(|h| self.b * self.rho.powi(h as i32)).collect()
    }

    /// Columns `y`, `eps` and an unrelated shock `z`.
    pub fn simulate(&self, t: usize, burn_in: usize, seed: u64) -> Result<TimeSeriesFrame> {
        let mut rng = substream(seed, Stream::Simulation, 4, 0);
        let mut z = || -> f64 { StandardNormal.sample(&mut rng) };
        let n = burn_in + t;
        let (mut y, mut v) = (0.0, 0.0);
        let mut ys = Vec::with_capacity(t);
        let mut es = Vec::with_capacity(t);
        let mut other = Vec::with_capacity(t);
        for k in 0..n {
            let e = z();
            v = self.noise_ar * v + self.noise_sd * z();
            y = self.rho * y + self.b * e + v;
            let u = z();
            if k >= burn_in {
                ys.push(y);
                es.push(e);
                other.push(u);
            }
        }
        TimeSeriesFrame::quarterly(t)
            .with_column("y", ys)?
            .with_column("eps", es)?
            .with_column("z", other)
    }
}
