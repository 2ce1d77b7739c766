//! Simulated model data by superposition of impulse paths.

use rand_distr::{Distribution, StandardNormal};

use super::calibration::Calibration;
use super::path::solve_path;
use super::signs::ShockKind;
use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;
use crate::rng::{substream, Stream};

/// Innovation sequences, one entry per date.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BnkShocks {
    pub unanticipated: Vec<f64>,
    pub anticipated: Vec<f64>,
    pub narrative: Vec<f64>,
}

impl BnkShocks {
    pub fn zeros(n: usize) -> Self {
        Self { unanticipated: vec![0.0; n], anticipated: vec![0.0; n], narrative: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.unanticipated.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Independent normal innovations with the given standard deviations
    /// (unanticipated, anticipated, narrative).
    pub fn draw(n: usize, sd: [f64; 3], seed: u64) -> Self {
        let mut rng = substream(seed, Stream::Simulation, 0, 0);
        let mut out = Self::zeros(n);
        for t in 0..n {
            let z: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            out.unanticipated[t] = sd[0] * z[0];
            out.anticipated[t] = sd[1] * z[1];
            out.narrative[t] = sd[2] * z[2];
        }
        out
    }

    fn get(&self, shock: ShockKind) -> &[f64] {
        match shock {
            ShockKind::UnanticipatedMP => &self.unanticipated,
            ShockKind::AnticipatedMP => &self.anticipated,
            ShockKind::Narrative => &self.narrative,
        }
    }
}

/// Columns `r, x, pi, s` on quarterly dates. Each innovation is a surprise at
/// its own date; anticipated innovations are announcements for `tau` periods
/// later.
pub fn simulate_bnk(cal: &Calibration<f64>, shocks: &BnkShocks) -> Result<TimeSeriesFrame> {
    let n = shocks.len();
    if shocks.anticipated.len() != n || shocks.narrative.len() != n {
        return Err(Error::DimensionMismatch("shock sequences differ in length".into()));
    }
    let horizons = n.max(cal.tau + 10);
    let mut out = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for kind in ShockKind::ALL {
        let seq = shocks.get(kind);
        if seq.iter().all(|e| *e == 0.0) {
            continue;
        }
        let irf = solve_path(cal, kind, 1.0, horizons)?;
        let paths = [&irf.r, &irf.x, &irf.pi, &irf.s];
        for (t0, e) in seq.iter().enumerate() {
            if *e == 0.0 {
                continue;
            }
            for (col, path) in out.iter_mut().zip(paths) {
                for t in t0..n {
                    col[t] += e * path[t - t0];
                }
            }
        }
    }
    let [r, x, pi, s] = out;
    TimeSeriesFrame::quarterly(n)
        .with_column("r", r)?
        .with_column("x", x)?
        .with_column("pi", pi)?
        .with_column("s", s)
}
