use anyhow::{bail, Result};

use mpnarrative::econ::{expectations_regression, lp_irf, HacOptions, LpOptions};

use super::input_frame;
use crate::config::RunConfig;
use crate::output::{num, Artifacts};

pub fn run(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let c = &cfg.lp;
    let frame = input_frame(cfg, art)?;
    let controls: Vec<&str> = c.controls.iter().map(String::as_str).collect();
    let opts = LpOptions { horizons: c.horizons, shock_lags: c.shock_lags, hac: HacOptions::new(c.bandwidth) };
    let rows: Vec<Vec<String>> = lp_irf(&frame, &c.outcome, &c.shock, &controls, &opts)?
        .iter()
        .map(|r| {
            vec![
                r.horizon.to_string(),
                num(r.beta),
                num(r.se),
                num(r.lo68),
                num(r.hi68),
                num(r.lo90),
                num(r.hi90),
                r.nobs.to_string(),
            ]
        })
        .collect();
    art.csv("lp.csv", &["horizon", "beta", "se", "lo68", "hi68", "lo90", "hi90", "nobs"], &rows)
}

pub fn expectations(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let c = &cfg.expect;
    if c.expectations.is_empty() {
        bail!("no expectation columns: set `expect.expectations`");
    }
    let frame = input_frame(cfg, art)?;
    let hac = HacOptions::new(c.bandwidth);
    let mut fits = serde_json::Map::new();
    for e in &c.expectations {
        let fit = expectations_regression(&frame, e, &c.sentiment, &hac)?;
        fits.insert(e.clone(), serde_json::to_value(fit)?);
    }
    art.json("expect.json", &fits)
}
