use anyhow::Result;

use mpnarrative::svar::VariableRoleMap;
use mpnarrative::synth::{simulate_taylor_panel, simulate_var, svar9_dgp, GeometricIrfProcess};

use crate::config::RunConfig;
use crate::output::{num, Artifacts};

/// The nine-variable structural system under the default variable names,
/// plus its structural draws.
pub fn var(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let c = &cfg.synth;
    let sim = simulate_var(&svar9_dgp(c.sigma_e)?, c.t, c.burn_in, cfg.seed)?;
    let frame = sim.to_frame(&VariableRoleMap::DEFAULT_NAMES)?;
    art.frame("data.csv", &frame)?;
    let rows: Vec<Vec<String>> = frame
        .dates()
        .iter()
        .enumerate()
        .map(|(t, d)| {
            let mut row = vec![d.to_string()];
            row.extend(sim.shocks.row(t).iter().map(|v| num(*v)));
            row
        })
        .collect();
    let header: Vec<String> = (0..sim.shocks.ncols()).map(|j| format!("e{j}")).collect();
    let header: Vec<&str> = std::iter::once("date").chain(header.iter().map(String::as_str)).collect();
    art.csv("shocks.csv", &header, &rows)
}

pub fn taylor(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let frame = simulate_taylor_panel(&cfg.synth.taylor, cfg.synth.t, cfg.seed)?;
    art.frame("panel.csv", &frame)
}

pub fn lp(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let frame = GeometricIrfProcess::default().simulate(cfg.synth.t, cfg.synth.burn_in, cfg.seed)?;
    art.frame("lp.csv", &frame)
}
