use anyhow::Result;
use serde_json::json;

use mpnarrative::bnk::ShockKind;
use mpnarrative::svar::{self as sv, Band, IdentifiedSet, IdentifyOptions, VariableRoleMap};

use super::input_frame;
use crate::config::RunConfig;
use crate::output::{num, Artifacts};

/// Identified set plus the ISO dates of the rows left after lag trimming.
fn identified(cfg: &RunConfig, art: &mut Artifacts) -> Result<(IdentifiedSet, Vec<String>)> {
    let c = &cfg.svar;
    let names: Vec<&str> = c.variables.iter().map(String::as_str).collect();
    let frame = input_frame(cfg, art)?.complete_rows(&names)?;
    let scaled: Vec<&str> = c.standardize.iter().map(String::as_str).collect();
    let frame = frame.standardize(&scaled)?;
    let roles: [&str; 9] = std::array::from_fn(|i| c.roles[i].as_str());
    let map = VariableRoleMap::from_names(&names, &roles)?;
    let opts = IdentifyOptions {
        lags: c.lags,
        draws: c.draws,
        rotations: c.rotations,
        delta: c.delta,
        shrink: c.shrink,
        check_horizon: c.check_horizon,
        seed: cfg.seed,
    };
    let set = sv::identify(&frame, &names, map, &opts)?;
    let dates = frame.dates()[c.lags.min(frame.len())..].iter().map(|d| d.to_string()).collect();
    Ok((set, dates))
}

fn band_cells(b: &Band) -> [String; 3] {
    [num(b.median), num(b.lo68), num(b.hi68)]
}

pub fn identify(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (set, _) = identified(cfg, art)?;
    let rows: Vec<Vec<String>> = sv::irf(&set, cfg.svar.horizons)?
        .iter()
        .map(|r| {
            let mut row = vec![r.shock.label().to_string(), r.variable.clone(), r.horizon.to_string()];
            row.extend(band_cells(&r.band));
            row
        })
        .collect();
    art.csv("irf.csv", &["shock", "variable", "horizon", "median", "lo68", "hi68"], &rows)?;
    let robustness = sv::delta_robustness(&set, cfg.svar.horizons)?;
    art.json(
        "summary.json",
        &json!({
            "accepted": set.accepted.len(),
            "rotations_tried": set.rotations_tried,
            "acceptance_rate": set.acceptance_rate(),
            "ess": set.ess,
            "delta_robustness": robustness,
        }),
    )
}

pub fn fevd(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (set, _) = identified(cfg, art)?;
    let f = sv::fevd(&set, cfg.svar.horizons)?;
    let rows: Vec<Vec<String>> = f
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.shock.label().to_string(), r.variable.clone(), r.horizon.to_string()];
            row.extend(band_cells(&r.band));
            row
        })
        .collect();
    art.csv("fevd.csv", &["shock", "variable", "horizon", "median", "lo68", "hi68"], &rows)?;
    art.json("fevd.json", &json!({ "max_sum_error": f.max_sum_error }))
}

pub fn hd(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (set, dates) = identified(cfg, art)?;
    let d = sv::historical_decomposition(&set, &dates)?;
    let rows: Vec<Vec<String>> = d
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.date.clone(), r.variable.clone(), r.component.clone()];
            row.extend(band_cells(&r.band));
            row
        })
        .collect();
    art.csv("hd.csv", &["date", "variable", "component", "median", "lo68", "hi68"], &rows)?;
    art.json("hd.json", &json!({ "max_reconstruction_error": d.max_reconstruction_error }))
}

pub fn counterfactual(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let name = &cfg.svar.counterfactual_shock;
    let shock = ShockKind::parse(name).ok_or_else(|| mpnarrative::Error::InvalidArgument(format!("unknown shock `{name}`")))?;
    let (set, _) = identified(cfg, art)?;
    let rows: Vec<Vec<String>> = sv::counterfactual_irf(&set, shock, cfg.svar.horizons)?
        .iter()
        .map(|r| {
            let mut row = vec![r.shock.label().to_string(), r.variable.clone(), r.horizon.to_string()];
            row.extend(band_cells(&r.baseline));
            row.extend(band_cells(&r.counterfactual));
            row
        })
        .collect();
    art.csv(
        "counterfactual.csv",
        &["shock", "variable", "horizon", "median", "lo68", "hi68", "cf_median", "cf_lo68", "cf_hi68"],
        &rows,
    )
}

pub fn diagnostics(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (set, dates) = identified(cfg, art)?;
    let d = sv::shock_diagnostics(&set, &dates)?;
    art.json("diagnostics.json", &d)?;
    let rows: Vec<Vec<String>> = d
        .shocks
        .iter()
        .map(|r| {
            let mut row = vec![r.date.clone(), r.shock.label().to_string()];
            row.extend(band_cells(&r.band));
            row
        })
        .collect();
    art.csv("shocks.csv", &["date", "shock", "median", "lo68", "hi68"], &rows)
}
