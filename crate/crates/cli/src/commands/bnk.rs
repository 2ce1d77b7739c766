use anyhow::Result;
use serde_json::json;

use mpnarrative::bnk::{
    check_determinacy, dominance_holds, impact_responses, narrative_bracket, solve_path_with, solve_stable_mode,
    ShockKind,
};

use crate::config::RunConfig;
use crate::output::{num, Artifacts};

pub fn solve(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cal = &cfg.bnk.calibration;
    cal.validate()?;
    let mode = solve_stable_mode(cal)?;
    let impacts: serde_json::Map<String, serde_json::Value> = ShockKind::ALL
        .iter()
        .filter_map(|s| {
            impact_responses(cal, *s, s.expansionary_size())
                .ok()
                .map(|r| (s.label().to_string(), serde_json::to_value(r).expect("plain struct")))
        })
        .collect();
    art.json(
        "solve.json",
        &json!({
            "determinate": check_determinacy(cal),
            "stable_mode": mode,
            "narrative_bracket": narrative_bracket(cal)?,
            "fundamentals_dominate": dominance_holds(cal)?,
            "impact_expansionary": impacts,
        }),
    )
}

pub fn irf(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cal = &cfg.bnk.calibration;
    let mut rows = Vec::new();
    for shock in ShockKind::ALL {
        let set = solve_path_with(cal, shock, shock.expansionary_size(), cfg.bnk.horizons, cfg.bnk.law)?;
        for h in 0..set.horizons {
            let mut row = vec![shock.label().to_string(), h.to_string()];
            row.extend(set.series().iter().map(|(_, v)| num(v[h])));
            rows.push(row);
        }
    }
    art.csv("irf.csv", &["shock", "horizon", "r", "x", "pi", "s", "e_r", "e_x", "e_pi"], &rows)
}
