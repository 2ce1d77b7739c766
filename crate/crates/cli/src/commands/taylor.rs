use anyhow::Result;
use serde_json::json;

use mpnarrative::econ::{
    bootstrap_j, first_stage_f, gmm_two_step, leakage_experiment, ols_hac, taylor_rule_data, HacOptions,
    InstrumentSetKind, LeakInstrument, RegressionData,
};

use super::input_frame;
use crate::config::RunConfig;
use crate::output::{num, Artifacts};

fn data(cfg: &RunConfig, art: &mut Artifacts) -> Result<(RegressionData, HacOptions)> {
    let frame = input_frame(cfg, art)?;
    let kind = InstrumentSetKind::parse(&cfg.taylor.instruments)?;
    let data = taylor_rule_data(&frame, &cfg.taylor.columns, &kind)?;
    Ok((data, HacOptions::new(cfg.taylor.bandwidth)))
}

pub fn ols(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (data, hac) = data(cfg, art)?;
    art.json("ols.json", &ols_hac(&data, &hac)?)
}

pub fn gmm(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (data, hac) = data(cfg, art)?;
    let mut fit = gmm_two_step(&data, &hac)?;
    fit.first_stage_f = Some(first_stage_f(&data, &hac)?);
    art.json("gmm.json", &fit)
}

pub fn bootstrap(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (data, hac) = data(cfg, art)?;
    let mut fit = gmm_two_step(&data, &hac)?;
    let b = bootstrap_j(&data, &hac, cfg.taylor.bootstrap, cfg.taylor.block_len, cfg.seed)?;
    fit.bootstrap_p = Some(b.p_value);
    fit.first_stage_f = Some(first_stage_f(&data, &hac)?);
    art.json("gmm.json", &fit)?;
    art.json("bootstrap_j.json", &b)
}

pub fn leakage(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let lc = &cfg.taylor.leakage;
    let table = leakage_experiment(lc, cfg.seed)?;
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| {
            vec![
                match r.instrument {
                    LeakInstrument::Macro => "macro".to_string(),
                    LeakInstrument::Score => "score".to_string(),
                },
                r.k.to_string(),
                num(r.mean_delta),
                num(r.bias),
                num(r.mc_se),
                num(r.theta),
            ]
        })
        .collect();
    art.csv("leakage.csv", &["instrument", "k", "mean_delta", "bias", "mc_se", "theta"], &rows)?;
    let gaps: Vec<serde_json::Value> = [LeakInstrument::Macro, LeakInstrument::Score]
        .into_iter()
        .filter_map(|inst| {
            let (a, b) = (*lc.ks.iter().min()?, *lc.ks.iter().max()?);
            let (gap, se) = table.theta_gap(inst, a, b)?;
            Some(json!({ "instrument": inst, "from_k": a, "to_k": b, "gap": gap, "se": se }))
        })
        .collect();
    art.json(
        "leakage.json",
        &json!({ "delta": table.delta, "reps": table.reps, "failed": table.failed, "rows": table.rows, "theta_gaps": gaps }),
    )
}
