use mpnarrative::econ::{
    bootstrap_j, first_stage_f, gmm_two_step, ols_hac, taylor_rule_data, two_stage_least_squares, HacOptions,
    InstrumentSetKind, TaylorColumns,
};
use mpnarrative::synth::{simulate_taylor_panel, TaylorDgp};
use mpnarrative::TimeSeriesFrame;

fn panel() -> TimeSeriesFrame {
    simulate_taylor_panel(&TaylorDgp::default(), 160, 31).unwrap()
}

#[test]
fn estimates_survive_a_csv_round_trip() {
    let f = panel();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("panel.csv");
    f.save(&path).unwrap();
    let g = TimeSeriesFrame::load(&path).unwrap();
    let cols = TaylorColumns::default();
    let hac = HacOptions::default();
    let a = gmm_two_step(&taylor_rule_data(&f, &cols, &InstrumentSetKind::Rich).unwrap(), &hac).unwrap();
    let b = gmm_two_step(&taylor_rule_data(&g, &cols, &InstrumentSetKind::Rich).unwrap(), &hac).unwrap();
    assert_eq!(a, b);
}

#[test]
fn instrument_sets_change_overidentification() {
    let f = panel();
    let hac = HacOptions::default();
    let cols = TaylorColumns::default();
    let mut dfs = Vec::new();
    for kind in [InstrumentSetKind::Rich, InstrumentSetKind::ForecastRevision, InstrumentSetKind::Close, InstrumentSetKind::Distant] {
        let d = taylor_rule_data(&f, &cols, &kind).unwrap();
        let g = gmm_two_step(&d, &hac).unwrap();
        assert_eq!(g.j_df, d.excluded_instruments().len() - 1, "{kind:?}");
        assert!(g.j_stat >= 0.0);
        assert!(first_stage_f(&d, &hac).unwrap() > 0.0);
        dfs.push(g.j_df);
    }
    assert!(dfs[0] > dfs[2]);
}

#[test]
fn gmm_moves_away_from_ols_toward_truth() {
    // simultaneity biases OLS on s; the instrumented estimate should sit
    // closer to the rule's true loading on a long sample
    let f = simulate_taylor_panel(&TaylorDgp::default(), 2000, 5).unwrap();
    let d = taylor_rule_data(&f, &TaylorColumns::default(), &InstrumentSetKind::Rich).unwrap();
    let hac = HacOptions::default();
    let ols = ols_hac(&d, &hac).unwrap().coef("s").unwrap();
    let gmm = gmm_two_step(&d, &hac).unwrap().coef("s").unwrap();
    let tsls = two_stage_least_squares(&d).unwrap()[5];
    assert!((gmm - 0.5).abs() < (ols - 0.5).abs(), "gmm {gmm}, ols {ols}");
    assert!((tsls - gmm).abs() < 0.05);
}

#[test]
fn bootstrap_is_reproducible_across_pools() {
    let d = taylor_rule_data(&panel(), &TaylorColumns::default(), &InstrumentSetKind::Close).unwrap();
    let hac = HacOptions::default();
    let go = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| bootstrap_j(&d, &hac, 49, 4, 77).unwrap())
    };
    let a = go(1);
    assert_eq!(a, go(4));
    assert_eq!(a.resamples, 49);
    assert!((0.0..=1.0).contains(&a.p_value));
    assert_eq!(a.j_obs, gmm_two_step(&d, &hac).unwrap().j_stat);
}
