use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

use mpnarrative::bnk::{sign_pattern, ShockKind, Sign};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mpnarrative"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["svar", "estimate"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    let out = run(dir.path(), &["frobnicate"]);
    assert!(!out.status.success());
}

#[test]
fn model_irf_signs_follow_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["bnk", "irf", "--out", "o"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&dir.path().join("o/irf.csv"));
    assert_eq!(rows.len(), 3 * 20);
    for shock in ShockKind::ALL {
        let row = rows.iter().find(|r| r[0] == shock.label() && r[1] == "0").unwrap();
        let v = |col: usize| row[col].parse::<f64>().unwrap();
        let pat = sign_pattern(shock);
        // columns: shock, horizon, r, x, pi, s, e_r, e_x, e_pi
        for (sign, value) in [(pat.rate, v(2)), (pat.sentiment, v(5)), (pat.exp_rate, v(6)), (pat.exp_output, v(7)), (pat.exp_inflation, v(8))] {
            assert_ne!(sign, Sign::Unrestricted);
            assert!(sign.admits(value), "{shock:?}: {sign:?} vs {value}");
        }
    }
}

#[test]
fn failures_leave_an_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["taylor", "ols", "--out", "e"]);
    assert_eq!(out.status.code(), Some(1));
    let rec = json(&dir.path().join("e/error.json"));
    assert_eq!(rec["command"], "taylor ols");
    assert_eq!(rec["error"]["kind"], "Cli");

    std::fs::write(dir.path().join("f.csv"), "date,y\n2000Q1,1\n2000Q2,2\n").unwrap();
    let out = run(dir.path(), &["taylor", "gmm", "--input", "f.csv", "--out", "e2"]);
    assert!(!out.status.success());
    let rec = json(&dir.path().join("e2/error.json"));
    assert_eq!(rec["error"]["kind"], "MissingColumn");
    assert!(!dir.path().join("e2/manifest.json").exists());
}

#[test]
fn bad_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.json"), r#"{"svar": {"drawz": 3}}"#).unwrap();
    let out = run(dir.path(), &["bnk", "solve", "--config", "c.json", "--out", "o"]);
    assert!(!out.status.success());
    assert!(json(&dir.path().join("o/error.json"))["error"]["message"].as_str().unwrap().contains("drawz"));
}

#[test]
fn manifest_records_inputs_outputs_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("c.json"), r#"{"seed": 9, "synth": {"t": 120}, "lp": {"horizons": 4, "shock_lags": 4}}"#).unwrap();
    assert!(run(d, &["synth", "lp", "--config", "c.json", "--out", "g"]).status.success());
    let out = run(d, &["lp", "run", "--config", "c.json", "--seed", "4", "--input", "g/lp.csv", "--out", "o"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let m = json(&d.join("o/manifest.json"));
    assert_eq!(m["command"], "lp run");
    assert_eq!(m["seed"], 4);
    assert_eq!(m["config"]["seed"], 4);
    assert_eq!(m["config"]["lp"]["horizons"], 4);
    assert!(m["config"].get("out").is_none_or(Value::is_null));
    let digest = |p: &Path| Sha256::digest(std::fs::read(p).unwrap()).iter().map(|b| format!("{b:02x}")).collect::<String>();
    assert_eq!(m["inputs"][0]["path"], "g/lp.csv");
    assert_eq!(m["inputs"][0]["sha256"], digest(&d.join("g/lp.csv")));
    assert_eq!(m["outputs"][0]["file"], "lp.csv");
    assert_eq!(m["outputs"][0]["sha256"], digest(&d.join("o/lp.csv")));

    // h = 0..=4
    let rows = csv_rows(&d.join("o/lp.csv"));
    assert_eq!(rows.len(), 5);
}

#[test]
fn csv_numbers_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["bnk", "irf", "--out", "o", "--horizons", "15"]).status.success());
    let rows = csv_rows(&dir.path().join("o/irf.csv"));
    assert_eq!(rows.len(), 45);
    let cal = mpnarrative::Calibration::default();
    let path = mpnarrative::bnk::solve_path(&cal, ShockKind::AnticipatedMP, -1.0, 15).unwrap();
    for (h, row) in rows.iter().filter(|r| r[0] == "anticipated").enumerate() {
        assert_eq!(row[2].parse::<f64>().unwrap(), path.r[h]);
        assert_eq!(row[5].parse::<f64>().unwrap(), path.s[h]);
    }
}

#[test]
fn text_commands_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("corpus.csv"),
        "id,date,text\n1,2000-01-05,\"strong growth, some risk\"\n2,2000-02-01,weak weak\n3,2000Q3,uncertain\n",
    )
    .unwrap();
    std::fs::write(d.join("lex.txt"), "# toy\n[positive]\nstrong\ngrowth\n[negative]\nweak\n[uncertainty]\nrisk\nuncertain\n").unwrap();
    std::fs::write(d.join("labels.csv"), "unit,coder,label\n1,a,x\n1,b,x\n2,a,y\n2,b,y\n").unwrap();
    std::fs::write(
        d.join("c.json"),
        r#"{"text": {"corpus": "corpus.csv", "lexicon": "lex.txt", "labels": "labels.csv", "base_start": "2000-01-01", "base_end": "2000-12-31"}}"#,
    )
    .unwrap();
    for cmd in ["tone", "uncertainty", "alpha"] {
        let out = run(d, &["text", cmd, "--config", "c.json", "--out", cmd]);
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
    }
    // Q1 pools 6 words: 2 positive, 2 negative
    let tone = csv_rows(&d.join("tone/tone.csv"));
    assert_eq!(tone[0], vec!["2000-01-01", "6", "2", "2", "0.0"]);
    assert_eq!(tone[1][0], "2000-07-01");
    let unc = csv_rows(&d.join("uncertainty/uncertainty.csv"));
    // raw 100/6 and 100/1, base mean is their average
    let raw: Vec<f64> = unc.iter().map(|r| r[2].parse().unwrap()).collect();
    let idx: Vec<f64> = unc.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!((raw[0] - 100.0 / 6.0).abs() < 1e-12);
    assert!((idx[0] + idx[1] - 200.0).abs() < 1e-9);
    assert_eq!(json(&d.join("alpha/alpha.json"))["alpha"], 1.0);
}
