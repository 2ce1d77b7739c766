//! Run configuration: one JSON block per module. Command-line flags override
//! the file.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use mpnarrative::bnk::SentimentLaw;
use mpnarrative::econ::{LeakageConfig, TaylorColumns};
use mpnarrative::svar::VariableRoleMap;
use mpnarrative::synth::TaylorDgp;
use mpnarrative::Calibration;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Input frame (CSV with a `date` column).
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub bnk: BnkBlock,
    pub svar: SvarBlock,
    pub taylor: TaylorBlock,
    pub lp: LpBlock,
    pub expect: ExpectBlock,
    pub text: TextBlock,
    pub synth: SynthBlock,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            input: None,
            out: None,
            bnk: BnkBlock::default(),
            svar: SvarBlock::default(),
            taylor: TaylorBlock::default(),
            lp: LpBlock::default(),
            expect: ExpectBlock::default(),
            text: TextBlock::default(),
            synth: SynthBlock::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&src).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BnkBlock {
    pub calibration: Calibration,
    pub horizons: usize,
    pub law: SentimentLaw,
}

impl Default for BnkBlock {
    fn default() -> Self {
        Self { calibration: Calibration::default(), horizons: 20, law: SentimentLaw::DistributedLag }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SvarBlock {
    /// VAR variables in order.
    pub variables: Vec<String>,
    /// Column names playing the roles `e_r, e_y, e_p, r, y, p, h, bond, s`;
    /// the output, inflation, hours and bond roles may be absent.
    pub roles: [String; 9],
    /// Columns rescaled to mean zero and unit variance before estimation.
    pub standardize: Vec<String>,
    pub lags: usize,
    pub draws: usize,
    pub rotations: usize,
    pub delta: f64,
    pub shrink: f64,
    pub check_horizon: usize,
    pub horizons: usize,
    pub counterfactual_shock: String,
}

impl Default for SvarBlock {
    fn default() -> Self {
        let names = VariableRoleMap::DEFAULT_NAMES.map(String::from);
        Self {
            variables: names.to_vec(),
            roles: names,
            standardize: vec!["s".into()],
            lags: 2,
            draws: 100,
            rotations: 2000,
            delta: 0.5,
            shrink: 4.0,
            check_horizon: 4,
            horizons: 20,
            counterfactual_shock: "anticipated".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TaylorBlock {
    pub columns: TaylorColumns,
    pub instruments: String,
    pub bandwidth: usize,
    pub bootstrap: usize,
    pub block_len: usize,
    pub leakage: LeakageConfig,
}

impl Default for TaylorBlock {
    fn default() -> Self {
        Self {
            columns: TaylorColumns::default(),
            instruments: "rich".into(),
            bandwidth: 4,
            bootstrap: 500,
            block_len: 4,
            leakage: LeakageConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LpBlock {
    pub outcome: String,
    pub shock: String,
    pub controls: Vec<String>,
    pub horizons: usize,
    pub shock_lags: usize,
    pub bandwidth: usize,
}

impl Default for LpBlock {
    fn default() -> Self {
        Self {
            outcome: "y".into(),
            shock: "eps".into(),
            controls: vec!["y".into()],
            horizons: 20,
            shock_lags: 12,
            bandwidth: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExpectBlock {
    pub expectations: Vec<String>,
    pub sentiment: String,
    pub bandwidth: usize,
}

impl Default for ExpectBlock {
    fn default() -> Self {
        Self { expectations: Vec::new(), sentiment: "s".into(), bandwidth: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TextBlock {
    pub corpus: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    /// Long CSV `unit,coder,label` for the agreement statistic.
    pub labels: Option<PathBuf>,
    /// CSV `date,label` of classified sentences for the label tone.
    pub sentences: Option<PathBuf>,
    pub base_start: String,
    pub base_end: String,
}

impl Default for TextBlock {
    fn default() -> Self {
        Self {
            corpus: None,
            lexicon: None,
            labels: None,
            sentences: None,
            base_start: "1995-01-01".into(),
            base_end: "2011-12-31".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthBlock {
    pub t: usize,
    pub burn_in: usize,
    /// Expectation noise of the nine-variable structural system.
    pub sigma_e: f64,
    pub taylor: TaylorDgp,
}

impl Default for SynthBlock {
    fn default() -> Self {
        Self {
            t: 300,
            burn_in: 200,
            sigma_e: mpnarrative::synth::svar9::DEFAULT_SIGMA_E,
            taylor: TaylorDgp::default(),
        }
    }
}
