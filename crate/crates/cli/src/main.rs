mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use config::RunConfig;

#[derive(Parser, Debug)]
#[command(name = "mpnarrative", version, about = "Monetary-policy sentiment models and estimators")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    group: Group,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// JSON run configuration; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Artifact directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Input CSV frame.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true)]
    draws: Option<usize>,
    #[arg(long, global = true)]
    rotations: Option<usize>,
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// Bootstrap resamples.
    #[arg(long, global = true)]
    bootstrap: Option<usize>,
    #[arg(long = "block-len", global = true)]
    block_len: Option<usize>,
    #[arg(long, global = true)]
    horizons: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Structural model solution.
    Bnk {
        #[command(subcommand)]
        action: BnkAction,
    },
    /// Sign-restricted Bayesian SVAR.
    Svar {
        #[command(subcommand)]
        action: SvarAction,
    },
    /// Taylor-rule estimation.
    Taylor {
        #[command(subcommand)]
        action: TaylorAction,
    },
    /// Local projections.
    Lp {
        #[command(subcommand)]
        action: LpAction,
    },
    /// Expectations on sentiment regressions.
    Expect {
        #[command(subcommand)]
        action: LpAction,
    },
    /// Text indices and agreement.
    Text {
        #[command(subcommand)]
        action: TextAction,
    },
    /// Synthetic data.
    Synth {
        #[command(subcommand)]
        action: SynthAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum BnkAction {
    Solve,
    Irf,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum SvarAction {
    Identify,
    Fevd,
    Hd,
    Counterfactual,
    Diagnostics,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum TaylorAction {
    Ols,
    Gmm,
    BootstrapJ,
    Leakage,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum LpAction {
    Run,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum TextAction {
    Tone,
    Uncertainty,
    Alpha,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum SynthAction {
    Var,
    Taylor,
    Lp,
}

impl Group {
    fn name(&self) -> String {
        let (g, a) = match self {
            Group::Bnk { action } => ("bnk", format!("{action:?}")),
            Group::Svar { action } => ("svar", format!("{action:?}")),
            Group::Taylor { action } => ("taylor", format!("{action:?}")),
            Group::Lp { action } => ("lp", format!("{action:?}")),
            Group::Expect { action } => ("expect", format!("{action:?}")),
            Group::Text { action } => ("text", format!("{action:?}")),
            Group::Synth { action } => ("synth", format!("{action:?}")),
        };
        let a = match a.as_str() {
            "BootstrapJ" => "bootstrap-j".to_string(),
            other => other.to_lowercase(),
        };
        format!("{g} {a}")
    }
}

fn resolve(flags: &Flags) -> anyhow::Result<RunConfig> {
    let mut c = match &flags.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(v) = flags.seed {
        c.seed = v;
    }
    if let Some(v) = &flags.out {
        c.out = Some(v.clone());
    }
    if let Some(v) = &flags.input {
        c.input = Some(v.clone());
    }
    if let Some(v) = flags.draws {
        c.svar.draws = v;
    }
    if let Some(v) = flags.rotations {
        c.svar.rotations = v;
    }
    if let Some(v) = flags.delta {
        c.svar.delta = v;
    }
    if let Some(v) = flags.bootstrap {
        c.taylor.bootstrap = v;
    }
    if let Some(v) = flags.block_len {
        c.taylor.block_len = v;
    }
    if let Some(v) = flags.horizons {
        c.bnk.horizons = v;
        c.svar.horizons = v;
        c.lp.horizons = v;
    }
    Ok(c)
}

fn run(group: &Group, cfg: &RunConfig, art: &mut output::Artifacts) -> anyhow::Result<()> {
    use commands::*;
    match group {
        Group::Bnk { action } => match action {
            BnkAction::Solve => bnk::solve(cfg, art),
            BnkAction::Irf => bnk::irf(cfg, art),
        },
        Group::Svar { action } => match action {
            SvarAction::Identify => svar::identify(cfg, art),
            SvarAction::Fevd => svar::fevd(cfg, art),
            SvarAction::Hd => svar::hd(cfg, art),
            SvarAction::Counterfactual => svar::counterfactual(cfg, art),
            SvarAction::Diagnostics => svar::diagnostics(cfg, art),
        },
        Group::Taylor { action } => match action {
            TaylorAction::Ols => taylor::ols(cfg, art),
            TaylorAction::Gmm => taylor::gmm(cfg, art),
            TaylorAction::BootstrapJ => taylor::bootstrap(cfg, art),
            TaylorAction::Leakage => taylor::leakage(cfg, art),
        },
        Group::Lp { .. } => lp::run(cfg, art),
        Group::Expect { .. } => lp::expectations(cfg, art),
        Group::Text { action } => match action {
            TextAction::Tone => text::tone(cfg, art),
            TextAction::Uncertainty => text::uncertainty(cfg, art),
            TextAction::Alpha => text::alpha(cfg, art),
        },
        Group::Synth { action } => match action {
            SynthAction::Var => synth::var(cfg, art),
            SynthAction::Taylor => synth::taylor(cfg, art),
            SynthAction::Lp => synth::lp(cfg, art),
        },
    }
}

/// `{"command", "error": {"kind", "message"}}`; the kind is the library
/// error variant when there is one.
fn error_record(command: &str, err: &anyhow::Error) -> serde_json::Value {
    let kind = err
        .chain()
        .find_map(|e| e.downcast_ref::<mpnarrative::Error>())
        .map_or("Cli", |e| e.kind());
    json!({
        "command": command,
        "error": { "kind": kind, "message": format!("{err:#}") },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.group.name();
    let cfg = resolve(&cli.flags);
    // the flag still locates the error record when the config is unreadable
    let out_dir = cli
        .flags
        .out
        .clone()
        .or_else(|| cfg.as_ref().ok().and_then(|c| c.out.clone()))
        .unwrap_or_else(|| PathBuf::from("out"));

    let result = cfg.and_then(|cfg| {
        let mut art = output::Artifacts::create(&out_dir)?;
        run(&cli.group, &cfg, &mut art)?;
        let mut recorded = cfg.clone();
        recorded.out = None;
        art.finish(&command, cfg.seed, &recorded)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let record = error_record(&command, &err);
            let text = serde_json::to_string_pretty(&record).unwrap_or_default();
            if std::fs::create_dir_all(&out_dir).is_ok() {
                let _ = std::fs::write(out_dir.join("error.json"), format!("{text}\n"));
            }
            eprintln!("{text}");
            ExitCode::FAILURE
        }
    }
}
