pub mod bnk;
pub mod lp;
pub mod svar;
pub mod synth;
pub mod taylor;
pub mod text;

use anyhow::{anyhow, Context, Result};
use mpnarrative::TimeSeriesFrame;

use crate::config::RunConfig;
use crate::output::Artifacts;

/// Loads the configured input frame and records it in the manifest.
pub fn input_frame(cfg: &RunConfig, art: &mut Artifacts) -> Result<TimeSeriesFrame> {
    let path = cfg.input.as_ref().ok_or_else(|| anyhow!("no input frame: pass --input or set `input`"))?;
    let frame = TimeSeriesFrame::load(path).with_context(|| format!("loading {}", path.display()))?;
    art.input(path)?;
    Ok(frame)
}
