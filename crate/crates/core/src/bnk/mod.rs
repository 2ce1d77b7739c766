//! Behavioral New-Keynesian model with a media-sentiment law of motion.

pub mod calibration;
pub mod impact;
pub mod path;
pub mod signs;
pub mod simulate;
pub mod stable;

pub use calibration::{check_determinacy, Calibration};
pub use impact::{dominance_holds, impact_responses, narrative_bracket, ImpactResponse};
pub use path::{expectation_lead, solve_path, solve_path_with, ImpulseResponseSet, SentimentLaw};
pub use signs::{sign_pattern, ShockKind, Sign, SignPattern, SignRole};
pub use simulate::{simulate_bnk, BnkShocks};
pub use stable::{solve_stable_mode, StableMode};
