use serde::{Deserialize, Serialize};

/// The three structural shocks of the sentiment block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ShockKind {
    AnticipatedMP,
    UnanticipatedMP,
    Narrative,
}

impl ShockKind {
    pub const ALL: [ShockKind; 3] =
        [ShockKind::AnticipatedMP, ShockKind::UnanticipatedMP, ShockKind::Narrative];

    /// Innovation sign under which the sign table is stated: easing for the
    /// two policy shocks, optimism for the narrative shock.
    pub fn expansionary_size(self) -> f64 {
        match self {
            ShockKind::AnticipatedMP | ShockKind::UnanticipatedMP => -1.0,
            ShockKind::Narrative => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ShockKind::AnticipatedMP => "anticipated",
            ShockKind::UnanticipatedMP => "unanticipated",
            ShockKind::Narrative => "narrative",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "anticipated" | "a" | "anticipatedmp" => Some(ShockKind::AnticipatedMP),
            "unanticipated" | "u" | "unanticipatedmp" => Some(ShockKind::UnanticipatedMP),
            "narrative" | "s" => Some(ShockKind::Narrative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
    Unrestricted,
}

impl Sign {
    /// Whether `v` is consistent with the restriction. Zero satisfies neither
    /// strict sign.
    pub fn admits(self, v: f64) -> bool {
        match self {
            Sign::Positive => v > 0.0,
            Sign::Negative => v < 0.0,
            Sign::Unrestricted => true,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Unrestricted => Sign::Unrestricted,
        }
    }
}

/// Variable roles that carry a restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignRole {
    Rate,
    Sentiment,
    ExpRate,
    ExpOutput,
    ExpInflation,
    Output,
    Inflation,
}

impl SignRole {
    pub const ALL: [SignRole; 7] = [
        SignRole::Rate,
        SignRole::Sentiment,
        SignRole::ExpRate,
        SignRole::ExpOutput,
        SignRole::ExpInflation,
        SignRole::Output,
        SignRole::Inflation,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignPattern {
    pub rate: Sign,
    pub sentiment: Sign,
    pub exp_rate: Sign,
    pub exp_output: Sign,
    pub exp_inflation: Sign,
    pub output: Sign,
    pub inflation: Sign,
}

impl SignPattern {
    pub fn get(&self, role: SignRole) -> Sign {
        match role {
            SignRole::Rate => self.rate,
            SignRole::Sentiment => self.sentiment,
            SignRole::ExpRate => self.exp_rate,
            SignRole::ExpOutput => self.exp_output,
            SignRole::ExpInflation => self.exp_inflation,
            SignRole::Output => self.output,
            SignRole::Inflation => self.inflation,
        }
    }

    pub fn restricted(&self) -> impl Iterator<Item = (SignRole, Sign)> + '_ {
        SignRole::ALL
            .into_iter()
            .map(|r| (r, self.get(r)))
            .filter(|(_, s)| *s != Sign::Unrestricted)
    }
}

/// Sign restrictions for the expansionary version of each shock.
pub fn sign_pattern(shock: ShockKind) -> SignPattern {
    use Sign::*;
    let (rate, exp_rate, exp_real) = match shock {
        ShockKind::UnanticipatedMP => (Negative, Negative, Positive),
        ShockKind::AnticipatedMP => (Positive, Negative, Positive),
        ShockKind::Narrative => (Positive, Positive, Negative),
    };
    SignPattern {
        rate,
        sentiment: Positive,
        exp_rate,
        exp_output: exp_real,
        exp_inflation: exp_real,
        output: Unrestricted,
        inflation: Unrestricted,
    }
}
