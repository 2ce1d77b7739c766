use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};

/// Lowercased tokens split at every non-alphanumeric character.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

/// Term lists; each term is a token sequence so multiword entries match on
/// consecutive tokens.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lexicon {
    positive: BTreeSet<Vec<String>>,
    negative: BTreeSet<Vec<String>>,
    uncertainty: BTreeSet<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Positive,
    Negative,
    Uncertainty,
}

fn term_set<S: AsRef<str>>(terms: &[S]) -> Result<BTreeSet<Vec<String>>> {
    terms
        .iter()
        .map(|t| {
            let toks = tokenize(t.as_ref());
            if toks.is_empty() {
                Err(Error::InvalidArgument(format!("empty lexicon term `{}`", t.as_ref())))
            } else {
                Ok(toks)
            }
        })
        .collect()
}

impl Lexicon {
    pub fn new<S: AsRef<str>>(positive: &[S], negative: &[S], uncertainty: &[S]) -> Result<Self> {
        let lex = Self {
            positive: term_set(positive)?,
            negative: term_set(negative)?,
            uncertainty: term_set(uncertainty)?,
        };
        if let Some(t) = lex.positive.intersection(&lex.negative).next() {
            return Err(Error::InvalidArgument(format!("`{}` is both positive and negative", t.join(" "))));
        }
        Ok(lex)
    }

    /// Plain text with `[positive]`, `[negative]` and `[uncertainty]`
    /// headers, one term per line. Blank lines and `#` comments are skipped.
    pub fn parse(src: &str) -> Result<Self> {
        let mut lists: [Vec<String>; 3] = Default::default();
        let mut current: Option<usize> = None;
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.starts_with('[') && line.ends_with(']') {
                current = Some(match line[1..line.len() - 1].trim().to_lowercase().as_str() {
                    "positive" => 0,
                    "negative" => 1,
                    "uncertainty" => 2,
                    other => {
                        return Err(Error::Parse {
                            row: lineno + 1,
                            column: "section".into(),
                            message: format!("unknown section `{other}`"),
                        })
                    }
                });
                continue;
            }
            let Some(k) = current else {
                return Err(Error::Parse {
                    row: lineno + 1,
                    column: "term".into(),
                    message: "term before any section header".into(),
                });
            };
            lists[k].push(line.to_string());
        }
        Self::new(&lists[0], &lists[1], &lists[2])
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn terms(&self, cat: Category) -> &BTreeSet<Vec<String>> {
        match cat {
            Category::Positive => &self.positive,
            Category::Negative => &self.negative,
            Category::Uncertainty => &self.uncertainty,
        }
    }

    /// Hits of `cat` in `tokens`, matching the longest term at each position
    /// and skipping past it.
    pub fn count(&self, tokens: &[String], cat: Category) -> usize {
        let terms = self.terms(cat);
        let longest = terms.iter().map(Vec::len).max().unwrap_or(0);
        let mut hits = 0;
        let mut i = 0;
        while i < tokens.len() {
            let upper = longest.min(tokens.len() - i);
            let matched = (1..=upper).rev().find(|&len| terms.contains(&tokens[i..i + len]));
            match matched {
                Some(len) => {
                    hits += 1;
                    i += len;
                }
                None => i += 1,
            }
        }
        hits
    }
}
