use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use chrono::NaiveDate;
use serde_json::json;

use mpnarrative::frame::parse_date;
use mpnarrative::text::{
    group_by_quarter, krippendorff_alpha, label_tone_index, load_corpus, quarter_start, read_labels,
    uncertainty_index, Document, Lexicon, SentenceLabel, TermCounts,
};

use crate::config::RunConfig;
use crate::output::{num, Artifacts};

fn required<'a>(p: &'a Option<PathBuf>, key: &str) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| anyhow!("`text.{key}` is not set"))
}

fn corpus_and_lexicon(cfg: &RunConfig, art: &mut Artifacts) -> Result<(Vec<Document>, Lexicon)> {
    let corpus = required(&cfg.text.corpus, "corpus")?;
    let lexicon = required(&cfg.text.lexicon, "lexicon")?;
    let docs = load_corpus(corpus).with_context(|| format!("loading {}", corpus.display()))?;
    let lex = Lexicon::load(lexicon).with_context(|| format!("loading {}", lexicon.display()))?;
    art.input(corpus)?;
    art.input(lexicon)?;
    Ok((docs, lex))
}

/// `date,label` rows grouped by quarter.
fn sentence_labels(path: &Path) -> Result<BTreeMap<NaiveDate, Vec<SentenceLabel>>> {
    let mut rdr = csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let mut out: BTreeMap<NaiveDate, Vec<SentenceLabel>> = BTreeMap::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let (d, l) = (rec.get(0).unwrap_or(""), rec.get(1).unwrap_or(""));
        let date = parse_date(d).ok_or_else(|| mpnarrative::Error::Parse {
            row: row + 1,
            column: "date".into(),
            message: format!("unparseable date `{d}`"),
        })?;
        out.entry(quarter_start(date)).or_default().push(SentenceLabel::parse(l)?);
    }
    Ok(out)
}

pub fn tone(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (docs, lex) = corpus_and_lexicon(cfg, art)?;
    let mut rows = Vec::new();
    for (date, texts) in group_by_quarter(&docs) {
        let c = TermCounts::of(&texts, &lex);
        rows.push(vec![
            date.to_string(),
            c.words.to_string(),
            c.positive.to_string(),
            c.negative.to_string(),
            num(c.tone()?),
        ]);
    }
    art.csv("tone.csv", &["date", "words", "positive", "negative", "tone"], &rows)?;

    if let Some(path) = &cfg.text.sentences {
        let groups = sentence_labels(path)?;
        art.input(path)?;
        let rows: Vec<Vec<String>> = groups
            .iter()
            .map(|(d, v)| Ok(vec![d.to_string(), v.len().to_string(), num(label_tone_index(v)?)]))
            .collect::<Result<_>>()?;
        art.csv("label_tone.csv", &["date", "sentences", "tone"], &rows)?;
    }
    Ok(())
}

pub fn uncertainty(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let (docs, lex) = corpus_and_lexicon(cfg, art)?;
    let date = |s: &str| parse_date(s).ok_or_else(|| anyhow!("unparseable base-window date `{s}`"));
    let base = (date(&cfg.text.base_start)?, date(&cfg.text.base_end)?);
    let rows: Vec<Vec<String>> = uncertainty_index(&group_by_quarter(&docs), &lex, base)?
        .iter()
        .map(|r| vec![r.date.to_string(), r.words.to_string(), num(r.raw), num(r.index)])
        .collect();
    art.csv("uncertainty.csv", &["date", "words", "raw", "index"], &rows)
}

pub fn alpha(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let path = required(&cfg.text.labels, "labels")?;
    let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let m = read_labels(file)?;
    art.input(path)?;
    let a = krippendorff_alpha(&m)?;
    art.json("alpha.json", &json!({ "alpha": a, "units": m.units.len(), "coders": m.coders }))
}
