use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use super::lexicon::{tokenize, Category, Lexicon};
use crate::error::{Error, Result};
use crate::frame::parse_date;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub date: NaiveDate,
    pub text: String,
}

impl Document {
    pub fn new(id: impl Into<String>, date: NaiveDate, text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.trim().is_empty() {
            return Err(Error::InvalidArgument("document text is empty".into()));
        }
        Ok(Self { id: id.into(), date, text })
    }
}

#[derive(Deserialize)]
struct CorpusRecord {
    id: String,
    date: String,
    text: String,
}

/// CSV with header `id,date,text`.
pub fn read_corpus(reader: impl Read) -> Result<Vec<Document>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut docs = Vec::new();
    for (row, rec) in rdr.deserialize::<CorpusRecord>().enumerate() {
        let rec = rec?;
        let date = parse_date(&rec.date).ok_or_else(|| Error::Parse {
            row: row + 1,
            column: "date".into(),
            message: format!("unparseable date `{}`", rec.date),
        })?;
        docs.push(Document::new(rec.id, date, rec.text)?);
    }
    Ok(docs)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    read_corpus(std::fs::File::open(path)?)
}

/// First day of the quarter containing `d`.
pub fn quarter_start(d: NaiveDate) -> NaiveDate {
    let m = (d.month0() / 3) * 3 + 1;
    NaiveDate::from_ymd_opt(d.year(), m, 1).expect("valid quarter start")
}

pub fn group_by_quarter(docs: &[Document]) -> BTreeMap<NaiveDate, Vec<&str>> {
    let mut out: BTreeMap<NaiveDate, Vec<&str>> = BTreeMap::new();
    for d in docs {
        out.entry(quarter_start(d.date)).or_default().push(d.text.as_str());
    }
    out
}

/// Counts pooled over a period's documents.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TermCounts {
    pub words: usize,
    pub positive: usize,
    pub negative: usize,
    pub uncertainty: usize,
}

impl TermCounts {
    pub fn of(texts: &[&str], lex: &Lexicon) -> Self {
        texts.iter().fold(Self::default(), |acc, t| {
            let toks = tokenize(t);
            Self {
                words: acc.words + toks.len(),
                positive: acc.positive + lex.count(&toks, Category::Positive),
                negative: acc.negative + lex.count(&toks, Category::Negative),
                uncertainty: acc.uncertainty + lex.count(&toks, Category::Uncertainty),
            }
        })
    }

    pub fn tone(&self) -> Result<f64> {
        if self.words == 0 {
            return Err(Error::EmptyPeriod);
        }
        Ok((self.positive as f64 - self.negative as f64) / self.words as f64)
    }

    /// Uncertainty terms per hundred words.
    pub fn uncertainty_raw(&self) -> Result<f64> {
        if self.words == 0 {
            return Err(Error::EmptyPeriod);
        }
        Ok(100.0 * self.uncertainty as f64 / self.words as f64)
    }
}

/// `(n+ - n-) / n_words` with counts pooled across the period's documents.
pub fn tone_index(texts: &[&str], lex: &Lexicon) -> Result<f64> {
    TermCounts::of(texts, lex).tone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentenceLabel {
    Positive,
    Negative,
    Neutral,
}

impl SentenceLabel {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "positive" | "pos" => Ok(Self::Positive),
            "negative" | "neg" => Ok(Self::Negative),
            "neutral" | "neu" => Ok(Self::Neutral),
            other => Err(Error::InvalidArgument(format!("unknown sentence label `{other}`"))),
        }
    }
}

/// `(n_pos - n_neg) / n_sentences`.
pub fn label_tone_index(labels: &[SentenceLabel]) -> Result<f64> {
    if labels.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let pos = labels.iter().filter(|l| **l == SentenceLabel::Positive).count() as f64;
    let neg = labels.iter().filter(|l| **l == SentenceLabel::Negative).count() as f64;
    Ok((pos - neg) / labels.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyRow {
    pub date: NaiveDate,
    pub words: usize,
    pub raw: f64,
    pub index: f64,
}

/// Raw per-hundred-word uncertainty counts, rescaled so their mean over
/// `[base.0, base.1]` is 100.
pub fn uncertainty_index(
    periods: &BTreeMap<NaiveDate, Vec<&str>>,
    lex: &Lexicon,
    base: (NaiveDate, NaiveDate),
) -> Result<Vec<UncertaintyRow>> {
    let raw: Vec<(NaiveDate, usize, f64)> = periods
        .iter()
        .map(|(d, texts)| {
            let c = TermCounts::of(texts, lex);
            c.uncertainty_raw().map(|r| (*d, c.words, r))
        })
        .collect::<Result<_>>()?;
    rescale_to_base(&raw, base)
}

pub fn rescale_to_base(raw: &[(NaiveDate, usize, f64)], base: (NaiveDate, NaiveDate)) -> Result<Vec<UncertaintyRow>> {
    let in_base: Vec<f64> = raw
        .iter()
        .filter(|(d, _, _)| *d >= base.0 && *d <= base.1)
        .map(|r| r.2)
        .collect();
    if in_base.is_empty() {
        return Err(Error::EmptyBaseWindow);
    }
    let mean = in_base.iter().sum::<f64>() / in_base.len() as f64;
    if !(mean > 0.0) {
        return Err(Error::DegenerateData("base-window mean of the raw index is zero".into()));
    }
    Ok(raw
        .iter()
        .map(|&(date, words, r)| UncertaintyRow { date, words, raw: r, index: 100.0 * r / mean })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon::new(&["strong", "growth", "robust"], &["weak"], &["uncertain", "risk"]).unwrap()
    }

    fn words(n: usize) -> String {
        vec!["the"; n].join(" ")
    }

    #[test]
    fn tone_direct_formula() {
        let doc = format!("strong growth robust weak {}", words(16));
        assert!((tone_index(&[&doc], &lex()).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(tone_index(&[&words(5)], &lex()).unwrap(), 0.0);
        assert!(matches!(tone_index(&[" .. "], &lex()), Err(Error::EmptyPeriod)));
    }

    #[test]
    fn tone_pools_counts() {
        // 1 positive in 2 words and 0 in 8 words: pooled 0.1, averaged 0.25
        let t = tone_index(&["strong the", &words(8)], &lex()).unwrap();
        assert!((t - 0.1).abs() < 1e-15);
    }

    #[test]
    fn labels() {
        use SentenceLabel::*;
        let v = [vec![Positive; 5], vec![Negative; 2], vec![Neutral; 3]].concat();
        assert!((label_tone_index(&v).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(label_tone_index(&[Neutral, Neutral]).unwrap(), 0.0);
        assert!(label_tone_index(&[]).is_err());
    }

    fn q(y: i32, m: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, 1).unwrap()
    }

    #[test]
    fn uncertainty_raw_and_normalised() {
        let doc = format!("uncertain risk {}", words(98));
        let mut p = BTreeMap::new();
        p.insert(q(2000, 1), vec![doc.as_str()]);
        let rows = uncertainty_index(&p, &lex(), (q(1999, 1), q(2001, 1))).unwrap();
        assert!((rows[0].raw - 2.0).abs() < 1e-12);
        assert!((rows[0].index - 100.0).abs() < 1e-12);
    }

    #[test]
    fn base_window_outside_series() {
        let mut p = BTreeMap::new();
        p.insert(q(2000, 1), vec!["risk the"]);
        let r = uncertainty_index(&p, &lex(), (q(1990, 1), q(1991, 1)));
        assert!(matches!(r, Err(Error::EmptyBaseWindow)));
    }

    #[test]
    fn corpus_csv() {
        let src = "id,date,text\na,2001-02-03,\"Strong, robust growth\"\nb,2001Q3,weak\n";
        let docs = read_corpus(src.as_bytes()).unwrap();
        assert_eq!(docs.len(), 2);
        let g = group_by_quarter(&docs);
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), vec![q(2001, 1), q(2001, 7)]);
        assert!(read_corpus("id,date,text\na,notadate,x\n".as_bytes()).is_err());
        assert!(read_corpus("id,date,text\na,2001-01-01,\"  \"\n".as_bytes()).is_err());
    }
}
