//! Krippendorff's alpha for nominal labels.

use std::collections::BTreeMap;
use std::io::Read;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Units by coders; `None` marks a missing label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMatrix {
    pub coders: Vec<String>,
    pub units: Vec<String>,
    pub labels: Vec<Vec<Option<String>>>,
}

impl LabelMatrix {
    pub fn new(coders: Vec<String>, units: Vec<String>, labels: Vec<Vec<Option<String>>>) -> Result<Self> {
        if coders.len() < 2 {
            return Err(Error::InvalidArgument("need at least two coders".into()));
        }
        if labels.len() != units.len() || labels.iter().any(|row| row.len() != coders.len()) {
            return Err(Error::DimensionMismatch("label matrix shape".into()));
        }
        if !labels.iter().any(|row| row.iter().flatten().count() >= 2) {
            return Err(Error::DegenerateData("no unit has two labels".into()));
        }
        Ok(Self { coders, units, labels })
    }

    /// Unnamed matrix from rows of labels.
    pub fn from_rows<S: AsRef<str>>(rows: &[Vec<Option<S>>]) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        let labels = rows
            .iter()
            .map(|r| r.iter().map(|v| v.as_ref().map(|s| s.as_ref().to_string())).collect())
            .collect();
        Self::new(
            (0..k).map(|c| format!("c{c}")).collect(),
            (0..rows.len()).map(|u| format!("u{u}")).collect(),
            labels,
        )
    }
}

#[derive(Deserialize)]
struct LabelRecord {
    unit: String,
    coder: String,
    label: String,
}

/// Long CSV `unit,coder,label`; blank labels are missing. Units and coders
/// keep their first-appearance order.
pub fn read_labels(reader: impl Read) -> Result<LabelMatrix> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut units: Vec<String> = Vec::new();
    let mut coders: Vec<String> = Vec::new();
    let mut cells: BTreeMap<(usize, usize), String> = BTreeMap::new();
    for (row, rec) in rdr.deserialize::<LabelRecord>().enumerate() {
        let rec = rec?;
        let u = position_or_push(&mut units, rec.unit);
        let c = position_or_push(&mut coders, rec.coder);
        let label = rec.label.trim().to_string();
        if label.is_empty() {
            continue;
        }
        if cells.insert((u, c), label).is_some() {
            return Err(Error::Parse {
                row: row + 1,
                column: "label".into(),
                message: "duplicate (unit, coder) pair".into(),
            });
        }
    }
    let labels = (0..units.len())
        .map(|u| (0..coders.len()).map(|c| cells.get(&(u, c)).cloned()).collect())
        .collect();
    LabelMatrix::new(coders, units, labels)
}

fn position_or_push(v: &mut Vec<String>, s: String) -> usize {
    match v.iter().position(|x| *x == s) {
        Some(i) => i,
        None => {
            v.push(s);
            v.len() - 1
        }
    }
}

/// Coincidence matrix over the sorted label values; units with fewer than
/// two labels are not pairable and drop out.
pub fn coincidence_matrix(m: &LabelMatrix) -> (Vec<String>, Vec<Vec<f64>>) {
    let values: Vec<String> = {
        let mut v: Vec<String> = m.labels.iter().flatten().flatten().cloned().collect();
        v.sort();
        v.dedup();
        v
    };
    let idx = |s: &String| values.binary_search(s).expect("label indexed");
    let q = values.len();
    let mut o = vec![vec![0.0; q]; q];
    for row in &m.labels {
        let present: Vec<usize> = row.iter().flatten().map(idx).collect();
        let mu = present.len();
        if mu < 2 {
            continue;
        }
        let w = 1.0 / (mu as f64 - 1.0);
        for (i, &a) in present.iter().enumerate() {
            for (j, &b) in present.iter().enumerate() {
                if i != j {
                    o[a][b] += w;
                }
            }
        }
    }
    (values, o)
}

/// `alpha = 1 - (n - 1) sum_{c != k} o_ck / sum_{c != k} n_c n_k`.
pub fn krippendorff_alpha(m: &LabelMatrix) -> Result<f64> {
    let (values, o) = coincidence_matrix(m);
    if values.len() < 2 {
        return Err(Error::DegenerateData("a single label value; alpha is undefined".into()));
    }
    let nc: Vec<f64> = o.iter().map(|row| row.iter().sum()).collect();
    let n: f64 = nc.iter().sum();
    let mut observed = 0.0;
    let mut expected = 0.0;
    for c in 0..values.len() {
        for k in 0..values.len() {
            if c != k {
                observed += o[c][k];
                expected += nc[c] * nc[k];
            }
        }
    }
    if expected == 0.0 {
        return Err(Error::DegenerateData("pairable labels share one value".into()));
    }
    Ok(1.0 - (n - 1.0) * observed / expected)
}
