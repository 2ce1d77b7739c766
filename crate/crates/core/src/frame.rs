//! Dated numeric data frame shared by every estimator.

use std::io::{Read, Write};
use std::path::Path;

use chrono::{Datelike, NaiveDate};
use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Ordered dates with named `f64` columns. Missing cells are `NaN`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesFrame {
    dates: Vec<NaiveDate>,
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

/// Parses `YYYY-MM-DD`, `YYYY-MM` or quarterly `YYYY-Qn` (mapped to the first
/// day of the quarter).
pub fn parse_date(s: &str) -> Option<NaiveDate> {
    let s = s.trim();
    if let Some((y, q)) = s.split_once(['Q', 'q']) {
        let y: i32 = y.trim_end_matches('-').parse().ok()?;
        let q: u32 = q.parse().ok()?;
        if !(1..=4).contains(&q) {
            return None;
        }
        return NaiveDate::from_ymd_opt(y, 3 * (q - 1) + 1, 1);
    }
    if let Ok(d) = NaiveDate::parse_from_str(s, "%Y-%m-%d") {
        return Some(d);
    }
    let (y, m) = s.split_once('-')?;
    NaiveDate::from_ymd_opt(y.parse().ok()?, m.parse().ok()?, 1)
}

/// `n` consecutive quarter-start dates beginning at `year`Q`quarter`.
pub fn quarterly_dates(year: i32, quarter: u32, n: usize) -> Vec<NaiveDate> {
    let start = (year as i64) * 4 + (quarter as i64 - 1);
    (0..n as i64)
        .map(|i| {
            let k = start + i;
            NaiveDate::from_ymd_opt(k.div_euclid(4) as i32, (k.rem_euclid(4) as u32) * 3 + 1, 1)
                .expect("valid quarter start")
        })
        .collect()
}

pub fn quarter_label(d: NaiveDate) -> String {
    format!("{}-Q{}", d.year(), (d.month() - 1) / 3 + 1)
}

impl TimeSeriesFrame {
    pub fn new(dates: Vec<NaiveDate>) -> Result<Self> {
        for w in dates.windows(2) {
            if w[1] == w[0] {
                return Err(Error::DuplicateDate(w[0].to_string()));
            }
            if w[1] < w[0] {
                return Err(Error::InvalidArgument("dates must be increasing".into()));
            }
        }
        Ok(Self { dates, names: Vec::new(), columns: Vec::new() })
    }

    /// Frame on quarterly dates starting 1990Q1.
    pub fn quarterly(n: usize) -> Self {
        Self::new(quarterly_dates(1990, 1, n)).expect("increasing dates")
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let name = name.into();
        if values.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "column {name} has {} rows, frame {}",
                values.len(),
                self.len()
            )));
        }
        if let Some(i) = self.position(&name) {
            self.columns[i] = values;
        } else {
            self.names.push(name);
            self.columns.push(values);
        }
        Ok(())
    }

    pub fn with_column(mut self, name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        self.push_column(name, values)?;
        Ok(self)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.position(name)
            .map(|i| self.columns[i].as_slice())
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    }

    /// Missing-free column, as estimators require.
    pub fn complete_column(&self, name: &str) -> Result<&[f64]> {
        let c = self.column(name)?;
        if c.iter().any(|v| v.is_nan()) {
            return Err(Error::MissingValue(name.to_string()));
        }
        Ok(c)
    }

    /// `T x k` matrix of the named columns, rejecting missing cells.
    pub fn matrix(&self, names: &[&str]) -> Result<DMatrix<f64>> {
        let cols = names
            .iter()
            .map(|n| self.complete_column(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(DMatrix::from_fn(self.len(), cols.len(), |i, j| cols[j][i]))
    }

    /// Rows `range` of every column.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            dates: self.dates[range.clone()].to_vec(),
            names: self.names.clone(),
            columns: self.columns.iter().map(|c| c[range.clone()].to_vec()).collect(),
        }
    }

    /// Keeps only rows where every listed column is present.
    pub fn complete_rows(&self, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| self.position(n).ok_or_else(|| Error::MissingColumn(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let keep: Vec<usize> = (0..self.len())
            .filter(|&t| idx.iter().all(|&j| !self.columns[j][t].is_nan()))
            .collect();
        Ok(Self {
            dates: keep.iter().map(|&t| self.dates[t]).collect(),
            names: self.names.clone(),
            columns: self.columns.iter().map(|c| keep.iter().map(|&t| c[t]).collect()).collect(),
        })
    }

    /// Rescales the listed columns to in-sample mean 0 and sample variance 1.
    pub fn standardize(&self, names: &[&str]) -> Result<Self> {
        let mut out = self.clone();
        for name in names {
            let c = self.complete_column(name)?;
            let n = c.len() as f64;
            if c.len() < 2 {
                return Err(Error::ZeroVariance(name.to_string()));
            }
            let mean = c.iter().sum::<f64>() / n;
            let var = c.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
            if !(var > 0.0) || var.sqrt() <= 1e-14 * mean.abs().max(1.0) {
                return Err(Error::ZeroVariance(name.to_string()));
            }
            let sd = var.sqrt();
            let z: Vec<f64> = c.iter().map(|v| (v - mean) / sd).collect();
            out.push_column(*name, z)?;
        }
        Ok(out)
    }

    pub fn read_csv(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        let date_col = headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case("date"))
            .ok_or_else(|| Error::MissingColumn("date".into()))?;
        let names: Vec<String> = headers
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != date_col)
            .map(|(_, h)| h.to_string())
            .collect();
        let mut rows: Vec<(NaiveDate, Vec<f64>)> = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let row = line + 1;
            let rec = rec.map_err(|e| Error::Parse {
                row,
                column: String::new(),
                message: e.to_string(),
            })?;
            let raw_date = rec.get(date_col).unwrap_or("");
            let date = parse_date(raw_date).ok_or_else(|| Error::Parse {
                row,
                column: "date".into(),
                message: format!("unrecognised date {raw_date:?}"),
            })?;
            let mut values = Vec::with_capacity(names.len());
            for (i, cell) in rec.iter().enumerate() {
                if i == date_col {
                    continue;
                }
                let v = if cell.is_empty() || cell.eq_ignore_ascii_case("na") || cell.eq_ignore_ascii_case("nan") {
                    f64::NAN
                } else {
                    cell.parse::<f64>().map_err(|_| Error::NonNumericCell {
                        row,
                        column: headers.get(i).unwrap_or("").to_string(),
                        value: cell.to_string(),
                    })?
                };
                values.push(v);
            }
            rows.push((date, values));
        }
        rows.sort_by_key(|r| r.0);
        let mut frame = Self::new(rows.iter().map(|r| r.0).collect())?;
        for (j, name) in names.into_iter().enumerate() {
            frame.push_column(name, rows.iter().map(|r| r.1[j]).collect())?;
        }
        Ok(frame)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_csv(std::fs::File::open(path)?)
    }

    /// Writes `date,<columns...>` with shortest round-trip number formatting.
    pub fn write_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["date".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header)?;
        for t in 0..self.len() {
            let mut rec = vec![self.dates[t].to_string()];
            rec.extend(self.columns.iter().map(|c| fmt_num(c[t])));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

/// Shortest decimal that parses back to the same `f64`; missing is empty.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_three_rows_and_sorts() {
        let csv = "date,a,b\n2000-Q3,3,30\n2000-Q1,1,10\n2000-Q2,2,\n";
        let f = TimeSeriesFrame::read_csv(csv.as_bytes()).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.dates()[0], NaiveDate::from_ymd_opt(2000, 1, 1).unwrap());
        assert_eq!(f.dates()[2], NaiveDate::from_ymd_opt(2000, 7, 1).unwrap());
        assert_eq!(f.column("a").unwrap(), &[1.0, 2.0, 3.0]);
        assert!(f.column("b").unwrap()[1].is_nan());
        assert!(f.complete_column("b").is_err());
        assert_eq!(f.complete_rows(&["b"]).unwrap().len(), 2);
    }

    #[test]
    fn duplicate_date_rejected() {
        let csv = "date,a\n2000-01-01,1\n2000-Q1,2\n";
        assert!(matches!(TimeSeriesFrame::read_csv(csv.as_bytes()), Err(Error::DuplicateDate(_))));
    }

    #[test]
    fn bad_cells_located() {
        let csv = "date,a\n2000-01-01,1\n2000-04-01,abc\n";
        match TimeSeriesFrame::read_csv(csv.as_bytes()) {
            Err(Error::NonNumericCell { row, column, .. }) => {
                assert_eq!(row, 2);
                assert_eq!(column, "a");
            }
            other => panic!("{other:?}"),
        }
        let csv = "date,a\nyesterday,1\n";
        assert!(matches!(TimeSeriesFrame::read_csv(csv.as_bytes()), Err(Error::Parse { row: 1, .. })));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let vals = vec![0.1 + 0.2, -1e-300, std::f64::consts::PI, 123456789.123456789, f64::NAN];
        let f = TimeSeriesFrame::quarterly(5).with_column("v", vals.clone()).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let g = TimeSeriesFrame::read_csv(buf.as_slice()).unwrap();
        let back = g.column("v").unwrap();
        for (a, b) in vals.iter().zip(back) {
            assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()));
        }
        assert_eq!(g.dates(), f.dates());
    }

    #[test]
    fn standardize_columns() {
        let f = TimeSeriesFrame::quarterly(3)
            .with_column("a", vec![1.0, 2.0, 3.0])
            .unwrap()
            .with_column("b", vec![5.0, 5.0, 5.0])
            .unwrap();
        let g = f.standardize(&["a"]).unwrap();
        assert_eq!(g.column("a").unwrap(), &[-1.0, 0.0, 1.0]);
        assert_eq!(g.column("b").unwrap(), f.column("b").unwrap());
        let h = g.standardize(&["a"]).unwrap();
        for (x, y) in h.column("a").unwrap().iter().zip(g.column("a").unwrap()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert_eq!(f.standardize(&["b"]), Err(Error::ZeroVariance("b".into())));
    }

    #[test]
    fn quarter_dates() {
        let d = quarterly_dates(1999, 4, 2);
        assert_eq!(d[0], NaiveDate::from_ymd_opt(1999, 10, 1).unwrap());
        assert_eq!(d[1], NaiveDate::from_ymd_opt(2000, 1, 1).unwrap());
        assert_eq!(quarter_label(d[1]), "2000-Q1");
        assert_eq!(parse_date("2001Q2"), NaiveDate::from_ymd_opt(2001, 4, 1));
    }
}
