use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::TimeSeriesFrame;

/// A linear model `y = X b + u` with instruments `Z`. Exogenous regressors
/// appear in both `X` and `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionData {
    pub y: DVector<f64>,
    pub x: DMatrix<f64>,
    pub x_names: Vec<String>,
    pub z: DMatrix<f64>,
    pub z_names: Vec<String>,
    /// Indices into `x` of the regressors treated as endogenous.
    pub endogenous: Vec<usize>,
}

impl RegressionData {
    pub fn new(
        y: DVector<f64>,
        x: DMatrix<f64>,
        x_names: Vec<String>,
        z: DMatrix<f64>,
        z_names: Vec<String>,
        endogenous: Vec<usize>,
    ) -> Result<Self> {
        let t = y.len();
        if x.nrows() != t || z.nrows() != t {
            return Err(Error::DimensionMismatch(format!(
                "y has {t} rows, X {}, Z {}",
                x.nrows(),
                z.nrows()
            )));
        }
        if x_names.len() != x.ncols() || z_names.len() != z.ncols() {
            return Err(Error::DimensionMismatch("column names do not match matrix widths".into()));
        }
        if endogenous.iter().any(|&j| j >= x.ncols()) {
            return Err(Error::InvalidArgument("endogenous index out of range".into()));
        }
        if y.iter().chain(x.iter()).chain(z.iter()).any(|v| !v.is_finite()) {
            return Err(Error::MissingValue("regression data contains NaN".into()));
        }
        Ok(Self { y, x, x_names, z, z_names, endogenous })
    }

    /// Plain regression: instruments are the regressors themselves.
    pub fn exogenous(y: DVector<f64>, x: DMatrix<f64>, x_names: Vec<String>) -> Result<Self> {
        let z = x.clone();
        let z_names = x_names.clone();
        Self::new(y, x, x_names, z, z_names, Vec::new())
    }

    pub fn nobs(&self) -> usize {
        self.y.len()
    }

    /// Instruments that are not also regressors.
    pub fn excluded_instruments(&self) -> Vec<usize> {
        let included: Vec<&String> = self
            .x_names
            .iter()
            .enumerate()
            .filter(|(j, _)| !self.endogenous.contains(j))
            .map(|(_, n)| n)
            .collect();
        (0..self.z.ncols()).filter(|&j| !included.contains(&&self.z_names[j])).collect()
    }

    pub fn with_y(&self, y: DVector<f64>) -> Self {
        Self { y, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstrumentSetKind {
    /// Rate lags 2-5 and lags 1-4 of both gaps.
    Rich,
    /// Rate lag 2 and the previous period's two forecast revisions.
    ForecastRevision,
    /// Rate lags 2-3 and gap lags 1-2.
    Close,
    /// Rate lags 4-5 and gap lags 3-4.
    Distant,
    /// Explicit `(column, lag)` pairs.
    Custom(Vec<(String, usize)>),
}

impl InstrumentSetKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rich" => Ok(Self::Rich),
            "forecast_revision" | "revision" => Ok(Self::ForecastRevision),
            "close" => Ok(Self::Close),
            "distant" => Ok(Self::Distant),
            other => Err(Error::InvalidArgument(format!("unknown instrument set `{other}`"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Rich => "rich",
            Self::ForecastRevision => "forecast_revision",
            Self::Close => "close",
            Self::Distant => "distant",
            Self::Custom(_) => "custom",
        }
    }
}

/// Column names of the Taylor-rule inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TaylorColumns {
    pub rate: String,
    pub rstar: String,
    pub gap_pi: String,
    pub gap_x: String,
    pub sentiment: String,
    pub revision_pi: String,
    pub revision_x: String,
}

impl Default for TaylorColumns {
    fn default() -> Self {
        Self {
            rate: "i".into(),
            rstar: "rstar".into(),
            gap_pi: "gap_pi".into(),
            gap_x: "gap_x".into(),
            sentiment: "s".into(),
            revision_pi: "rev_gap_pi".into(),
            revision_x: "rev_gap_x".into(),
        }
    }
}

impl TaylorColumns {
    /// `(column, lag)` pairs of the excluded instruments. The revision
    /// columns hold the revision made at their own date, so the set uses
    /// their first lag.
    pub fn excluded(&self, kind: &InstrumentSetKind) -> Vec<(String, usize)> {
        let lags = |rate: &[usize], gaps: &[usize]| {
            let mut v: Vec<(String, usize)> = rate.iter().map(|&l| (self.rate.clone(), l)).collect();
            v.extend(gaps.iter().map(|&l| (self.gap_pi.clone(), l)));
            v.extend(gaps.iter().map(|&l| (self.gap_x.clone(), l)));
            v
        };
        match kind {
            InstrumentSetKind::Rich => lags(&[2, 3, 4, 5], &[1, 2, 3, 4]),
            InstrumentSetKind::Close => lags(&[2, 3], &[1, 2]),
            InstrumentSetKind::Distant => lags(&[4, 5], &[3, 4]),
            InstrumentSetKind::ForecastRevision => vec![
                (self.rate.clone(), 2),
                (self.revision_pi.clone(), 1),
                (self.revision_x.clone(), 1),
            ],
            InstrumentSetKind::Custom(v) => v.clone(),
        }
    }
}

fn lag_name(name: &str, lag: usize) -> String {
    if lag == 0 {
        name.to_string()
    } else {
        format!("{name}_l{lag}")
    }
}

/// The augmented inertial rule
/// `i_t = c + rho i_{t-1} + alpha r*_t + gamma gpi_t + beta gx_t + delta s_t + e_t`
/// with `s_t` endogenous. Rows start after the longest instrument lag and
/// rows with any missing input are dropped.
pub fn taylor_rule_data(frame: &TimeSeriesFrame, cols: &TaylorColumns, kind: &InstrumentSetKind) -> Result<RegressionData> {
    let excluded = cols.excluded(kind);
    if excluded.iter().any(|(_, l)| *l == 0) {
        return Err(Error::InvalidArgument("instrument lags must be at least 1".into()));
    }
    let regressors: Vec<(String, usize)> = vec![
        (cols.rate.clone(), 1),
        (cols.rstar.clone(), 0),
        (cols.gap_pi.clone(), 0),
        (cols.gap_x.clone(), 0),
        (cols.sentiment.clone(), 0),
    ];
    let mut x_names = vec!["const".to_string()];
    x_names.extend(regressors.iter().map(|(n, l)| lag_name(n, *l)));
    let mut z_names: Vec<String> = x_names[..5].to_vec();
    z_names.extend(excluded.iter().map(|(n, l)| lag_name(n, *l)));

    let max_lag = regressors.iter().chain(&excluded).map(|(_, l)| *l).max().unwrap_or(0);
    let rate = frame.column(&cols.rate)?;
    let fetch = |spec: &[(String, usize)]| -> Result<Vec<&[f64]>> {
        spec.iter().map(|(n, _)| frame.column(n)).collect()
    };
    let xr = fetch(&regressors)?;
    let zr = fetch(&excluded)?;

    let mut rows_y = Vec::new();
    let mut rows_x: Vec<f64> = Vec::new();
    let mut rows_z: Vec<f64> = Vec::new();
    for t in max_lag..frame.len() {
        let mut xv = vec![1.0];
        xv.extend(regressors.iter().zip(&xr).map(|((_, l), c)| c[t - l]));
        let mut zv = xv[..5].to_vec();
        zv.extend(excluded.iter().zip(&zr).map(|((_, l), c)| c[t - l]));
        if rate[t].is_finite() && xv.iter().chain(&zv).all(|v| v.is_finite()) {
            rows_y.push(rate[t]);
            rows_x.extend(xv);
            rows_z.extend(zv);
        }
    }
    let t = rows_y.len();
    let need = z_names.len() + 1;
    if t < need {
        return Err(Error::InsufficientData { need, have: t });
    }
    RegressionData::new(
        DVector::from_vec(rows_y),
        DMatrix::from_row_slice(t, x_names.len(), &rows_x),
        x_names,
        DMatrix::from_row_slice(t, z_names.len(), &rows_z),
        z_names,
        vec![5],
    )
}
