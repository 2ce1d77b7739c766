//! Nine-variable structural test system.
//!
//! A six-variable core `(r, y, p, h, bond, s)` follows a VAR(1) driven by
//! six structural shocks, the first three of which are an anticipated
//! easing, an unanticipated easing and a positive narrative shock. The three
//! expectation rows are the core's own four-quarter-ahead forecasts (the
//! rate as a mean over one to four quarters) plus independent noise.

use nalgebra::DMatrix;

use super::var::VarDgp;
use crate::error::Result;

pub const NAMES: [&str; 9] = ["e_r", "e_y", "e_p", "r", "y", "p", "h", "bond", "s"];

/// Expectation noise large enough that mixing a noise shock into an
/// identified column shows up in the loose-rationality discrepancy.
pub const DEFAULT_SIGMA_E: f64 = 2.0;

/// Core lag matrix, rows and columns ordered `(r, y, p, h, bond, s)`.
pub fn core_lag() -> DMatrix<f64> {
    DMatrix::from_row_slice(
        6,
        6,
        &[
            0.55, 0.05, 0.05, 0.00, 0.60, 0.10, //
            -0.30, 0.85, 0.00, 0.00, -0.30, 0.30, //
            -0.10, 0.10, 0.80, 0.00, -0.10, 0.10, //
            0.00, 0.30, 0.00, 0.50, 0.00, 0.00, //
            0.10, 0.00, 0.00, 0.00, 0.70, 0.00, //
            0.00, 0.10, 0.05, 0.00, 0.00, 0.60,
        ],
    )
}

/// Core impact matrix; columns are (anticipated easing, unanticipated
/// easing, narrative, demand, supply, hours).
pub fn core_impact() -> DMatrix<f64> {
    DMatrix::from_row_slice(
        6,
        6,
        &[
            0.30, -1.00, 0.40, 0.20, 0.10, 0.00, //
            0.20, 0.30, -0.20, 0.60, 0.20, 0.10, //
            0.10, 0.20, -0.10, 0.20, -0.50, 0.00, //
            0.00, 0.10, 0.00, 0.20, 0.10, 0.50, //
            -1.00, -0.30, 0.20, 0.10, 0.00, 0.00, //
            0.40, 0.50, 1.00, 0.20, -0.10, 0.00,
        ],
    )
}

/// Rows mapping the core state into the three forecast objects.
pub fn forecast_rows(a: &DMatrix<f64>, horizon: usize) -> DMatrix<f64> {
    let mut f = DMatrix::zeros(3, a.ncols());
    let mut pow = DMatrix::identity(a.nrows(), a.ncols());
    for _ in 0..horizon {
        pow = &pow * a;
        let row = pow.row(0) / horizon as f64;
        f.set_row(0, &(f.row(0) + row));
    }
    f.set_row(1, &pow.row(1));
    f.set_row(2, &pow.row(2));
    f
}

/// The nine-variable DGP with expectation noise scale `sigma_e`. Structural
/// columns are the six core shocks followed by the three expectation noises.
pub fn svar9_dgp(sigma_e: f64) -> Result<VarDgp> {
    let a = core_lag();
    let bc = core_impact();
    let f = forecast_rows(&a, 4);
    let mut lag = DMatrix::zeros(9, 9);
    lag.view_mut((0, 3), (3, 6)).copy_from(&(&f * &a));
    lag.view_mut((3, 3), (6, 6)).copy_from(&a);
    let mut b = DMatrix::zeros(9, 9);
    b.view_mut((0, 0), (3, 6)).copy_from(&(&f * &bc));
    b.view_mut((3, 0), (6, 6)).copy_from(&bc);
    for k in 0..3 {
        b[(k, 6 + k)] = sigma_e;
    }
    let mut coef = DMatrix::zeros(9, 10);
    coef.view_mut((0, 1), (9, 9)).copy_from(&lag);
    VarDgp::structural(coef, b)
}
