use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// triangular factor's diagonal normalised positive.
pub fn draw_rotation<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn orthogonality_error(q: &DMatrix<f64>) -> f64 {
    let n = q.ncols();
    (q.transpose() * q - DMatrix::identity(n, n)).abs().max()
}
