//! Banded LU with partial pivoting.
//!
//! Storage is row-major with room for the fill-in produced by row swaps, so a
//! matrix with lower bandwidth `kl` and upper bandwidth `ku` keeps
//! `2*kl + ku + 1` slots per row.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct BandMatrix<T> {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<T>,
}

impl<T: Real> BandMatrix<T> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self { n, kl, ku, width, data: vec![T::zero(); n * width] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku);
        i * self.width + (j + self.kl - i)
    }

    /// Adds `v` to entry `(i, j)`. Panics if the entry is outside the band.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        assert!(
            j + self.kl >= i && j <= i + self.ku,
            "entry ({i}, {j}) outside band kl={} ku={}",
            self.kl,
            self.ku
        );
        let s = self.slot(i, j);
        self.data[s] = self.data[s] + v;
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        if j + self.kl < i || j > i + self.kl + self.ku {
            return T::zero();
        }
        self.data[self.slot(i, j)]
    }

    /// Solves `A x = b` in place, consuming the matrix.
    pub fn solve(mut self, b: &[T]) -> Result<Vec<T>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!("rhs has {} rows, matrix {n}", b.len())));
        }
        let mut x = b.to_vec();
        let scale = self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if scale == T::zero() {
            return Err(Error::SingularSystem);
        }
        let tiny = scale * T::epsilon() * T::from_usize_lossy(n.max(16));
        let reach = self.kl + self.ku;

        for k in 0..n {
            let last_row = (k + self.kl).min(n - 1);
            let mut p = k;
            let mut best = self.get(k, k).abs();
            for i in k + 1..=last_row {
                let v = self.get(i, k).abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= tiny {
                return Err(Error::SingularSystem);
            }
            let last_col = (k + reach).min(n - 1);
            if p != k {
                for j in k..=last_col {
                    let a = self.slot(k, j);
                    let c = self.slot(p, j);
                    self.data.swap(a, c);
                }
                x.swap(k, p);
            }
            let pivot = self.get(k, k);
            for i in k + 1..=last_row {
                let l = self.get(i, k) / pivot;
                if l == T::zero() {
                    continue;
                }
                let s = self.slot(i, k);
                self.data[s] = T::zero();
                for j in k + 1..=last_col {
                    let u = self.get(k, j);
                    if u != T::zero() {
                        let s = self.slot(i, j);
                        self.data[s] = self.data[s] - l * u;
                    }
                }
                x[i] = x[i] - l * x[k];
            }
        }

        for k in (0..n).rev() {
            let last_col = (k + reach).min(n - 1);
            let mut acc = x[k];
            for j in k + 1..=last_col {
                acc = acc - self.get(k, j) * x[j];
            }
            x[k] = acc / self.get(k, k);
        }
        Ok(x)
    }
}
