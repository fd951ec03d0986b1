//! Minimal dense symmetric linear algebra: just enough for Gram matrices,
//! their Cholesky factors, and the orthonormality checks built on them.

use crate::error::{Error, Result};

/// Relative pivot tolerance: a pivot ≤ 1e−12 · max diagonal entry is treated
/// as a factorization failure rather than silently regularized.
pub const PIVOT_REL_TOL: f64 = 1e-12;

/// Dense square matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Build from an entry function; the caller is responsible for symmetry.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    /// Wrap a row-major buffer of length n².
    pub(crate) fn from_flat(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        SquareMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in 0..i {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    /// Add `eps` to every diagonal entry (opt-in jitter; recorded by callers).
    pub fn add_diagonal(&mut self, eps: f64) {
        for i in 0..self.n {
            self.data[i * self.n + i] += eps;
        }
    }
}

/// Lower-triangular Cholesky factor L with L·Lᵀ = G.
#[derive(Debug, Clone)]
pub struct SpdFactor {
    n: usize,
    lower: Vec<f64>, // row-major, upper part zero
}

/// Factor a symmetric positive definite matrix, failing on the first pivot
/// that is not strictly positive relative to the largest diagonal entry.
pub fn cholesky_spd(g: &SquareMatrix) -> Result<SpdFactor> {
    if !g.is_symmetric() {
        return Err(Error::domain(
            "cholesky_spd requires an exactly symmetric matrix".to_string(),
        ));
    }
    let n = g.n();
    let max_diag = (0..n).fold(0.0f64, |m, i| m.max(g.at(i, i)));
    let threshold = PIVOT_REL_TOL * max_diag;
    let mut l = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = g.at(i, j);
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                // `!(sum > threshold)` also traps NaN pivots
                if !(sum > threshold) {
                    return Err(Error::NotPositiveDefinite {
                        index: i,
                        value: sum,
                    });
                }
                l[i * n + i] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Ok(SpdFactor { n, lower: l })
}

impl SpdFactor {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.lower[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.lower[i * self.n..(i + 1) * self.n]
    }

    /// Column `j` of L as an owned vector (rows < j are structurally zero).
    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.at(i, j)).collect()
    }

    /// y = L·z (full synthesis), computed row-wise with a fixed accumulation
    /// order so results are reproducible bit-for-bit.
    pub fn mul_vec(&self, z: &[f64]) -> Result<Vec<f64>> {
        if z.len() != self.n {
            return Err(Error::shape(format!(
                "mul_vec expects length {}, got {}",
                self.n,
                z.len()
            )));
        }
        Ok((0..self.n)
            .map(|i| {
                let row = self.row(i);
                let mut acc = 0.0;
                for k in 0..=i {
                    acc += row[k] * z[k];
                }
                acc
            })
            .collect())
    }

    /// Solve L·x = b by forward substitution.
    pub fn solve_lower(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.n {
            return Err(Error::shape(format!(
                "solve_lower expects length {}, got {}",
                self.n,
                b.len()
            )));
        }
        let mut x = vec![0.0f64; self.n];
        for i in 0..self.n {
            let mut sum = b[i];
            for k in 0..i {
                sum -= self.at(i, k) * x[k];
            }
            x[i] = sum / self.at(i, i);
        }
        Ok(x)
    }

    /// ‖L·Lᵀ − G‖_max, the reconstruction error against the factored matrix.
    pub fn reconstruction_error(&self, g: &SquareMatrix) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..=i {
                let mut acc = 0.0;
                for k in 0..=j.min(i) {
                    acc += self.at(i, k) * self.at(j, k);
                }
                worst = worst.max((acc - g.at(i, j)).abs());
            }
        }
        worst
    }

    /// ‖L^{-1} G L^{-T} − I‖_max: how far the implied basis is from
    /// orthonormal in the inner product defined by G.
    pub fn orthonormality_residual(&self, g: &SquareMatrix) -> Result<f64> {
        let n = self.n;
        if g.n() != n {
            return Err(Error::shape(format!(
                "dimension mismatch: factor {} vs matrix {}",
                n,
                g.n()
            )));
        }
        // W = L^{-1} G, column by column
        let mut w = SquareMatrix::zeros(n);
        for j in 0..n {
            let col: Vec<f64> = (0..n).map(|i| g.at(i, j)).collect();
            let x = self.solve_lower(&col)?;
            for i in 0..n {
                w.set(i, j, x[i]);
            }
        }
        // V = W L^{-T} = (L^{-1} Wᵀ)ᵀ, again column by column
        let mut worst = 0.0f64;
        for i in 0..n {
            let row: Vec<f64> = (0..n).map(|j| w.at(i, j)).collect();
            let x = self.solve_lower(&row)?;
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((x[j] - expect).abs());
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identity_factors_to_identity() {
        let g = SquareMatrix::from_fn(4, |i, j| if i == j { 1.0 } else { 0.0 });
        let f = cholesky_spd(&g).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(f.at(i, j), expect);
            }
        }
    }

    #[test]
    fn hand_checkable_two_by_two() {
        let mut g = SquareMatrix::zeros(2);
        g.set(0, 0, 4.0);
        g.set(0, 1, 2.0);
        g.set(1, 0, 2.0);
        g.set(1, 1, 5.0);
        let f = cholesky_spd(&g).unwrap();
        assert_relative_eq!(f.at(0, 0), 2.0, epsilon = 1e-15);
        assert_relative_eq!(f.at(1, 0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(f.at(1, 1), 2.0, epsilon = 1e-15);
        assert_eq!(f.at(0, 1), 0.0);
    }

    #[test]
    fn reports_failing_pivot() {
        // eigenvalues 3 and −1: not positive definite
        let mut g = SquareMatrix::zeros(2);
        g.set(0, 0, 1.0);
        g.set(0, 1, 2.0);
        g.set(1, 0, 2.0);
        g.set(1, 1, 1.0);
        match cholesky_spd(&g) {
            Err(Error::NotPositiveDefinite { index, value }) => {
                assert_eq!(index, 1);
                assert!(value < 0.0);
            }
            other => panic!("expected NotPositiveDefinite, got {other:?}"),
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        let mut g = SquareMatrix::zeros(2);
        g.set(0, 1, 1.0);
        assert!(cholesky_spd(&g).is_err());
    }

    #[test]
    fn reconstruction_and_solve() {
        // SPD via AᵀA + I with a fixed deterministic A
        let n = 12;
        let a = SquareMatrix::from_fn(n, |i, j| ((i * 7 + j * 13) % 17) as f64 / 17.0);
        let mut g = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += a.at(k, i) * a.at(k, j);
                }
                g.set(i, j, acc + if i == j { 1.0 } else { 0.0 });
            }
        }
        let f = cholesky_spd(&g).unwrap();
        assert!(f.reconstruction_error(&g) <= 1e-12 * g.max_abs());
        assert!(f.orthonormality_residual(&g).unwrap() <= 1e-12);

        let b: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let x = f.solve_lower(&b).unwrap();
        let back = {
            let mut y = vec![0.0; n];
            for i in 0..n {
                for k in 0..=i {
                    y[i] += f.at(i, k) * x[k];
                }
            }
            y
        };
        for i in 0..n {
            assert_relative_eq!(back[i], b[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn mul_vec_round_trips_solve() {
        let mut g = SquareMatrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                g.set(i, j, if i == j { 2.0 } else { 0.5 });
            }
        }
        let f = cholesky_spd(&g).unwrap();
        let z = vec![1.0, -2.0, 3.0];
        let y = f.mul_vec(&z).unwrap();
        let z_back = f.solve_lower(&y).unwrap();
        for (a, b) in z.iter().zip(&z_back) {
            assert_relative_eq!(a, b, epsilon = 1e-13);
        }
    }
}
