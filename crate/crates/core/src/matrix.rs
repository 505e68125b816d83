//! Small dense square matrices.

use std::fmt;

use thiserror::Error;

/// Pivots below this fraction of `‖A‖∞` are treated as zero.
pub const SINGULARITY_RATIO: f64 = 1.0e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix rows must all have length {n}")]
    NotSquare { n: usize },
    #[error("matrix must be non-empty")]
    Empty,
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is numerically singular (pivot {pivot:e}, norm {norm:e})")]
    Singular { pivot: f64, norm: f64 },
    #[error("dimension mismatch: matrix is {n}x{n}, vector has {len} entries")]
    Dimension { n: usize, len: usize },
}

/// Row-major `n × n` matrix of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare { n });
            }
            for (c, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(MatrixError::NonFinite { row: r, col: c });
                }
                data.push(v);
            }
        }
        Ok(Matrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|r| self.row(r).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>, MatrixError> {
        if v.len() != self.n {
            return Err(MatrixError::Dimension {
                n: self.n,
                len: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if other.n != self.n {
            return Err(MatrixError::Dimension {
                n: self.n,
                len: other.n,
            });
        }
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(Matrix { n, data })
    }

    /// Inverse by the closed form for `n = 2`, otherwise Gauss-Jordan
    /// elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix, MatrixError> {
        let norm = self.norm_inf();
        let tol = SINGULARITY_RATIO * norm;
        let singular = |pivot: f64| MatrixError::Singular { pivot, norm };
        if norm == 0.0 {
            return Err(singular(0.0));
        }
        let inv = if self.n == 2 {
            let (a, b, c, d) = (
                self.get(0, 0),
                self.get(0, 1),
                self.get(1, 0),
                self.get(1, 1),
            );
            // the larger column-0 entry is the elimination pivot; the
            // determinant divided by it is the second pivot
            let p1 = a.abs().max(c.abs());
            let det = a * d - b * c;
            if p1 < tol || (det / p1).abs() < tol {
                return Err(singular(if p1 < tol { p1 } else { det / p1 }));
            }
            Matrix {
                n: 2,
                data: vec![d / det, -b / det, -c / det, a / det],
            }
        } else {
            self.gauss_jordan(tol).map_err(singular)?
        };
        if let Some(i) = inv.data.iter().position(|v| !v.is_finite()) {
            return Err(MatrixError::NonFinite {
                row: i / self.n,
                col: i % self.n,
            });
        }
        Ok(inv)
    }

    fn gauss_jordan(&self, tol: f64) -> Result<Matrix, f64> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Matrix::identity(n).data;
        for col in 0..n {
            let (p, pivot) = (col..n)
                .map(|r| (r, a[r * n + col]))
                .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
                .expect("non-empty pivot range");
            if pivot.abs() < tol {
                return Err(pivot);
            }
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                    inv.swap(p * n + j, col * n + j);
                }
            }
            for j in 0..n {
                a[col * n + j] /= pivot;
                inv[col * n + j] /= pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] -= f * a[col * n + j];
                    inv[r * n + j] -= f * inv[col * n + j];
                }
            }
        }
        Ok(Matrix { n, data: inv })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}
