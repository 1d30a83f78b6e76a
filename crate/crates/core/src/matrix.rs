use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// A dense square real matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix whose `j`-th column is `column(j)`.
    pub fn from_columns(n: usize, mut column: impl FnMut(usize) -> Vec<f64>) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            let col = column(j);
            debug_assert_eq!(col.len(), n);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diagonal(blocks: &[RealMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m[(offset + i, offset + j)] = b[(i, j)];
                }
            }
            offset += b.n;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix size");
        self.rows()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Product of the Euclidean norms of the rows. Hadamard's inequality
    /// bounds `|det|` by this, so it makes determinant thresholds dimensionless.
    pub fn row_norm_product(&self) -> f64 {
        self.rows()
            .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
            .product()
    }

    fn lu(&self) -> Option<(Vec<f64>, Vec<usize>, f64)> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, a[i * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let d = a[k * n + k];
            for i in k + 1..n {
                let factor = a[i * n + k] / d;
                a[i * n + k] = factor;
                for j in k + 1..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
        Some((a, perm, sign))
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> f64 {
        match self.lu() {
            None => 0.0,
            Some((lu, _, sign)) => (0..self.n).fold(sign, |acc, k| acc * lu[k * self.n + k]),
        }
    }

    /// Solves `self · x = b`; `None` when the matrix is exactly singular.
    pub fn solve(&self, b: &[f64]) -> Option<Vec<f64>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let (lu, perm, _) = self.lu()?;
        let mut y: Vec<f64> = perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                y[i] -= lu[i * n + j] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                y[i] -= lu[i * n + j] * y[j];
            }
            y[i] /= lu[i * n + i];
        }
        if y.iter().all(|v| v.is_finite()) {
            Some(y)
        } else {
            None
        }
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.n, rhs.n, "matrix sizes must agree");
        let n = self.n;
        RealMatrix::from_fn(n, |i, j| (0..n).map(|k| self[(i, k)] * rhs[(k, j)]).sum())
    }
}

impl Add for &RealMatrix {
    type Output = RealMatrix;
    fn add(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.n, rhs.n, "matrix sizes must agree");
        RealMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RealMatrix {
    type Output = RealMatrix;
    fn sub(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.n, rhs.n, "matrix sizes must agree");
        RealMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RealMatrix {
    type Output = RealMatrix;
    fn neg(self) -> RealMatrix {
        self.scale(-1.0)
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for RealMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for row in self.rows() {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}
