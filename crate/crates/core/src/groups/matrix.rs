use std::fmt;

use crate::exact::{linalg, BigRational, CycScalar, ExactError, Vector};

/// A square matrix over a cyclotomic field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<CycScalar>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![CycScalar::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = CycScalar::one();
        }
        Matrix { dim, entries }
    }

    /// Builds a matrix from rows; `None` unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Option<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(Matrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(diag: Vec<CycScalar>) -> Self {
        let dim = diag.len();
        let mut m = Matrix::identity(dim);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * dim + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &CycScalar {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vector> {
        self.entries.chunks(self.dim.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.dim)
    }

    pub fn trace(&self) -> CycScalar {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for c in 0..n {
            for r in 0..n {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix { dim: n, entries }
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(
                    (0..n)
                        .filter(|&k| !self.get(r, k).is_zero() && !rhs.get(k, c).is_zero())
                        .map(|k| self.get(r, k) * rhs.get(k, c))
                        .sum(),
                );
            }
        }
        Matrix { dim: n, entries }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[CycScalar]) -> Vector {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|k| self.get(r, k) * &v[k]).sum())
            .collect()
    }

    /// Rows of `M - I`.
    pub fn minus_identity_rows(&self) -> Vec<Vector> {
        let mut rows = self.rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] -= &CycScalar::one();
        }
        rows
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows(), self.dim)
    }

    /// Fixed space `ker(M - I)` as a basis of column vectors.
    pub fn fixed_space(&self) -> Vec<Vector> {
        linalg::kernel(&self.minus_identity_rows(), self.dim)
    }

    pub fn lift(&self, conductor: u32) -> Result<Matrix, ExactError> {
        Ok(Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| e.lift(conductor))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Least common multiple of the entry conductors.
    pub fn conductor(&self) -> u64 {
        self.entries
            .iter()
            .fold(1u64, |acc, e| num_integer::lcm(acc, e.conductor() as u64))
    }

    /// Hash key with every entry written over `ζ_conductor`.
    pub(crate) fn key(&self, conductor: u32) -> Vec<BigRational> {
        self.entries
            .iter()
            .flat_map(|e| {
                let e = e.lift(conductor).expect("entry conductor divides the key conductor");
                e.coeffs().to_vec()
            })
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
