use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{self, Scalar};

/// An `n × n` matrix acting on algebra coordinates.
///
/// Column `j` holds the image of the `j`-th basis vector:
/// `d(e_j) = Σ_i M[i][j] e_i`. Indices here are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    dim: usize,
    matrix: Vec<Vec<Scalar>>,
}

impl LinearMap {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            matrix: vec![vec![Scalar::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.matrix[i][i] = scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: bad.len(),
            });
        }
        Ok(Self { dim, matrix: rows })
    }

    /// Builds a map from the images of basis vectors, given 1-based:
    /// each `(j, i, c)` contributes `c · e_i` to `d(e_j)`.
    pub fn from_images(dim: usize, images: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut m = Self::zero(dim);
        for (j, i, c) in images {
            m.matrix[i - 1][j - 1] += c;
        }
        m
    }

    /// Flat vector in row-major `(row, column)` order.
    pub fn from_flat(dim: usize, flat: &[Scalar]) -> Self {
        assert_eq!(flat.len(), dim * dim);
        Self {
            dim,
            matrix: flat.chunks(dim).map(|c| c.to_vec()).collect(),
        }
    }

    pub fn to_flat(&self) -> Vec<Scalar> {
        self.matrix.iter().flatten().cloned().collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.matrix[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<Scalar> {
        self.matrix.iter().map(|r| r[col].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(self
            .matrix
            .iter()
            .map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn check_same(&self, other: &LinearMap) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same(other)?;
        let n = self.dim;
        let mut out = LinearMap::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.matrix[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.matrix[k][j];
                    if !b.is_zero() {
                        out.matrix[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same(other)?;
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(LinearMap { dim: self.dim, matrix })
    }

    /// `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &LinearMap) -> Result<LinearMap> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn rank(&self) -> usize {
        linalg::rank_of(&self.matrix, self.dim)
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        linalg::invert(&self.matrix)
            .map(|matrix| LinearMap { dim: self.dim, matrix })
            .map_err(|rank| Error::SingularMatrix { rank, dim: self.dim })
    }

    /// Row-major grid of canonical rational strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(scalar::to_string).collect())
            .collect()
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
