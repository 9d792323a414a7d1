use crate::error::{Error, Result};
use crate::linalg::{dense_from_sparse, RowReducer};
use crate::scalar::Scalar;

/// A coordinate subspace held in reduced row echelon form.
///
/// Two subspaces are equal exactly when their canonical bases are equal, so
/// the derived `PartialEq` is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![crate::scalar::zero(); ambient_dim];
                v[i] = crate::scalar::one();
                v
            })
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn span<I, V>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let mut reducer = RowReducer::new(ambient_dim);
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    actual: v.len(),
                });
            }
            reducer.insert_dense(v);
        }
        Ok(Self::from_reducer(reducer))
    }

    pub(crate) fn from_reducer(reducer: RowReducer) -> Self {
        let ambient_dim = reducer.ncols();
        let basis = reducer
            .into_rref()
            .into_iter()
            .map(|(_, row)| dense_from_sparse(&row, ambient_dim))
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    fn reducer(&self) -> RowReducer {
        let mut r = RowReducer::new(self.ambient_dim);
        for row in &self.basis {
            r.insert_dense(row);
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && self.reducer().contains_dense(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        if other.ambient_dim != self.ambient_dim {
            return false;
        }
        let r = self.reducer();
        other.basis.iter().all(|v| r.contains_dense(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                actual: other.ambient_dim,
            });
        }
        Subspace::span(self.ambient_dim, self.basis.iter().chain(&other.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn canonical_form_decides_equality() {
        let a = Subspace::span(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, [v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[3, 4, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
        assert!(Subspace::full(3).contains_subspace(&a));
        assert!(!a.contains_subspace(&Subspace::full(3)));
        assert_eq!(a.sum(&Subspace::span(3, [v(&[0, 0, 1])]).unwrap()).unwrap(), Subspace::full(3));
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(matches!(
            Subspace::span(3, [v(&[1, 2])]),
            Err(Error::DimensionMismatch { expected: 3, actual: 2 })
        ));
    }
}
