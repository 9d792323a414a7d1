//! Algebras given by structure constants.
//!
//! `[e_i, e_j] = Σ_k γ_ij^k e_k`, with basis indices 1-based in every public
//! signature that names a basis vector. Coordinate vectors are plain slices
//! indexed from 0.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SparseRow;
use crate::linear_map::LinearMap;
use crate::scalar::{self, Scalar};

/// One nonzero residual of the Leibniz identity
/// `[e_i,[e_j,e_k]] − [[e_i,e_j],e_k] + [[e_i,e_k],e_j]`, read off at `e_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeibnizViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub m: usize,
    #[serde(serialize_with = "ser_scalar")]
    pub residual: Scalar,
}

fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&scalar::to_string(x))
}

impl fmt::Display for LeibnizViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(i={}, j={}, k={}, m={}): residual {}",
            self.i, self.j, self.k, self.m, self.residual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    dim: usize,
    constants: BTreeMap<(usize, usize, usize), Scalar>,
}

impl Algebra {
    /// The abelian algebra: every product vanishes.
    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(dim, std::iter::empty())
    }

    /// Builds an algebra from `((i, j, k), γ_ij^k)` entries. Zero values are
    /// dropped; repeated triples are rejected.
    pub fn new<I>(dim: usize, constants: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize, usize), Scalar)>,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut map = BTreeMap::new();
        for ((i, j, k), v) in constants {
            if !(1..=dim).contains(&i) || !(1..=dim).contains(&j) || !(1..=dim).contains(&k) {
                return Err(Error::IndexOutOfRange { i, j, k, dim });
            }
            if map.insert((i, j, k), v).is_some() {
                return Err(Error::DuplicateConstant { i, j, k });
            }
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Self { dim, constants: map })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// γ_ij^k (1-based).
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.constants.get(&(i, j, k)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero constants in `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> {
        self.constants.iter().map(|(&key, v)| (key, v))
    }

    pub fn nnz(&self) -> usize {
        self.constants.len()
    }

    /// Returns a copy with one constant replaced (zero removes it).
    pub fn with_constant(&self, i: usize, j: usize, k: usize, value: Scalar) -> Result<Self> {
        if ![i, j, k].iter().all(|x| (1..=self.dim).contains(x)) {
            return Err(Error::IndexOutOfRange { i, j, k, dim: self.dim });
        }
        let mut out = self.clone();
        if value.is_zero() {
            out.constants.remove(&(i, j, k));
        } else {
            out.constants.insert((i, j, k), value);
        }
        Ok(out)
    }

    /// `[e_i, e_j]` as `(k, γ_ij^k)` pairs, 1-based.
    pub fn basis_product(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.constants
            .range((i, j, 0)..=(i, j, usize::MAX))
            .map(|(&(_, _, k), v)| (k, v))
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear product of two coordinate vectors.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![Scalar::zero(); self.dim];
        for (&(i, j, k), g) in &self.constants {
            let (a, b) = (&x[i - 1], &y[j - 1]);
            if !a.is_zero() && !b.is_zero() {
                out[k - 1] += a * b * g;
            }
        }
        Ok(out)
    }

    /// Product on sparse 0-based coordinates.
    pub(crate) fn product_sparse(&self, x: &SparseRow, y: &SparseRow) -> SparseRow {
        let mut out = SparseRow::new();
        for (&a, xa) in x {
            for (&b, yb) in y {
                for (k, g) in self.basis_product(a + 1, b + 1) {
                    let e = out.entry(k - 1).or_insert_with(Scalar::zero);
                    *e += xa * yb * g;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn unit(&self, i: usize) -> SparseRow {
        SparseRow::from([(i - 1, scalar::one())])
    }

    /// Every nonzero residual of the Leibniz identity over basis triples,
    /// sorted by `(i, j, k, m)`. Empty exactly when the algebra is Leibniz.
    pub fn leibniz_defect(&self) -> Vec<LeibnizViolation> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 1..=n {
            let ei = self.unit(i);
            for j in 1..=n {
                let ej = self.unit(j);
                let ij = self.product_sparse(&ei, &ej);
                for k in 1..=n {
                    let ek = self.unit(k);
                    let jk = self.product_sparse(&ej, &ek);
                    let ik = self.product_sparse(&ei, &ek);
                    let mut res = self.product_sparse(&ei, &jk);
                    for (m, v) in self.product_sparse(&ij, &ek) {
                        *res.entry(m).or_insert_with(Scalar::zero) -= v;
                    }
                    for (m, v) in self.product_sparse(&ik, &ej) {
                        *res.entry(m).or_insert_with(Scalar::zero) += v;
                    }
                    for (m, residual) in res {
                        if !residual.is_zero() {
                            out.push(LeibnizViolation { i, j, k, m: m + 1, residual });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_leibniz(&self) -> bool {
        self.leibniz_defect().is_empty()
    }

    pub(crate) fn require_leibniz(&self) -> Result<()> {
        let violations = self.leibniz_defect();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::NotLeibniz { violations })
        }
    }

    /// Whether the product is antisymmetric. Only meaningful for Leibniz
    /// tables, so anything else is rejected.
    pub fn is_lie(&self) -> Result<bool> {
        self.require_leibniz()?;
        let antisymmetric = self
            .constants
            .iter()
            .all(|(&(i, j, k), g)| self.constant(j, i, k) == -g.clone());
        Ok(antisymmetric)
    }

    /// Re-expresses the product in the basis `f_j = Σ_i P[i][j] e_i`.
    ///
    /// `A.change_basis(P).change_basis(Q) == A.change_basis(P·Q)`.
    pub fn change_basis(&self, p: &LinearMap) -> Result<Algebra> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: p.dim(),
            });
        }
        let inv = p.inverse()?;
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|c| p.column(c)).collect();
        let mut constants = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let prod = self.product(&cols[a], &cols[b])?;
                if prod.iter().all(Zero::is_zero) {
                    continue;
                }
                for (c, v) in inv.apply(&prod)?.into_iter().enumerate() {
                    if !v.is_zero() {
                        constants.push(((a + 1, b + 1, c + 1), v));
                    }
                }
            }
        }
        Algebra::new(n, constants)
    }

    /// Direct sum `self ⊕ other`, with `other`'s basis appended after `self`'s.
    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        let s = self.dim;
        let constants = self
            .constants
            .iter()
            .map(|(&key, v)| (key, v.clone()))
            .chain(other.constants.iter().map(|(&(i, j, k), v)| ((i + s, j + s, k + s), v.clone())))
            .collect();
        Algebra {
            dim: s + other.dim,
            constants,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for (&(i, j, k), v) in &self.constants {
            writeln!(f, "[e{i}, e{j}] += {v} e{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn ngf1(n: usize) -> Algebra {
        let mut c = vec![((1, 1, 3), int(1))];
        c.extend((2..n).map(|i| ((i, 1, i + 1), int(1))));
        Algebra::new(n, c).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![int(0); n];
        v[i - 1] = int(1);
        v
    }

    #[test]
    fn basis_products() {
        let a = ngf1(5);
        assert_eq!(a.product(&e(5, 2), &e(5, 1)).unwrap(), e(5, 3));
        assert_eq!(a.product(&vec![int(0); 5], &e(5, 1)).unwrap(), vec![int(0); 5]);
        assert!(matches!(
            a.product(&e(4, 1), &e(5, 1)),
            Err(Error::DimensionMismatch { expected: 5, actual: 4 })
        ));
    }

    #[test]
    fn construction_validates() {
        assert_eq!(Algebra::new(0, []), Err(Error::ZeroDimension));
        assert!(matches!(
            Algebra::new(3, [((1, 4, 1), int(1))]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            Algebra::new(3, [((1, 1, 2), int(1)), ((1, 1, 2), int(2))]),
            Err(Error::DuplicateConstant { i: 1, j: 1, k: 2 })
        ));
        let a = Algebra::new(3, [((1, 1, 2), int(0))]).unwrap();
        assert_eq!(a.nnz(), 0);
    }

    #[test]
    fn defect_of_perturbed_table() {
        assert!(ngf1(5).leibniz_defect().is_empty());
        // Rescaling a single left factor keeps the identity intact.
        let rescaled = ngf1(5).with_constant(2, 1, 3, int(2)).unwrap();
        assert!(rescaled.leibniz_defect().is_empty());
        // [e1, e2] = e3 breaks it at (1, 2, 1): 0 − [e3, e1] + [e3, e2] = −e4.
        let broken = ngf1(5).with_constant(1, 2, 3, int(1)).unwrap();
        let d = broken.leibniz_defect();
        assert!(d.contains(&LeibnizViolation { i: 1, j: 2, k: 1, m: 4, residual: int(-1) }));
        assert!(matches!(broken.is_lie(), Err(Error::NotLeibniz { .. })));
    }

    #[test]
    fn lie_detection() {
        assert!(Algebra::abelian(4).unwrap().is_lie().unwrap());
        assert!(!ngf1(5).is_lie().unwrap());
    }

    #[test]
    fn identity_basis_change() {
        let a = ngf1(6);
        assert_eq!(a.change_basis(&LinearMap::identity(6)).unwrap(), a);
        let singular = LinearMap::zero(6);
        assert_eq!(a.change_basis(&singular), Err(Error::SingularMatrix { rank: 0, dim: 6 }));
        let scale = LinearMap::from_images(6, (1..=6).map(|j| (j, j, ratio(1, 2))));
        let b = a.change_basis(&scale).unwrap();
        assert_eq!(b.constant(1, 1, 3), ratio(1, 2));
    }
}
