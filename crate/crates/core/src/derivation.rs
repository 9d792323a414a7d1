//! Derivations, inner derivations and low-degree cohomology dimensions.
//!
//! A derivation `d` satisfies `d([x,y]) = [d(x),y] + [x,d(y)]`. With the
//! column convention `d(e_c) = Σ_r M[r][c] e_r`, the identity on a basis pair
//! `(e_i, e_j)` read off at `e_m` is the linear equation
//!
//! ```text
//! Σ_k γ_ij^k M[m][k] − Σ_l (M[l][i] γ_lj^m + M[l][j] γ_il^m) = 0
//! ```
//!
//! in the `n²` unknowns `M[r][c]`, flattened in `(r, c)` order. `Der(L)` is
//! the kernel of this system; everything else in the module is derived from
//! it by exact rank computations.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::catalog::FamilyId;
use crate::error::{Error, Result};
use crate::gradation::{verify_connected, WeightVector};
use crate::linalg::{RowReducer, SparseRow};
use crate::linear_map::LinearMap;
use crate::scalar::{self, int, ratio, Scalar};
use crate::structure::right_annihilator;

/// A basis of a space of linear maps, in echelon order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationBasis {
    algebra_dim: usize,
    maps: Vec<LinearMap>,
}

impl DerivationBasis {
    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    fn reducer(&self) -> RowReducer {
        let n = self.algebra_dim;
        let mut r = RowReducer::new(n * n);
        for m in &self.maps {
            r.insert_dense(&m.to_flat());
        }
        r
    }

    /// Exact span membership.
    pub fn contains(&self, d: &LinearMap) -> bool {
        d.dim() == self.algebra_dim && self.reducer().contains_dense(&d.to_flat())
    }

    /// Whether every map in `maps` lies in the span.
    pub fn contains_all<'a>(&self, maps: impl IntoIterator<Item = &'a LinearMap>) -> bool {
        let r = self.reducer();
        maps.into_iter()
            .all(|d| d.dim() == self.algebra_dim && r.contains_dense(&d.to_flat()))
    }
}

/// Rank of a list of maps viewed as `n²`-vectors.
pub fn rank_of_maps<'a>(n: usize, maps: impl IntoIterator<Item = &'a LinearMap>) -> usize {
    let mut r = RowReducer::new(n * n);
    for m in maps {
        r.insert_dense(&m.to_flat());
    }
    r.rank()
}

fn unknown(n: usize, row: usize, col: usize) -> usize {
    row * n + col
}

/// The derivation equations, one sparse row per `(i, j, m)` (0-based).
fn derivation_equations(a: &Algebra) -> BTreeMap<(usize, usize, usize), SparseRow> {
    let n = a.dim();
    let mut eqs: BTreeMap<(usize, usize, usize), SparseRow> = BTreeMap::new();
    let mut add = |key: (usize, usize, usize), col: usize, v: Scalar| {
        let row = eqs.entry(key).or_default();
        let e = row.entry(col).or_insert_with(Scalar::zero);
        *e += v;
    };
    for ((i, j, k), g) in a.constants() {
        let (i, j, k) = (i - 1, j - 1, k - 1);
        // d([e_i, e_j]) = Σ_k γ_ij^k d(e_k)
        for m in 0..n {
            add((i, j, m), unknown(n, m, k), g.clone());
        }
    }
    for ((l, j, m), g) in a.constants() {
        let (l, j, m) = (l - 1, j - 1, m - 1);
        // [d(e_i), e_j] with d(e_i) ∋ M[l][i] e_l
        for i in 0..n {
            add((i, j, m), unknown(n, l, i), -g.clone());
        }
    }
    for ((i, l, m), g) in a.constants() {
        let (i, l, m) = (i - 1, l - 1, m - 1);
        // [e_i, d(e_j)] with d(e_j) ∋ M[l][j] e_l
        for j in 0..n {
            add((i, j, m), unknown(n, l, j), -g.clone());
        }
    }
    for row in eqs.values_mut() {
        row.retain(|_, v| !v.is_zero());
    }
    eqs
}

fn solve(a: &Algebra, allowed: Option<&dyn Fn(usize, usize) -> bool>) -> DerivationBasis {
    let n = a.dim();
    let mut r = RowReducer::new(n * n);
    if let Some(allowed) = allowed {
        for row in 0..n {
            for col in 0..n {
                if !allowed(row, col) {
                    r.insert(SparseRow::from([(unknown(n, row, col), scalar::one())]));
                }
            }
        }
    }
    for (_, eq) in derivation_equations(a) {
        if !eq.is_empty() {
            r.insert(eq);
        }
    }
    let maps = r
        .nullspace()
        .iter()
        .map(|v| LinearMap::from_flat(n, v))
        .collect();
    DerivationBasis { algebra_dim: n, maps }
}

/// `Der(L)` as the exact kernel of the derivation equations.
pub fn derivation_space(a: &Algebra) -> Result<DerivationBasis> {
    a.require_leibniz()?;
    Ok(solve(a, None))
}

fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i - 1] = scalar::one();
    v
}

/// First basis pair `(i, j)` (1-based) on which `d` fails the derivation
/// identity, or `None` if it is a derivation.
pub fn derivation_violation(a: &Algebra, d: &LinearMap) -> Result<Option<(usize, usize)>> {
    let n = a.dim();
    if d.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: d.dim(),
        });
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|c| d.column(c)).collect();
    for i in 1..=n {
        let ei = basis_vector(n, i);
        for j in 1..=n {
            let ej = basis_vector(n, j);
            let lhs = d.apply(&a.product(&ei, &ej)?)?;
            let r1 = a.product(&images[i - 1], &ej)?;
            let r2 = a.product(&ei, &images[j - 1])?;
            let holds = lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (x, y))| *l == x + y);
            if !holds {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_derivation(a: &Algebra, d: &LinearMap) -> Result<bool> {
    Ok(derivation_violation(a, d)?.is_none())
}

/// `R_x(y) = [y, x]`.
pub fn right_multiplication(a: &Algebra, x: &[Scalar]) -> Result<LinearMap> {
    let n = a.dim();
    let mut rows = vec![vec![Scalar::zero(); n]; n];
    for c in 0..n {
        let img = a.product(&basis_vector(n, c + 1), x)?;
        for (r, v) in img.into_iter().enumerate() {
            rows[r][c] = v;
        }
    }
    LinearMap::from_rows(rows)
}

/// Echelonized span of `R_{e_1}, …, R_{e_n}`.
pub fn inner_derivations(a: &Algebra) -> Result<DerivationBasis> {
    a.require_leibniz()?;
    let n = a.dim();
    let mut r = RowReducer::new(n * n);
    for i in 1..=n {
        r.insert_dense(&right_multiplication(a, &basis_vector(n, i))?.to_flat());
    }
    let maps = r
        .into_rref()
        .into_iter()
        .map(|(_, row)| LinearMap::from_flat(n, &crate::linalg::dense_from_sparse(&row, n * n)))
        .collect();
    Ok(DerivationBasis { algebra_dim: n, maps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub dim_der: usize,
    pub dim_inn: usize,
    /// `dim Der − dim Inn`.
    pub h1: usize,
    /// `n² − dim Der`: rank of the coboundary map on 1-cochains.
    pub b2: usize,
}

pub fn cohomology_dims(a: &Algebra) -> Result<CohomologyDims> {
    let dim_der = derivation_space(a)?.dim();
    let dim_inn = inner_derivations(a)?.dim();
    let n = a.dim();
    Ok(CohomologyDims {
        dim_der,
        dim_inn,
        h1: dim_der - dim_inn,
        b2: n * n - dim_der,
    })
}

pub fn h1_dim(a: &Algebra) -> Result<usize> {
    Ok(cohomology_dims(a)?.h1)
}

pub fn b2_dim(a: &Algebra) -> Result<usize> {
    let n = a.dim();
    Ok(n * n - derivation_space(a)?.dim())
}

/// `dim Inn` computed independently as `n − dim ℜ(L)`.
pub fn inner_dim_from_annihilator(a: &Algebra) -> usize {
    a.dim() - right_annihilator(a).dim()
}

/// `Der(L) = ⊕_s W_s` where `W_s` maps `V_j` into `V_{j+s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDerDecomposition {
    pub levels: BTreeMap<i64, DerivationBasis>,
}

impl GradedDerDecomposition {
    pub fn total_dim(&self) -> usize {
        self.levels.values().map(DerivationBasis::dim).sum()
    }

    pub fn level_dim(&self, s: i64) -> usize {
        self.levels.get(&s).map_or(0, DerivationBasis::dim)
    }

    /// Shifts `s` whose `W_s` contains `d`.
    pub fn levels_containing(&self, d: &LinearMap) -> Vec<i64> {
        self.levels
            .iter()
            .filter(|(_, b)| b.dim() > 0 && b.contains(d))
            .map(|(&s, _)| s)
            .collect()
    }
}

/// Splits `Der(L)` by the shift a map induces on a connected gradation.
/// Every shift in `[−(length−1), length−1]` gets an entry, possibly empty.
pub fn graded_der_decomposition(a: &Algebra, w: &WeightVector) -> Result<GradedDerDecomposition> {
    a.require_leibniz()?;
    let report = verify_connected(a, w)?;
    let span = report.length as i64 - 1;
    let weights = w.as_slice();
    let mut levels = BTreeMap::new();
    for s in -span..=span {
        let allowed = |row: usize, col: usize| weights[row] - weights[col] == s;
        levels.insert(s, solve(a, Some(&allowed)));
    }
    Ok(GradedDerDecomposition { levels })
}

/// A map from a published derivation basis, with its printed name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMap {
    pub name: String,
    pub map: LinearMap,
}

fn named(name: impl Into<String>, n: usize, images: Vec<(usize, usize, Scalar)>) -> NamedMap {
    NamedMap {
        name: name.into(),
        map: LinearMap::from_images(n, images),
    }
}

/// `d_0` on the `M` families: `y_i ↦ i·y_i` below `n`, `y_n ↦ c·y_n`.
fn diagonal_d0(n: usize, last: Scalar) -> NamedMap {
    let mut images: Vec<_> = (1..n).map(|i| (i, i, int(i as i64))).collect();
    images.push((n, n, last));
    named("d0", n, images)
}

/// `d_j(y_i) = y_{i+j}` for `1 ≤ i ≤ n−j−1`, `1 ≤ j ≤ n−2`.
fn shifts_from_first(n: usize) -> Vec<NamedMap> {
    (1..=n - 2)
        .map(|j| named(format!("d{j}"), n, (1..n - j).map(|i| (i, i + j, int(1))).collect()))
        .collect()
}

fn h1_tail(n: usize) -> NamedMap {
    named("h1", n, vec![(n, n - 1, int(1))])
}

/// `h_0` for `M4` exactly as printed: `h_0(y_1) = y_n`,
/// `h_0(y_i) = (2−n+i) y_i` for `2 ≤ i ≤ n`. Not a derivation.
pub fn printed_m4_h0(n: usize) -> LinearMap {
    let mut images = vec![(1, n, int(1))];
    images.extend((2..=n).map(|i| (i, i, int(2 - n as i64 + i as i64))));
    LinearMap::from_images(n, images)
}

/// The grading operator of `M4`'s canonical weights:
/// `y_1 ↦ y_1`, `y_i ↦ (i+2−n) y_i` for `2 ≤ i ≤ n−1`, `y_n ↦ 2 y_n`.
pub fn corrected_m4_h0(n: usize) -> LinearMap {
    let mut images = vec![(1, 1, int(1))];
    images.extend((2..n).map(|i| (i, i, int(i as i64 + 2 - n as i64))));
    images.push((n, n, int(2)));
    LinearMap::from_images(n, images)
}

/// The explicit derivation bases published for `M1(k)`, `M2`, `M3` and `M4`.
///
/// Two printed maps are replaced by the forced corrections: `d_0` on
/// `M2`/`M3` uses weight `(n−1)/2` on `y_n`, and `M4`'s `h_0` is replaced by
/// [`corrected_m4_h0`] (named `h0*`).
pub fn expected_der_basis(id: &FamilyId) -> Result<Vec<NamedMap>> {
    // Validates the parameters.
    id.build()?;
    let n = id.n();
    let maps = match id {
        FamilyId::M1 { k, .. } => {
            let k = *k;
            let mut v = vec![diagonal_d0(n, int(k as i64 - 1))];
            v.extend(shifts_from_first(n));
            v.push(h1_tail(n));
            if 2 * k - 2 >= n {
                let mut images = vec![(1, n, int(1))];
                images.extend((2..=n - k + 1).map(|i| (i, k + i - 2, int(i as i64 - 1))));
                v.push(named("h2", n, images));
            }
            v
        }
        FamilyId::M2 { .. } | FamilyId::M3 { .. } => {
            let mut v = vec![diagonal_d0(n, ratio(n as i64 - 1, 2))];
            v.extend(shifts_from_first(n));
            v.push(h1_tail(n));
            v
        }
        FamilyId::M4 { .. } => {
            let mut v: Vec<NamedMap> = (3..=n)
                .map(|j| {
                    let s = j as i64 - n as i64;
                    named(format!("d{s}"), n, vec![(1, j - 1, int(1))])
                })
                .collect();
            v.extend((1..=n - 2).map(|j| {
                named(format!("d{j}"), n, (2..=n - j).map(|i| (i, i + j, int(1))).collect())
            }));
            v.push(named("h1", n, vec![(1, n, int(1))]));
            v.push(NamedMap {
                name: "h0*".to_string(),
                map: corrected_m4_h0(n),
            });
            v
        }
        other => return Err(Error::NoExpectedBasis(other.family().to_string())),
    };
    Ok(maps)
}
