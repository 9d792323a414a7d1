//! Diagonal Z-gradations.
//!
//! A [`WeightVector`] assigns an integer level to every basis vector, so the
//! homogeneous pieces are `V_m = span{e_i : w_i = m}`. Such a vector is a
//! gradation exactly when `w_i + w_j = w_k` for every nonzero `γ_ij^k`.
//!
//! Weights are never shifted: the condition is not translation invariant.
//! The only normalization applied is the sign flip `w ↦ −w`, which maps
//! gradations to gradations of the same length.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::catalog::FamilyId;
use crate::error::{Error, Result};
use crate::linalg::{RowReducer, SparseRow};
use crate::linear_map::LinearMap;
use crate::scalar::{int, Scalar};
use crate::structure::lower_central_series;

/// Upper limit on the number of coefficient vectors `best_diagonal_gradation`
/// will enumerate.
pub const SEARCH_LIMIT: u128 = 5_000_000;

pub const DEFAULT_BOUND: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Weight of the 1-based basis vector `i`.
    pub fn weight(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    fn negated(&self) -> WeightVector {
        WeightVector(self.0.iter().map(|w| -w).collect())
    }

    /// `w` or `−w`, whichever has a positive first nonzero entry.
    pub fn sign_normalized(&self) -> WeightVector {
        match self.0.iter().find(|w| **w != 0) {
            Some(w) if *w < 0 => self.negated(),
            _ => self.clone(),
        }
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(v: Vec<i64>) -> Self {
        WeightVector(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradationReport {
    pub nonempty_levels: Vec<i64>,
    pub connected: bool,
    /// `max − min + 1` over the nonempty levels.
    pub length: usize,
}

impl GradationReport {
    pub fn of(w: &WeightVector) -> Self {
        let levels: BTreeSet<i64> = w.0.iter().copied().collect();
        let nonempty_levels: Vec<i64> = levels.into_iter().collect();
        let (lo, hi) = match (nonempty_levels.first(), nonempty_levels.last()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, -1),
        };
        let length = (hi - lo + 1).max(0) as usize;
        GradationReport {
            connected: length == nonempty_levels.len(),
            nonempty_levels,
            length,
        }
    }
}

/// Checks `w_i + w_j = w_k` on every nonzero constant, in `(i, j, k)` order.
pub fn verify_weights(a: &Algebra, w: &WeightVector) -> Result<GradationReport> {
    if w.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: w.len(),
        });
    }
    for ((i, j, k), _) in a.constants() {
        let (wi, wj, wk) = (w.weight(i), w.weight(j), w.weight(k));
        if wi + wj != wk {
            return Err(Error::InadmissibleWeights { i, j, k, wi, wj, wk });
        }
    }
    Ok(GradationReport::of(w))
}

/// Like [`verify_weights`], additionally rejecting disconnected gradations.
pub fn verify_connected(a: &Algebra, w: &WeightVector) -> Result<GradationReport> {
    let report = verify_weights(a, w)?;
    if !report.connected {
        return Err(Error::DisconnectedGradation {
            levels: report.nonempty_levels,
        });
    }
    Ok(report)
}

fn primitive_integer(v: &[Scalar]) -> Vec<i64> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g.abs() };
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("weight fits in i64"))
        .collect()
}

/// Primitive integer vectors spanning `{w : w_i + w_j − w_k = 0 for γ_ij^k ≠ 0}`
/// over the rationals, one per free column of the constraint system, each
/// with a positive first nonzero entry.
pub fn admissible_weight_lattice(a: &Algebra) -> Vec<WeightVector> {
    let n = a.dim();
    let mut r = RowReducer::new(n);
    for ((i, j, k), _) in a.constants() {
        let mut row = SparseRow::new();
        for (c, v) in [(i, 1), (j, 1), (k, -1)] {
            *row.entry(c - 1).or_insert_with(Scalar::zero) += int(v);
        }
        row.retain(|_, v| !v.is_zero());
        r.insert(row);
    }
    r.nullspace()
        .iter()
        .map(|v| WeightVector(primitive_integer(v)).sign_normalized())
        .collect()
}

/// Longest connected gradation among `Σ c_i v_i` with `c_i ∈ [−bound, bound]`
/// over the lattice basis `v_i`.
///
/// Candidates are sign-normalized; ties go to the lexicographically smallest
/// weight vector. The zero vector (length 1) is always a candidate.
pub fn best_diagonal_gradation(a: &Algebra, bound: u32) -> Result<(WeightVector, GradationReport)> {
    if bound == 0 {
        return Err(Error::param("bound must be at least 1"));
    }
    let basis = admissible_weight_lattice(a);
    let rank = basis.len();
    let side = 2 * bound as u128 + 1;
    let size = side.checked_pow(rank as u32).unwrap_or(u128::MAX);
    if size > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge {
            size,
            limit: SEARCH_LIMIT,
        });
    }
    let n = a.dim();
    let b = bound as i64;
    let mut best = WeightVector(vec![0; n]);
    let mut best_len = 1;
    let mut coeffs = vec![-b; rank];
    loop {
        // Only the sign-normalized half of the coefficient box is needed.
        if coeffs.iter().find(|c| **c != 0).is_some_and(|c| *c > 0) {
            let mut w = vec![0i64; n];
            for (c, v) in coeffs.iter().zip(&basis) {
                for (wi, vi) in w.iter_mut().zip(v.as_slice()) {
                    *wi += c * vi;
                }
            }
            let w = WeightVector(w).sign_normalized();
            let report = GradationReport::of(&w);
            if report.connected && (report.length > best_len || (report.length == best_len && w < best)) {
                best_len = report.length;
                best = w;
            }
        }
        let mut pos = 0;
        loop {
            if pos == rank {
                let report = verify_weights(a, &best)?;
                return Ok((best, report));
            }
            if coeffs[pos] < b {
                coeffs[pos] += 1;
                break;
            }
            coeffs[pos] = -b;
            pos += 1;
        }
    }
}

/// The natural weight vector of a catalog family, when it has one.
///
/// * `NGF1..NGF3`: `(1, 1, 2, …, n−1)`
/// * `M1(k)`: `(1, …, n−1, k−1)`
/// * `M2`, `M3`: `(1, …, n−1, (n−1)/2)`
/// * `M4`: `(1, 4−n, 5−n, …, 1, 2)`
///
/// The `F` families return `None`: their extra terms break these weights.
pub fn canonical_weights(id: &FamilyId) -> Option<WeightVector> {
    let n = id.n() as i64;
    let chain = |last: i64| {
        let mut w: Vec<i64> = (1..n).collect();
        w.push(last);
        WeightVector(w)
    };
    match id {
        FamilyId::Ngf1 { .. } | FamilyId::Ngf2 { .. } | FamilyId::Ngf3 { .. } => {
            let mut w = vec![1];
            w.extend(1..n);
            Some(WeightVector(w))
        }
        FamilyId::M1 { k, .. } => Some(chain(*k as i64 - 1)),
        FamilyId::M2 { .. } | FamilyId::M3 { .. } => Some(chain((n - 1) / 2)),
        FamilyId::M4 { .. } => {
            let mut w = vec![1];
            w.extend((2..n).map(|i| i + 2 - n));
            w.push(2);
            Some(WeightVector(w))
        }
        FamilyId::F1 { .. } | FamilyId::F2 { .. } | FamilyId::F3 { .. } => None,
    }
}

/// Basis change for `NGF1(n)` replacing `e_1` by `e_1 − e_2`, together with
/// a diagonal gradation of length `n` in the new basis.
///
/// The returned weights are `(−1, n−2, n−3, …, 1, 0)`.
pub fn ngf1_long_gradation(n: usize) -> (LinearMap, WeightVector) {
    let p = LinearMap::from_images(n, (1..=n).map(|j| (j, j, int(1))).chain([(1, 2, int(-1))]));
    let mut w = vec![-1];
    w.extend((0..n as i64 - 1).rev());
    (p, WeightVector(w))
}

/// The associated graded algebra of a nilpotent algebra, in an adapted basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalGrading {
    /// `gr L`, expressed in `basis`.
    pub graded: Algebra,
    /// Level `i` of each adapted basis vector (`L^i` minus `L^{i+1}`).
    pub weights: WeightVector,
    /// Adapted basis as columns in the original coordinates.
    pub basis: LinearMap,
    /// Whether the original product, rewritten in the adapted basis, already
    /// equals `gr L`. A sufficient condition for being naturally graded only.
    pub matches_adapted_table: bool,
}

/// Builds `gr L = ⊕ L^i / L^{i+1}`.
///
/// For each level the adapted basis extends `L^{i+1}` to `L^i` greedily from
/// the canonical basis of `L^i`, so coordinate vectors `e_j` are used
/// whenever they fit, in index order. Products of level-`a` and level-`b`
/// representatives are projected onto the level-`(a+b)` component.
pub fn natural_grading(a: &Algebra) -> Result<NaturalGrading> {
    a.require_leibniz()?;
    let series = lower_central_series(a);
    if !series.last().is_some_and(|s| s.is_zero()) {
        return Err(Error::NotNilpotent);
    }
    let n = a.dim();
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut levels: Vec<i64> = Vec::with_capacity(n);
    for (idx, pair) in series.windows(2).enumerate() {
        let (upper, lower) = (&pair[0], &pair[1]);
        let mut r = RowReducer::new(n);
        for v in lower.basis() {
            r.insert_dense(v);
        }
        for v in upper.basis() {
            if r.insert_dense(v) {
                columns.push(v.clone());
                levels.push(idx as i64 + 1);
            }
        }
    }
    debug_assert_eq!(columns.len(), n);
    let rows: Vec<Vec<Scalar>> = (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let basis = LinearMap::from_rows(rows)?;
    let inv = basis.inverse()?;
    let mut constants = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let prod = a.product(&columns[x], &columns[y])?;
            if prod.iter().all(Zero::is_zero) {
                continue;
            }
            let target = levels[x] + levels[y];
            for (c, v) in inv.apply(&prod)?.into_iter().enumerate() {
                if levels[c] == target && !v.is_zero() {
                    constants.push(((x + 1, y + 1, c + 1), v));
                }
            }
        }
    }
    let graded = Algebra::new(n, constants)?;
    let matches_adapted_table = a.change_basis(&basis)? == graded;
    Ok(NaturalGrading {
        graded,
        weights: WeightVector(levels),
        basis,
        matches_adapted_table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_f1, make_m1, make_m4, make_ngf1};

    #[test]
    fn ngf1_long_gradation_has_length_n() {
        for n in 4..=8 {
            let (p, w) = ngf1_long_gradation(n);
            let b = make_ngf1(n).unwrap().change_basis(&p).unwrap();
            let rep = verify_connected(&b, &w).unwrap();
            assert_eq!(rep.length, n);
        }
    }

    #[test]
    fn m1_canonical_weights() {
        for n in 5..=8 {
            for k in 3..n {
                let a = make_m1(n, k).unwrap();
                let mut w: Vec<i64> = (1..n as i64).collect();
                w.push(k as i64 - 1);
                let rep = verify_weights(&a, &WeightVector(w.clone())).unwrap();
                assert!(rep.connected);
                assert_eq!(rep.length, n - 1);
                assert_eq!(admissible_weight_lattice(&a), vec![WeightVector(w)]);
            }
        }
    }

    #[test]
    fn m4_canonical_weights() {
        let n = 7;
        let mut w = vec![1i64];
        w.extend((2..n as i64).map(|i| i + 2 - n as i64));
        w.push(2);
        let rep = verify_weights(&make_m4(n).unwrap(), &WeightVector(w)).unwrap();
        assert!(rep.connected);
        assert_eq!(rep.length, n - 1);
    }

    #[test]
    fn first_violation_is_reported() {
        let a = make_ngf1(4).unwrap();
        let err = verify_weights(&a, &WeightVector(vec![1, 2, 3, 4])).unwrap_err();
        assert_eq!(err, Error::InadmissibleWeights { i: 1, j: 1, k: 3, wi: 1, wj: 1, wk: 3 });
        assert!(matches!(
            verify_weights(&a, &WeightVector(vec![1, 1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ngf1_lattice_and_search() {
        let a = make_ngf1(4).unwrap();
        assert_eq!(admissible_weight_lattice(&a), vec![WeightVector(vec![1, 1, 2, 3])]);
        let (w, rep) = best_diagonal_gradation(&a, 3).unwrap();
        assert_eq!(w, WeightVector(vec![1, 1, 2, 3]));
        assert_eq!(rep.length, 3);
    }

    #[test]
    fn abelian_search_depends_on_bound() {
        let a = Algebra::abelian(4).unwrap();
        assert_eq!(admissible_weight_lattice(&a).len(), 4);
        // Coefficients in [−1, 1] on the unit vectors reach three levels at most.
        assert_eq!(best_diagonal_gradation(&a, 1).unwrap().1.length, 3);
        assert_eq!(best_diagonal_gradation(&a, 2).unwrap().1.length, 4);
        assert!(matches!(best_diagonal_gradation(&a, 0), Err(Error::InvalidParameter(_))));
        let big = Algebra::abelian(12).unwrap();
        assert!(matches!(best_diagonal_gradation(&big, 3), Err(Error::SearchTooLarge { .. })));
    }

    #[test]
    fn natural_grading_of_naturally_graded_table() {
        let a = make_ngf1(6).unwrap();
        let g = natural_grading(&a).unwrap();
        assert_eq!(g.graded, a);
        assert_eq!(g.basis, LinearMap::identity(6));
        assert_eq!(g.weights, WeightVector(vec![1, 1, 2, 3, 4, 5]));
        assert!(g.matches_adapted_table);
    }

    #[test]
    fn natural_grading_drops_higher_terms() {
        let alphas = vec![int(1), int(0)];
        let a = make_f1(6, &alphas, &int(0)).unwrap();
        let g = natural_grading(&a).unwrap();
        assert_eq!(g.graded, make_ngf1(6).unwrap());
        assert!(!g.matches_adapted_table);
        verify_weights(&g.graded, &g.weights).unwrap();
        assert!(g.graded.is_leibniz());
    }

    #[test]
    fn natural_grading_of_abelian() {
        let a = Algebra::abelian(3).unwrap();
        let g = natural_grading(&a).unwrap();
        assert_eq!(g.graded, a);
        assert_eq!(g.weights, WeightVector(vec![1, 1, 1]));
    }

    #[test]
    fn natural_grading_rejects_non_nilpotent() {
        let a = Algebra::new(2, [((2, 1, 2), int(1)), ((1, 2, 2), int(-1))]).unwrap();
        assert_eq!(natural_grading(&a), Err(Error::NotNilpotent));
    }
}
