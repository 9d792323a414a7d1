//! Sparse exact row reduction.
//!
//! Every rank, kernel and span-membership question in the crate goes through
//! [`RowReducer`]. Rows are kept with a leading coefficient of 1 and no
//! entries left of their pivot; [`RowReducer::into_rref`] finishes the
//! back-substitution.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(row: &SparseRow, ncols: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); ncols];
    for (&c, v) in row {
        out[c] = v.clone();
    }
    out
}

/// `row -= factor * other`, dropping cancelled entries.
fn sub_scaled(row: &mut SparseRow, factor: &Scalar, other: &SparseRow) {
    for (&c, v) in other {
        let entry = row.entry(c).or_insert_with(Scalar::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            row.remove(&c);
        }
    }
}

#[derive(Debug, Clone)]
pub struct RowReducer {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `row` after eliminating every pivot column.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, v)| (c, v.clone()));
            let Some((col, coeff)) = next else { break };
            sub_scaled(&mut row, &coeff, &self.rows[&col]);
            cursor = col + 1;
        }
        row
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        let mut row = self.reduce(row);
        let Some((&pivot, lead)) = row.iter().next() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn insert_dense(&mut self, row: &[Scalar]) -> bool {
        self.insert(sparse_from_dense(row))
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn contains_dense(&self, row: &[Scalar]) -> bool {
        self.contains(sparse_from_dense(row))
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn into_rref(mut self) -> Vec<(usize, SparseRow)> {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        // Later pivots are already clean when processing earlier ones.
        for &p in &pivots {
            let mut row = self.rows.remove(&p).expect("pivot row");
            let targets: Vec<(usize, Scalar)> = row
                .range(p + 1..)
                .filter(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, v)| (c, v.clone()))
                .collect();
            for (c, coeff) in targets {
                sub_scaled(&mut row, &coeff, &self.rows[&c]);
            }
            self.rows.insert(p, row);
        }
        self.rows.into_iter().collect()
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free column
    /// in increasing column order, each with a 1 in its free column.
    pub fn nullspace(self) -> Vec<Vec<Scalar>> {
        let ncols = self.ncols;
        let rref = self.into_rref();
        let pivot_set: std::collections::BTreeSet<usize> = rref.iter().map(|(p, _)| *p).collect();
        (0..ncols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = vec![Scalar::zero(); ncols];
                v[free] = Scalar::one();
                for (p, row) in &rref {
                    if let Some(x) = row.get(&free) {
                        v[*p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

pub fn rank_of(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut r = RowReducer::new(ncols);
    for row in rows {
        r.insert_dense(row);
    }
    r.rank()
}

pub fn nullspace_of(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut r = RowReducer::new(ncols);
    for row in rows {
        r.insert_dense(row);
    }
    r.nullspace()
}

/// Inverse of a square matrix by Gauss-Jordan, or `Err(rank)` when singular.
pub fn invert(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, usize> {
    let n = m.len();
    let mut r = RowReducer::new(2 * n);
    for (i, row) in m.iter().enumerate() {
        let mut aug = sparse_from_dense(row);
        aug.insert(n + i, Scalar::one());
        r.insert(aug);
    }
    let rref = r.into_rref();
    let rank = rref.iter().filter(|(p, _)| *p < n).count();
    if rank < n {
        return Err(rank);
    }
    Ok(rref
        .into_iter()
        .map(|(_, row)| {
            (n..2 * n)
                .map(|c| row.get(&c).cloned().unwrap_or_else(Scalar::zero))
                .collect()
        })
        .collect())
}
