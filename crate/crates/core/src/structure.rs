//! Lower central series, nilpotency, filiformity and annihilators.

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::{sparse_from_dense, RowReducer, SparseRow};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

/// `[L¹, L², …]` with `L¹ = L` and `L^{k+1} = [L^k, L]`, stopping at the first
/// term equal to its predecessor (which is not repeated).
pub fn lower_central_series(a: &Algebra) -> Vec<Subspace> {
    let n = a.dim();
    let mut series = vec![Subspace::full(n)];
    loop {
        let prev = series.last().expect("nonempty");
        let mut r = RowReducer::new(n);
        for v in prev.basis() {
            let x = sparse_from_dense(v);
            for j in 0..n {
                let ej = SparseRow::from([(j, scalar::one())]);
                r.insert(a.product_sparse(&x, &ej));
            }
        }
        let next = Subspace::from_reducer(r);
        if &next == prev {
            break;
        }
        let done = next.is_zero();
        series.push(next);
        if done {
            break;
        }
    }
    series
}

pub fn series_dims(a: &Algebra) -> Vec<usize> {
    lower_central_series(a).iter().map(Subspace::dim).collect()
}

pub fn is_nilpotent(a: &Algebra) -> Result<bool> {
    a.require_leibniz()?;
    Ok(lower_central_series(a).last().is_some_and(Subspace::is_zero))
}

/// `dim L^i = n − i` for every `2 ≤ i ≤ n`.
pub fn is_filiform(a: &Algebra) -> Result<bool> {
    a.require_leibniz()?;
    let dims = series_dims(a);
    let n = a.dim();
    let dim_at = |i: usize| dims.get(i - 1).copied().unwrap_or(*dims.last().expect("nonempty"));
    Ok((2..=n).all(|i| dim_at(i) == n - i))
}

fn kernel(a: &Algebra, right: bool) -> Subspace {
    let n = a.dim();
    // One equation per (fixed basis factor, output coordinate).
    let mut rows = vec![vec![Scalar::zero(); n]; n * n];
    for ((i, j, k), g) in a.constants() {
        let (fixed, var) = if right { (i, j) } else { (j, i) };
        rows[(fixed - 1) * n + (k - 1)][var - 1] += g;
    }
    let mut r = RowReducer::new(n);
    for row in &rows {
        r.insert_dense(row);
    }
    let basis = r.nullspace();
    Subspace::span(n, basis).expect("kernel vectors have ambient length")
}

/// `{x : [L, x] = 0}`.
pub fn right_annihilator(a: &Algebra) -> Subspace {
    kernel(a, true)
}

/// `{x : [x, L] = 0}`.
pub fn left_annihilator(a: &Algebra) -> Subspace {
    kernel(a, false)
}

/// `[A, S] ⊆ S` and `[S, A] ⊆ S`, checked on basis products.
pub fn is_two_sided_ideal(a: &Algebra, s: &Subspace) -> bool {
    let n = a.dim();
    (0..n).all(|j| {
        let ej = {
            let mut v = vec![Scalar::zero(); n];
            v[j] = scalar::one();
            v
        };
        s.basis().iter().all(|x| {
            let left = a.product(&ej, x).expect("lengths match");
            let right = a.product(x, &ej).expect("lengths match");
            s.contains(&left) && s.contains(&right)
        })
    })
}
