//! Dense reference computations used to cross-check the library.
//!
//! Everything here works on a full `n × n × n` array of constants and plain
//! Gaussian elimination, sharing no code with the sparse solver under test.

#![allow(dead_code)]

use leibniz::{Algebra, FamilyId, Scalar};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    BigRational::from_integer(v.into())
}

pub struct Dense {
    pub n: usize,
    /// `t[i][j][k] = γ_ij^k`, 0-based.
    pub t: Vec<Vec<Vec<Q>>>,
}

impl Dense {
    pub fn of(a: &Algebra) -> Self {
        let n = a.dim();
        let t = (1..=n)
            .map(|i| (1..=n).map(|j| (1..=n).map(|k| a.constant(i, j, k)).collect()).collect())
            .collect();
        Dense { n, t }
    }

    pub fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.n];
        v[i] = Q::one();
        v
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..self.n {
                    out[k] += &c * &self.t[i][j][k];
                }
            }
        }
        out
    }

    /// `[x,[y,z]] − [[x,y],z] + [[x,z],y]` vanishes on all basis triples.
    pub fn is_leibniz(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                (0..self.n).all(|k| {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let r1 = self.bracket(&self.bracket(&x, &y), &z);
                    let r2 = self.bracket(&self.bracket(&x, &z), &y);
                    lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (a, b))| *l == a - b)
                })
            })
        })
    }

    /// Dimensions of `L^1 ⊇ L^2 ⊇ …` until the sequence repeats or hits 0.
    pub fn series_dims(&self) -> Vec<usize> {
        let mut current: Vec<Vec<Q>> = (0..self.n).map(|i| self.unit(i)).collect();
        let mut dims = vec![self.n];
        loop {
            let next: Vec<Vec<Q>> = current
                .iter()
                .flat_map(|x| (0..self.n).map(move |j| (x, j)))
                .map(|(x, j)| self.bracket(x, &self.unit(j)))
                .collect();
            let basis = row_basis(next);
            let d = basis.len();
            if d == *dims.last().unwrap() {
                return dims;
            }
            dims.push(d);
            if d == 0 {
                return dims;
            }
            current = basis;
        }
    }

    /// Dimension of `{x : [x, e_j] = 0 ∀ j}`.
    pub fn left_annihilator_dim(&self) -> usize {
        // Row i of the coefficient matrix lists [e_i, e_j] for all j.
        let rows: Vec<Vec<Q>> = (0..self.n)
            .map(|i| (0..self.n).flat_map(|j| self.t[i][j].clone()).collect())
            .collect();
        self.n - rank(rows)
    }

    pub fn right_annihilator_dim(&self) -> usize {
        let rows: Vec<Vec<Q>> = (0..self.n)
            .map(|i| (0..self.n).flat_map(|j| self.t[j][i].clone()).collect())
            .collect();
        self.n - rank(rows)
    }

    /// `n² − rank` of the map `D ↦ (D[e_i,e_j] − [De_i,e_j] − [e_i,De_j])_{i,j}`,
    /// evaluated on the elementary maps `e_c ↦ e_r`.
    pub fn der_dim(&self) -> usize {
        let n = self.n;
        let mut images = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let apply = |v: &[Q]| {
                    let mut out = vec![Q::zero(); n];
                    out[r] = v[c].clone();
                    out
                };
                let mut img = Vec::with_capacity(n * n * n);
                for i in 0..n {
                    for j in 0..n {
                        let (x, y) = (self.unit(i), self.unit(j));
                        let a = apply(&self.bracket(&x, &y));
                        let b = self.bracket(&apply(&x), &y);
                        let c2 = self.bracket(&x, &apply(&y));
                        img.extend((0..n).map(|m| &a[m] - &b[m] - &c2[m]));
                    }
                }
                images.push(img);
            }
        }
        n * n - rank(images)
    }

    /// Rank of the right multiplications `y ↦ [y, e_i]`.
    pub fn inn_dim(&self) -> usize {
        let maps: Vec<Vec<Q>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .flat_map(|y| self.t[y][i].clone())
                    .collect()
            })
            .collect();
        rank(maps)
    }
}

/// Row-echelon basis of the span of `rows`.
pub fn row_basis(mut rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn rank(rows: Vec<Vec<Q>>) -> usize {
    row_basis(rows).len()
}

pub fn random_rational(rng: &mut StdRng) -> Scalar {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=4);
    Q::new(num.into(), den.into())
}

/// Ten F1 and ten F2 parameter choices per `n`, from a fixed seed.
pub fn random_f_families(n: usize, seed: u64) -> Vec<FamilyId> {
    let mut rng = StdRng::seed_from_u64(seed ^ ((n as u64) << 32));
    let mut ids = Vec::new();
    for _ in 0..10 {
        let alphas = (0..n - 4).map(|_| random_rational(&mut rng)).collect();
        ids.push(FamilyId::F1 {
            n,
            alphas,
            theta: random_rational(&mut rng),
        });
    }
    for _ in 0..10 {
        let betas = (0..n - 3).map(|_| random_rational(&mut rng)).collect();
        ids.push(FamilyId::F2 {
            n,
            betas,
            gamma: random_rational(&mut rng),
        });
    }
    debug_assert!(ids.iter().all(|id| id.build().is_ok()));
    ids
}

/// Every catalog member with fixed parameters at dimension `n`.
pub fn catalog_at(n: usize) -> Vec<FamilyId> {
    let mut ids = vec![
        FamilyId::Ngf1 { n },
        FamilyId::Ngf2 { n },
        FamilyId::Ngf3 { n, alpha: 0 },
        FamilyId::M4 { n },
    ];
    if n % 2 == 0 {
        ids.push(FamilyId::Ngf3 { n, alpha: 1 });
    } else {
        ids.push(FamilyId::M2 { n, alpha: q(1) });
        ids.push(FamilyId::M2 { n, alpha: Q::new((-3).into(), 2.into()) });
        ids.push(FamilyId::M3 { n });
    }
    ids.extend((3..n).map(|k| FamilyId::M1 { n, k }));
    ids
}
