//! Constructors for the named filiform families.
//!
//! Tables are written with the printed indices (1-based). The naturally
//! graded families `NGF1..NGF3`, the general families `F1..F3` and the
//! length-`(n−1)` representatives `M1(k)`, `M2`, `M3`, `M4`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{self, int, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Ngf1,
    Ngf2,
    Ngf3,
    F1,
    F2,
    F3,
    M1,
    M2,
    M3,
    M4,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Ngf1,
        Family::Ngf2,
        Family::Ngf3,
        Family::F1,
        Family::F2,
        Family::F3,
        Family::M1,
        Family::M2,
        Family::M3,
        Family::M4,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Ngf1 => "NGF1",
            Family::Ngf2 => "NGF2",
            Family::Ngf3 => "NGF3",
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::F3 => "F3",
            Family::M1 => "M1",
            Family::M2 => "M2",
            Family::M3 => "M3",
            Family::M4 => "M4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::param(format!("unknown family '{s}'")))
    }
}

/// A skew product `[e_i, e_j] = −[e_j, e_i] ∋ value · e_k` in the free part of `F3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Scalar,
}

/// A family together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyId {
    Ngf1 { n: usize },
    Ngf2 { n: usize },
    Ngf3 { n: usize, alpha: u8 },
    /// `alphas` holds `α_4, …, α_{n−1}` and optionally `α_n` as a last entry.
    F1 { n: usize, alphas: Vec<Scalar>, theta: Scalar },
    /// `betas` holds `β_3, …, β_{n−1}`.
    F2 { n: usize, betas: Vec<Scalar>, gamma: Scalar },
    F3 {
        n: usize,
        theta1: Scalar,
        theta2: Scalar,
        theta3: Scalar,
        alpha: u8,
        tail: Vec<TailEntry>,
    },
    M1 { n: usize, k: usize },
    M2 { n: usize, alpha: Scalar },
    M3 { n: usize },
    M4 { n: usize },
}

impl FamilyId {
    pub fn family(&self) -> Family {
        match self {
            FamilyId::Ngf1 { .. } => Family::Ngf1,
            FamilyId::Ngf2 { .. } => Family::Ngf2,
            FamilyId::Ngf3 { .. } => Family::Ngf3,
            FamilyId::F1 { .. } => Family::F1,
            FamilyId::F2 { .. } => Family::F2,
            FamilyId::F3 { .. } => Family::F3,
            FamilyId::M1 { .. } => Family::M1,
            FamilyId::M2 { .. } => Family::M2,
            FamilyId::M3 { .. } => Family::M3,
            FamilyId::M4 { .. } => Family::M4,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            FamilyId::Ngf1 { n }
            | FamilyId::Ngf2 { n }
            | FamilyId::Ngf3 { n, .. }
            | FamilyId::F1 { n, .. }
            | FamilyId::F2 { n, .. }
            | FamilyId::F3 { n, .. }
            | FamilyId::M1 { n, .. }
            | FamilyId::M2 { n, .. }
            | FamilyId::M3 { n }
            | FamilyId::M4 { n } => *n,
        }
    }

    pub fn build(&self) -> Result<Algebra> {
        match self {
            FamilyId::Ngf1 { n } => make_ngf1(*n),
            FamilyId::Ngf2 { n } => make_ngf2(*n),
            FamilyId::Ngf3 { n, alpha } => make_ngf3(*n, *alpha),
            FamilyId::F1 { n, alphas, theta } => make_f1(*n, alphas, theta),
            FamilyId::F2 { n, betas, gamma } => make_f2(*n, betas, gamma),
            FamilyId::F3 {
                n,
                theta1,
                theta2,
                theta3,
                alpha,
                tail,
            } => make_f3(*n, theta1, theta2, theta3, *alpha, tail),
            FamilyId::M1 { n, k } => make_m1(*n, *k),
            FamilyId::M2 { n, alpha } => make_m2(*n, alpha),
            FamilyId::M3 { n } => make_m3(*n),
            FamilyId::M4 { n } => make_m4(*n),
        }
    }

    /// Parameters (excluding `n`) as JSON, keyed by their printed names.
    pub fn params_json(&self) -> BTreeMap<String, Value> {
        let s = |x: &Scalar| Value::String(scalar::to_string(x));
        let list = |xs: &[Scalar]| Value::Array(xs.iter().map(s).collect());
        let mut m = BTreeMap::new();
        match self {
            FamilyId::Ngf1 { .. } | FamilyId::Ngf2 { .. } | FamilyId::M3 { .. } | FamilyId::M4 { .. } => {}
            FamilyId::Ngf3 { alpha, .. } => {
                m.insert("alpha".into(), json!(alpha));
            }
            FamilyId::F1 { alphas, theta, .. } => {
                m.insert("alphas".into(), list(alphas));
                m.insert("theta".into(), s(theta));
            }
            FamilyId::F2 { betas, gamma, .. } => {
                m.insert("betas".into(), list(betas));
                m.insert("gamma".into(), s(gamma));
            }
            FamilyId::F3 {
                theta1,
                theta2,
                theta3,
                alpha,
                tail,
                ..
            } => {
                m.insert("theta1".into(), s(theta1));
                m.insert("theta2".into(), s(theta2));
                m.insert("theta3".into(), s(theta3));
                m.insert("alpha".into(), json!(alpha));
                let tail: Vec<Value> = tail
                    .iter()
                    .map(|t| json!({"i": t.i, "j": t.j, "k": t.k, "value": scalar::to_string(&t.value)}))
                    .collect();
                m.insert("tail".into(), Value::Array(tail));
            }
            FamilyId::M1 { k, .. } => {
                m.insert("k".into(), json!(k));
            }
            FamilyId::M2 { alpha, .. } => {
                m.insert("alpha".into(), s(alpha));
            }
        }
        m
    }

    /// Inverse of [`FamilyId::params_json`].
    pub fn from_params(family: Family, n: usize, params: &BTreeMap<String, Value>) -> Result<Self> {
        let missing = |key: &str| Error::param(format!("{family} needs parameter '{key}'"));
        let rational = |key: &str| -> Result<Scalar> {
            match params.get(key) {
                Some(Value::String(s)) => scalar::parse(s),
                Some(_) => Err(Error::param(format!("{family} parameter '{key}' must be a rational string"))),
                None => Err(missing(key)),
            }
        };
        let rationals = |key: &str| -> Result<Vec<Scalar>> {
            match params.get(key) {
                Some(Value::Array(xs)) => xs
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => scalar::parse(s),
                        _ => Err(Error::param(format!("{family} parameter '{key}' must hold rational strings"))),
                    })
                    .collect(),
                Some(_) => Err(Error::param(format!("{family} parameter '{key}' must be an array"))),
                None => Err(missing(key)),
            }
        };
        let integer = |key: &str| -> Result<u64> {
            params
                .get(key)
                .ok_or_else(|| missing(key))?
                .as_u64()
                .ok_or_else(|| Error::param(format!("{family} parameter '{key}' must be a non-negative integer")))
        };
        let flag = |key: &str| -> Result<u8> {
            u8::try_from(integer(key)?).map_err(|_| Error::param(format!("{family}: alpha must be 0 or 1")))
        };
        Ok(match family {
            Family::Ngf1 => FamilyId::Ngf1 { n },
            Family::Ngf2 => FamilyId::Ngf2 { n },
            Family::Ngf3 => FamilyId::Ngf3 { n, alpha: flag("alpha")? },
            Family::F1 => FamilyId::F1 {
                n,
                alphas: rationals("alphas")?,
                theta: rational("theta")?,
            },
            Family::F2 => FamilyId::F2 {
                n,
                betas: rationals("betas")?,
                gamma: rational("gamma")?,
            },
            Family::F3 => {
                let tail = match params.get("tail") {
                    Some(Value::Array(xs)) => xs
                        .iter()
                        .map(|x| {
                            let idx = |key: &str| {
                                x.get(key)
                                    .and_then(Value::as_u64)
                                    .map(|v| v as usize)
                                    .ok_or_else(|| Error::param(format!("F3 tail entry needs integer '{key}'")))
                            };
                            let value = x
                                .get("value")
                                .and_then(Value::as_str)
                                .ok_or_else(|| Error::param("F3 tail entry needs a rational 'value'"))?;
                            Ok(TailEntry {
                                i: idx("i")?,
                                j: idx("j")?,
                                k: idx("k")?,
                                value: scalar::parse(value)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                    Some(_) => return Err(Error::param("F3 parameter 'tail' must be an array")),
                    None => Vec::new(),
                };
                FamilyId::F3 {
                    n,
                    theta1: rational("theta1")?,
                    theta2: rational("theta2")?,
                    theta3: rational("theta3")?,
                    alpha: flag("alpha")?,
                    tail,
                }
            }
            Family::M1 => FamilyId::M1 { n, k: integer("k")? as usize },
            Family::M2 => FamilyId::M2 { n, alpha: rational("alpha")? },
            Family::M3 => FamilyId::M3 { n },
            Family::M4 => FamilyId::M4 { n },
        })
    }

    /// Short human label such as `M1(n=7, k=4)`.
    pub fn label(&self) -> String {
        let mut parts = vec![format!("n={}", self.n())];
        for (key, v) in self.params_json() {
            let v = match v {
                Value::String(s) => s,
                other => other.to_string(),
            };
            parts.push(format!("{key}={v}"));
        }
        format!("{}({})", self.family(), parts.join(", "))
    }
}

/// Accumulates table entries, adding repeated keys.
#[derive(Default)]
struct Table(BTreeMap<(usize, usize, usize), Scalar>);

impl Table {
    fn add(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.0.entry((i, j, k)).or_insert_with(Scalar::zero);
        *e += v;
    }

    fn one(&mut self, i: usize, j: usize, k: usize) {
        self.add(i, j, k, int(1));
    }

    fn build(self, n: usize) -> Result<Algebra> {
        Algebra::new(n, self.0)
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::param(msg()))
    }
}

fn min_dim(n: usize, min: usize, family: &str) -> Result<()> {
    require(n >= min, || format!("{family} requires n >= {min}, got n = {n}"))
}

fn check_alpha_parity(n: usize, alpha: u8, family: &str) -> Result<()> {
    require(alpha <= 1, || format!("{family}: alpha must be 0 or 1, got {alpha}"))?;
    require(alpha == 0 || n % 2 == 0, || {
        format!("{family}: alpha = 1 requires even n (alpha = 0 for odd n), got n = {n}")
    })
}

fn validated(a: Algebra) -> Result<Algebra> {
    a.require_leibniz()?;
    Ok(a)
}

/// `[e_1,e_1] = e_3`, `[e_i,e_1] = e_{i+1}` for `2 ≤ i ≤ n−1`.
pub fn make_ngf1(n: usize) -> Result<Algebra> {
    min_dim(n, 3, "NGF1")?;
    let mut t = Table::default();
    t.one(1, 1, 3);
    for i in 2..n {
        t.one(i, 1, i + 1);
    }
    t.build(n)
}

/// `[e_1,e_1] = e_3`, `[e_i,e_1] = e_{i+1}` for `3 ≤ i ≤ n−1`.
pub fn make_ngf2(n: usize) -> Result<Algebra> {
    min_dim(n, 3, "NGF2")?;
    let mut t = Table::default();
    t.one(1, 1, 3);
    for i in 3..n {
        t.one(i, 1, i + 1);
    }
    t.build(n)
}

fn add_skew_chain(t: &mut Table, n: usize) {
    for i in 2..n {
        t.one(i, 1, i + 1);
    }
    for i in 3..n {
        t.add(1, i, i + 1, int(-1));
    }
}

/// `[e_i, e_{n+1−i}] = α (−1)^{i+1} e_n` for `2 ≤ i ≤ n−1`; the antisymmetric
/// partner is the same formula at `n+1−i` when `n` is even.
fn add_alpha_terms(t: &mut Table, n: usize, alpha: u8) {
    if alpha == 0 {
        return;
    }
    for i in 2..n {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        t.add(i, n + 1 - i, n, int(sign));
    }
}

/// The Lie algebra `[e_i,e_1] = −[e_1,e_i] = e_{i+1}` plus the α-terms.
pub fn make_ngf3(n: usize, alpha: u8) -> Result<Algebra> {
    min_dim(n, 3, "NGF3")?;
    check_alpha_parity(n, alpha, "NGF3")?;
    let mut t = Table::default();
    add_skew_chain(&mut t, n);
    t.add(1, 2, 3, int(-1));
    add_alpha_terms(&mut t, n, alpha);
    t.build(n)
}

/// Family `F1` with `alphas = [α_4, …, α_{n−1}]` (an optional trailing `α_n`
/// feeds the `e_n` coefficient of `[e_2, e_2]`).
pub fn make_f1(n: usize, alphas: &[Scalar], theta: &Scalar) -> Result<Algebra> {
    min_dim(n, 4, "F1")?;
    require(alphas.len() == n - 4 || alphas.len() == n - 3, || {
        format!(
            "F1 with n = {n} takes alpha_4..alpha_{} ({} values, or {} with alpha_{n}), got {}",
            n - 1,
            n - 4,
            n - 3,
            alphas.len()
        )
    })?;
    let alpha = |t: usize| alphas.get(t - 4).cloned().unwrap_or_else(Scalar::zero);
    let mut tb = Table::default();
    tb.one(1, 1, 3);
    for i in 2..n {
        tb.one(i, 1, i + 1);
    }
    for t in 4..n {
        tb.add(1, 2, t, alpha(t));
    }
    tb.add(1, 2, n, theta.clone());
    for j in 2..=n - 2 {
        for t in 4..=n + 2 - j {
            tb.add(j, 2, j + t - 2, alpha(t));
        }
    }
    validated(tb.build(n)?)
}

/// Family `F2` with `betas = [β_3, …, β_{n−1}]`.
pub fn make_f2(n: usize, betas: &[Scalar], gamma: &Scalar) -> Result<Algebra> {
    min_dim(n, 4, "F2")?;
    require(betas.len() == n - 3, || {
        format!("F2 with n = {n} takes beta_3..beta_{} ({} values), got {}", n - 1, n - 3, betas.len())
    })?;
    let beta = |t: usize| betas[t - 3].clone();
    let mut tb = Table::default();
    tb.one(1, 1, 3);
    for i in 3..n {
        tb.one(i, 1, i + 1);
    }
    for t in 3..n {
        tb.add(1, 2, t + 1, beta(t));
    }
    tb.add(2, 2, n, gamma.clone());
    for j in 3..=n - 2 {
        for t in 3..=n + 1 - j {
            tb.add(j, 2, j + t - 1, beta(t));
        }
    }
    validated(tb.build(n)?)
}

/// Family `F3`. The free skew products are supplied in `tail`; the assembled
/// table is checked against the Leibniz identity.
pub fn make_f3(
    n: usize,
    theta1: &Scalar,
    theta2: &Scalar,
    theta3: &Scalar,
    alpha: u8,
    tail: &[TailEntry],
) -> Result<Algebra> {
    min_dim(n, 4, "F3")?;
    check_alpha_parity(n, alpha, "F3")?;
    let mut skew: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for e in tail {
        require(e.i >= 2 && e.j >= 2 && e.i != e.j, || {
            format!("F3 tail entry ({}, {}, {}) needs distinct i, j >= 2", e.i, e.j, e.k)
        })?;
        require(e.k >= e.i + e.j + 1 && e.k <= n, || {
            format!(
                "F3 tail entry ({}, {}, {}) needs {} <= k <= {n}",
                e.i,
                e.j,
                e.k,
                e.i + e.j + 1
            )
        })?;
        let (key, v) = if e.i < e.j {
            ((e.i, e.j, e.k), e.value.clone())
        } else {
            ((e.j, e.i, e.k), -e.value.clone())
        };
        if let Some(prev) = skew.insert(key, v.clone()) {
            require(prev == v, || {
                format!("F3 tail entry ({}, {}, {}) given inconsistently", e.i, e.j, e.k)
            })?;
        }
    }
    let mut t = Table::default();
    add_skew_chain(&mut t, n);
    t.add(1, 1, n, theta1.clone());
    t.add(1, 2, 3, int(-1));
    t.add(1, 2, n, theta2.clone());
    t.add(2, 2, n, theta3.clone());
    for ((i, j, k), v) in skew {
        t.add(i, j, k, v.clone());
        t.add(j, i, k, -v);
    }
    add_alpha_terms(&mut t, n, alpha);
    validated(t.build(n)?)
}

/// `[y_i,y_1] = y_{i+1}` (`1 ≤ i ≤ n−2`), `[y_i,y_n] = y_{k+i−1}` (`1 ≤ i ≤ n−k`).
pub fn make_m1(n: usize, k: usize) -> Result<Algebra> {
    require(n >= 4 && (3..n).contains(&k), || {
        format!("M1 requires 3 <= k <= n-1, got n = {n}, k = {k}")
    })?;
    let mut t = Table::default();
    for i in 1..=n - 2 {
        t.one(i, 1, i + 1);
    }
    for i in 1..=n - k {
        t.one(i, n, k + i - 1);
    }
    t.build(n)
}

fn require_odd(n: usize, family: &str) -> Result<()> {
    require(n >= 3 && n % 2 == 1, || format!("{family} is defined for odd n >= 3, got n = {n}"))
}

/// `M1((n+1)/2)` plus `[y_n, y_n] = α y_{n−1}`, `α ≠ 0`, odd `n`.
pub fn make_m2(n: usize, alpha: &Scalar) -> Result<Algebra> {
    require_odd(n, "M2")?;
    require(!alpha.is_zero(), || "M2 requires alpha != 0".to_string())?;
    let mut t = Table::default();
    for i in 1..=n - 2 {
        t.one(i, 1, i + 1);
    }
    let h = n.div_ceil(2);
    for i in 1..=(n - 1) / 2 {
        t.one(i, n, h + i - 1);
    }
    t.add(n, n, n - 1, alpha.clone());
    t.build(n)
}

/// `[y_i,y_1] = y_{i+1}` (`1 ≤ i ≤ n−2`), `[y_n,y_n] = y_{n−1}`, odd `n`.
pub fn make_m3(n: usize) -> Result<Algebra> {
    require_odd(n, "M3")?;
    let mut t = Table::default();
    for i in 1..=n - 2 {
        t.one(i, 1, i + 1);
    }
    t.one(n, n, n - 1);
    t.build(n)
}

/// `[y_1,y_1] = y_n`, `[y_i,y_1] = −[y_1,y_i] = y_{i+1}` (`2 ≤ i ≤ n−1`).
pub fn make_m4(n: usize) -> Result<Algebra> {
    min_dim(n, 3, "M4")?;
    let mut t = Table::default();
    t.one(1, 1, n);
    for i in 2..n {
        t.one(i, 1, i + 1);
        t.add(1, i, i + 1, int(-1));
    }
    t.build(n)
}
