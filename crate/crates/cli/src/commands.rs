use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read as _;

use serde_json::{json, Value};

use leibniz::audit::run_audit;
use leibniz::catalog::TailEntry;
use leibniz::derivation::{
    cohomology_dims, derivation_space, expected_der_basis, graded_der_decomposition, is_derivation,
    DerivationBasis,
};
use leibniz::document::AlgebraDocument;
use leibniz::gradation::{admissible_weight_lattice, best_diagonal_gradation, natural_grading, verify_weights};
use leibniz::scalar::{self, Scalar};
use leibniz::structure::{is_filiform, is_nilpotent, left_annihilator, right_annihilator, series_dims};
use leibniz::{Algebra, Error, Family, FamilyId, LinearMap, WeightVector};

use crate::{CatalogArgs, Failure, Format};

type CmdResult = Result<String, Failure>;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Parse(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn load(path: &str) -> Result<(AlgebraDocument, Algebra), Failure> {
    let doc = AlgebraDocument::parse(&read_input(path)?)?;
    let a = doc.to_algebra()?;
    Ok((doc, a))
}

fn parse_rational(flag: &str, s: &str) -> Result<Scalar, Failure> {
    scalar::parse(s).map_err(|_| Failure::Parse(format!("--{flag}: '{s}' is not a rational p or p/q")))
}

fn parse_rationals(flag: &str, s: &str) -> Result<Vec<Scalar>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_rational(flag, t.trim())).collect()
}

/// Accepts `1,2,3` as well as the JSON form `[1, 2, 3]`.
fn parse_weights(s: &str) -> Result<WeightVector, Failure> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Parse(format!("--weights: '{}' is not an integer", t.trim())))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(WeightVector)
}

fn parse_tail(s: &str) -> Result<TailEntry, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Failure::Parse(format!("--tail: expected i,j,k,value, got '{s}'"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let idx = |t: &str| t.parse::<usize>().map_err(|_| bad());
    Ok(TailEntry {
        i: idx(parts[0])?,
        j: idx(parts[1])?,
        k: idx(parts[2])?,
        value: parse_rational("tail", parts[3])?,
    })
}

fn family_id(args: &CatalogArgs) -> Result<FamilyId, Failure> {
    let family: Family = args.family.parse()?;
    let n = args.n;
    let given: Vec<(&str, bool)> = vec![
        ("k", args.k.is_some()),
        ("alpha", args.alpha.is_some()),
        ("alphas", args.alphas.is_some()),
        ("theta", args.theta.is_some()),
        ("betas", args.betas.is_some()),
        ("gamma", args.gamma.is_some()),
        ("theta1", args.theta1.is_some()),
        ("theta2", args.theta2.is_some()),
        ("theta3", args.theta3.is_some()),
        ("tail", !args.tail.is_empty()),
    ];
    let accepted: &[&str] = match family {
        Family::Ngf1 | Family::Ngf2 | Family::M3 | Family::M4 => &[],
        Family::Ngf3 => &["alpha"],
        Family::F1 => &["alphas", "theta"],
        Family::F2 => &["betas", "gamma"],
        Family::F3 => &["theta1", "theta2", "theta3", "alpha", "tail"],
        Family::M1 => &["k"],
        Family::M2 => &["alpha"],
    };
    if let Some((flag, _)) = given.iter().find(|(f, set)| *set && !accepted.contains(f)) {
        return Err(Failure::Constraint(format!("--{flag} does not apply to {family}")));
    }
    let opt_rational = |flag: &str, v: &Option<String>| match v {
        Some(s) => parse_rational(flag, s),
        None => Ok(scalar::zero()),
    };
    let flag01 = |v: &Option<String>| -> Result<u8, Failure> {
        match v.as_deref() {
            None | Some("0") => Ok(0),
            Some("1") => Ok(1),
            Some(other) => Err(Failure::Constraint(format!("{family}: alpha must be 0 or 1, got {other}"))),
        }
    };
    Ok(match family {
        Family::Ngf1 => FamilyId::Ngf1 { n },
        Family::Ngf2 => FamilyId::Ngf2 { n },
        Family::Ngf3 => FamilyId::Ngf3 { n, alpha: flag01(&args.alpha)? },
        Family::F1 => FamilyId::F1 {
            n,
            alphas: match &args.alphas {
                Some(s) => parse_rationals("alphas", s)?,
                None => vec![scalar::zero(); n.saturating_sub(4)],
            },
            theta: opt_rational("theta", &args.theta)?,
        },
        Family::F2 => FamilyId::F2 {
            n,
            betas: match &args.betas {
                Some(s) => parse_rationals("betas", s)?,
                None => vec![scalar::zero(); n.saturating_sub(3)],
            },
            gamma: opt_rational("gamma", &args.gamma)?,
        },
        Family::F3 => FamilyId::F3 {
            n,
            theta1: opt_rational("theta1", &args.theta1)?,
            theta2: opt_rational("theta2", &args.theta2)?,
            theta3: opt_rational("theta3", &args.theta3)?,
            alpha: flag01(&args.alpha)?,
            tail: args.tail.iter().map(|t| parse_tail(t)).collect::<Result<_, _>>()?,
        },
        Family::M1 => FamilyId::M1 {
            n,
            k: args.k.ok_or_else(|| Failure::Constraint("M1 requires --k".into()))?,
        },
        Family::M2 => FamilyId::M2 {
            n,
            alpha: match &args.alpha {
                Some(s) => parse_rational("alpha", s)?,
                None => scalar::one(),
            },
        },
        Family::M3 => FamilyId::M3 { n },
        Family::M4 => FamilyId::M4 { n },
    })
}

pub fn catalog(args: &CatalogArgs) -> CmdResult {
    let id = family_id(args)?;
    Ok(AlgebraDocument::from_family(&id)?.to_json())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn check(path: &str, format: Format) -> CmdResult {
    let (_, a) = load(path)?;
    let defect = a.leibniz_defect();
    let leibniz = defect.is_empty();
    let mut report = json!({
        "dim": a.dim(),
        "leibniz": leibniz,
        "violations": defect,
        "dim_left_annihilator": left_annihilator(&a).dim(),
        "dim_right_annihilator": right_annihilator(&a).dim(),
    });
    if leibniz {
        report["nilpotent"] = json!(is_nilpotent(&a)?);
        report["filiform"] = json!(is_filiform(&a)?);
        report["lie"] = json!(a.is_lie()?);
        report["lower_central_series"] = json!(series_dims(&a));
    }
    let text = match format {
        Format::Json => pretty(&report),
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "dim: {}", a.dim());
            if leibniz {
                let _ = writeln!(out, "leibniz: ok");
                let _ = writeln!(out, "nilpotent: {}", yes_no(is_nilpotent(&a)?));
                let _ = writeln!(out, "filiform: {}", yes_no(is_filiform(&a)?));
                let _ = writeln!(out, "lie: {}", yes_no(a.is_lie()?));
                let dims: Vec<String> = series_dims(&a).iter().map(usize::to_string).collect();
                let _ = writeln!(out, "lower central series: {}", dims.join(", "));
            } else {
                let _ = writeln!(out, "leibniz: FAIL ({} violated tuples)", defect.len());
                for v in &defect {
                    let _ = writeln!(
                        out,
                        "  (i={}, j={}, k={}) on e_{}: residual {}",
                        v.i,
                        v.j,
                        v.k,
                        v.m,
                        scalar::to_string(&v.residual)
                    );
                }
            }
            let _ = writeln!(out, "left annihilator: {}", left_annihilator(&a).dim());
            let _ = writeln!(out, "right annihilator: {}", right_annihilator(&a).dim());
            out
        }
    };
    if leibniz {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn maps_json(maps: &[LinearMap]) -> Value {
    json!(maps.iter().map(LinearMap::to_strings).collect::<Vec<_>>())
}

fn basis_json(b: &DerivationBasis) -> Value {
    maps_json(b.maps())
}

/// The catalog family a document claims to be, if its table agrees.
fn recognized_family(doc: &AlgebraDocument, a: &Algebra) -> Option<FamilyId> {
    let family: Family = doc.name.as_deref()?.parse().ok()?;
    let empty = BTreeMap::new();
    let id = FamilyId::from_params(family, doc.dim, doc.params.as_ref().unwrap_or(&empty)).ok()?;
    (id.build().ok()? == *a).then_some(id)
}

pub fn der(path: &str, weights: Option<&str>, format: Format) -> CmdResult {
    let (doc, a) = load(path)?;
    let n = a.dim();
    let der = derivation_space(&a)?;
    let dims = cohomology_dims(&a)?;
    debug_assert_eq!(dims.b2 + dims.dim_der, n * n);
    let mut report = json!({
        "dim": n,
        "dim_der": dims.dim_der,
        "dim_inn": dims.dim_inn,
        "h1": dims.h1,
        "b2": dims.b2,
        "n_squared": n * n,
        "b2_plus_dim_der_equals_n_squared": dims.b2 + dims.dim_der == n * n,
        "basis": basis_json(&der),
    });
    let graded = match weights {
        Some(w) => {
            let w = parse_weights(w)?;
            let dec = graded_der_decomposition(&a, &w)?;
            let levels: Vec<Value> = dec
                .levels
                .iter()
                .map(|(s, b)| json!({"shift": s, "dim": b.dim(), "basis": basis_json(b)}))
                .collect();
            report["weights"] = json!(w);
            report["graded"] = json!(levels);
            report["graded_total"] = json!(dec.total_dim());
            Some(dec)
        }
        None => None,
    };
    let published = match recognized_family(&doc, &a).map(|id| expected_der_basis(&id)) {
        Some(Ok(maps)) => {
            let mut rows = Vec::new();
            for m in maps {
                let mut row = json!({
                    "name": m.name,
                    "derivation": is_derivation(&a, &m.map)?,
                    "in_der": der.contains(&m.map),
                });
                if let Some(dec) = &graded {
                    row["shifts"] = json!(dec.levels_containing(&m.map));
                }
                rows.push(row);
            }
            Some(rows)
        }
        Some(Err(Error::NoExpectedBasis(_))) | None => None,
        Some(Err(e)) => return Err(e.into()),
    };
    if let Some(rows) = &published {
        report["published_basis"] = json!(rows);
    }
    Ok(match format {
        Format::Json => pretty(&report),
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "dim: {n}");
            let _ = writeln!(out, "dim Der: {}", dims.dim_der);
            let _ = writeln!(out, "dim Inn: {}", dims.dim_inn);
            let _ = writeln!(out, "dim H1: {}", dims.h1);
            let _ = writeln!(out, "dim B2: {} (= {} - {})", dims.b2, n * n, dims.dim_der);
            if let Some(dec) = &graded {
                let _ = writeln!(out, "\n| shift | dim W_s |\n|---|---|");
                for (s, b) in &dec.levels {
                    let _ = writeln!(out, "| {s} | {} |", b.dim());
                }
                let _ = writeln!(out, "\ngraded total: {}", dec.total_dim());
            }
            if let Some(rows) = &published {
                let _ = writeln!(out, "\n| published map | derivation | in Der | shifts |\n|---|---|---|---|");
                for r in rows {
                    let shifts = r.get("shifts").map_or("-".to_string(), Value::to_string);
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} |",
                        r["name"].as_str().unwrap_or_default(),
                        yes_no(r["derivation"].as_bool().unwrap_or(false)),
                        yes_no(r["in_der"].as_bool().unwrap_or(false)),
                        shifts
                    );
                }
            }
            out
        }
    })
}

fn gradation_md(w: &WeightVector, length: usize, connected: bool, levels: &[i64]) -> String {
    let ws: Vec<String> = w.as_slice().iter().map(i64::to_string).collect();
    let ls: Vec<String> = levels.iter().map(i64::to_string).collect();
    format!(
        "weights: ({})\nlevels: {}\nconnected: {}\nlength: {length}\n",
        ws.join(", "),
        ls.join(", "),
        yes_no(connected)
    )
}

pub fn grade_verify(path: &str, weights: &str, format: Format) -> CmdResult {
    let (_, a) = load(path)?;
    let w = parse_weights(weights)?;
    match verify_weights(&a, &w) {
        Ok(r) => Ok(match format {
            Format::Json => pretty(&json!({
                "weights": w,
                "admissible": true,
                "connected": r.connected,
                "length": r.length,
                "levels": r.nonempty_levels,
            })),
            Format::Md => format!(
                "admissible: yes\n{}",
                gradation_md(&w, r.length, r.connected, &r.nonempty_levels)
            ),
        }),
        Err(Error::InadmissibleWeights { i, j, k, wi, wj, wk }) => Err(Failure::Check(match format {
            Format::Json => pretty(&json!({
                "weights": w,
                "admissible": false,
                "violation": {"i": i, "j": j, "k": k, "wi": wi, "wj": wj, "wk": wk},
            })),
            Format::Md => format!("admissible: no\nviolation: [e_{i}, e_{j}] has an e_{k} term but {wi} + {wj} != {wk}\n"),
        })),
        Err(e) => Err(e.into()),
    }
}

pub fn grade_search(path: &str, bound: u32, format: Format) -> CmdResult {
    let (_, a) = load(path)?;
    let lattice = admissible_weight_lattice(&a);
    let (w, r) = best_diagonal_gradation(&a, bound)?;
    Ok(match format {
        Format::Json => pretty(&json!({
            "bound": bound,
            "lattice": lattice,
            "weights": w,
            "connected": r.connected,
            "length": r.length,
            "levels": r.nonempty_levels,
        })),
        Format::Md => {
            let lat: Vec<String> = lattice.iter().map(|v| format!("{:?}", v.as_slice())).collect();
            format!(
                "bound: {bound}\nlattice: {}\n{}",
                lat.join(" "),
                gradation_md(&w, r.length, r.connected, &r.nonempty_levels)
            )
        }
    })
}

pub fn grade_natural(path: &str, format: Format) -> CmdResult {
    let (_, a) = load(path)?;
    let g = natural_grading(&a)?;
    let graded = AlgebraDocument::from_algebra(&g.graded);
    Ok(match format {
        Format::Json => pretty(&json!({
            "weights": g.weights,
            "basis": g.basis.to_strings(),
            "matches_adapted_table": g.matches_adapted_table,
            "graded": graded,
        })),
        Format::Md => {
            let ws: Vec<String> = g.weights.as_slice().iter().map(i64::to_string).collect();
            format!(
                "weights: ({})\nmatches adapted table: {}\nadapted basis (columns):\n{}\ngraded algebra:\n{}",
                ws.join(", "),
                yes_no(g.matches_adapted_table),
                g.basis,
                graded.to_json()
            )
        }
    })
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Parse(format!("--n: expected N or A..B, got '{s}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((lo, hi)) => Ok((num(lo)?, num(hi.trim_start_matches('='))?)),
        None => num(s).map(|v| (v, v)),
    }
}

pub fn audit(range: &str, format: Format) -> CmdResult {
    let (lo, hi) = parse_range(range)?;
    let report = run_audit(lo, hi)?;
    Ok(match format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    })
}
