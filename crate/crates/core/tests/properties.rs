mod common;

use common::{catalog_at, q, Dense, Q};
use leibniz::catalog::{make_f1, make_f2, make_m1, make_m4};
use leibniz::derivation::{
    corrected_m4_h0, derivation_space, expected_der_basis, graded_der_decomposition, inner_derivations,
    right_multiplication,
};
use leibniz::gradation::{
    admissible_weight_lattice, best_diagonal_gradation, canonical_weights, natural_grading,
    ngf1_long_gradation, verify_connected, verify_weights, GradationReport,
};
use leibniz::structure::{is_two_sided_ideal, lower_central_series, right_annihilator, series_dims};
use leibniz::{Algebra, FamilyId, LinearMap, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, d)| Q::new(p.into(), d.into()))
}

fn catalog_id() -> impl Strategy<Value = FamilyId> {
    (4usize..=6).prop_flat_map(|n| {
        let ids = catalog_at(n);
        (0..ids.len()).prop_map(move |i| ids[i].clone())
    })
}

fn f_family() -> impl Strategy<Value = Algebra> {
    (4usize..=6).prop_flat_map(|n| {
        prop_oneof![
            (prop::collection::vec(rational(), n - 4), rational())
                .prop_map(move |(alphas, theta)| make_f1(n, &alphas, &theta).unwrap()),
            (prop::collection::vec(rational(), n - 3), rational())
                .prop_map(move |(betas, gamma)| make_f2(n, &betas, &gamma).unwrap()),
        ]
    })
}

fn small_algebra() -> impl Strategy<Value = Algebra> {
    prop_oneof![catalog_id().prop_map(|id| id.build().unwrap()), f_family()]
}

fn invertible(n: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| {
            let rows = v.chunks(n).map(|r| r.iter().map(|x| q(*x)).collect()).collect();
            LinearMap::from_rows(rows).unwrap()
        })
        .prop_filter("singular", |p| p.inverse().is_ok())
}

fn algebra_with_basis_change() -> impl Strategy<Value = (Algebra, LinearMap)> {
    small_algebra().prop_flat_map(|a| {
        let n = a.dim();
        (Just(a), invertible(n))
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(rational(), n)
}

fn algebra_and_vectors() -> impl Strategy<Value = (Algebra, Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)> {
    small_algebra().prop_flat_map(|a| {
        let n = a.dim();
        (Just(a), vector(n), vector(n), vector(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_change_preserves_structure((a, p) in algebra_with_basis_change()) {
        let b = a.change_basis(&p).unwrap();
        prop_assert!(b.leibniz_defect().is_empty());
        prop_assert_eq!(series_dims(&b), series_dims(&a));
        prop_assert_eq!(derivation_space(&b).unwrap().dim(), derivation_space(&a).unwrap().dim());
        prop_assert_eq!(b.change_basis(&p.inverse().unwrap()).unwrap(), a);
    }

    #[test]
    fn basis_change_preserves_defects((a, p) in algebra_with_basis_change()) {
        let bad = a.with_constant(1, 2, a.dim(), a.constant(1, 2, a.dim()) + q(1)).unwrap();
        prop_assume!(!bad.is_leibniz());
        prop_assert!(!bad.change_basis(&p).unwrap().is_leibniz());
    }

    #[test]
    fn basis_changes_compose((a, p) in algebra_with_basis_change(), seed in invertible(4)) {
        prop_assume!(a.dim() == 4);
        let direct = a.change_basis(&p.compose(&seed).unwrap()).unwrap();
        let stepwise = a.change_basis(&p).unwrap().change_basis(&seed).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn product_is_bilinear((a, x, y, z) in algebra_and_vectors(), c in rational()) {
        let n = a.dim();
        let comb: Vec<Scalar> = x.iter().zip(&y).map(|(a, b)| a + &c * b).collect();
        let left = a.product(&comb, &z).unwrap();
        let right = a.product(&z, &comb).unwrap();
        let (xz, yz, zx, zy) = (
            a.product(&x, &z).unwrap(),
            a.product(&y, &z).unwrap(),
            a.product(&z, &x).unwrap(),
            a.product(&z, &y).unwrap(),
        );
        for i in 0..n {
            prop_assert_eq!(&left[i], &(&xz[i] + &c * &yz[i]));
            prop_assert_eq!(&right[i], &(&zx[i] + &c * &zy[i]));
        }
        let d = Dense::of(&a);
        prop_assert_eq!(d.bracket(&x, &y), a.product(&x, &y).unwrap());
    }

    #[test]
    fn series_is_nested_and_annihilator_is_ideal(a in small_algebra()) {
        let series = lower_central_series(&a);
        for w in series.windows(2) {
            prop_assert!(w[0].contains_subspace(&w[1]));
        }
        prop_assert!(is_two_sided_ideal(&a, &right_annihilator(&a)));
    }

    #[test]
    fn lattice_vectors_verify(a in small_algebra()) {
        for w in admissible_weight_lattice(&a) {
            prop_assert!(verify_weights(&a, &w).is_ok());
        }
    }

    #[test]
    fn natural_grading_is_graded(a in small_algebra()) {
        let g = natural_grading(&a).unwrap();
        prop_assert!(g.graded.is_leibniz());
        prop_assert!(verify_weights(&g.graded, &g.weights).is_ok());
        prop_assert_eq!(series_dims(&g.graded), series_dims(&a));
    }

    #[test]
    fn search_length_grows_with_bound(a in small_algebra()) {
        let mut previous = 0;
        for bound in 1..=3 {
            let (w, report) = best_diagonal_gradation(&a, bound).unwrap();
            prop_assert!(report.connected);
            prop_assert!(report.length >= previous);
            prop_assert!(report.length >= 1 && report.length <= a.dim());
            prop_assert_eq!(&report, &GradationReport::of(&w));
            previous = report.length;
        }
    }

    #[test]
    fn derivations_form_a_lie_algebra(a in small_algebra()) {
        let der = derivation_space(&a).unwrap();
        let inn = inner_derivations(&a).unwrap();
        let maps = der.maps();
        let mut commutators = Vec::new();
        let mut inner_brackets = Vec::new();
        for (i, d) in maps.iter().enumerate() {
            for e in &maps[i + 1..] {
                commutators.push(d.commutator(e).unwrap());
            }
            for x in 0..a.dim() {
                let mut ex = vec![q(0); a.dim()];
                ex[x] = q(1);
                let r = right_multiplication(&a, &ex).unwrap();
                let bracket = d.commutator(&r).unwrap();
                prop_assert_eq!(&bracket, &right_multiplication(&a, &d.apply(&ex).unwrap()).unwrap());
                inner_brackets.push(bracket);
            }
        }
        prop_assert!(der.contains_all(&commutators));
        prop_assert!(inn.contains_all(&inner_brackets));
    }
}

#[test]
fn ngf1_changed_basis_reaches_length_n() {
    for n in 4..=9 {
        let (p, w) = ngf1_long_gradation(n);
        let b = leibniz::catalog::make_ngf1(n).unwrap().change_basis(&p).unwrap();
        let mut expected = vec![-1i64];
        expected.extend((0..n as i64 - 1).rev());
        assert_eq!(w.as_slice(), &expected[..]);
        assert_eq!(verify_connected(&b, &w).unwrap().length, n);
        assert_eq!(best_diagonal_gradation(&b, 3).unwrap().1.length, n);
    }
}

#[test]
fn m1_shifts_sit_in_their_levels() {
    for n in 6..=8 {
        for k in 3..n {
            let id = FamilyId::M1 { n, k };
            let a = make_m1(n, k).unwrap();
            let dec = graded_der_decomposition(&a, &canonical_weights(&id).unwrap()).unwrap();
            for m in expected_der_basis(&id).unwrap() {
                let levels = dec.levels_containing(&m.map);
                let expected = match m.name.as_str() {
                    "d0" => 0,
                    "h1" => (n - k) as i64,
                    "h2" => k as i64 - 2,
                    d => d[1..].parse().unwrap(),
                };
                assert_eq!(levels, vec![expected], "{} in M1({n},{k})", m.name);
            }
        }
    }
}

#[test]
fn m1_h2_level_in_dimension_seven() {
    let id = FamilyId::M1 { n: 7, k: 6 };
    let a = id.build().unwrap();
    let dec = graded_der_decomposition(&a, &canonical_weights(&id).unwrap()).unwrap();
    let h2 = expected_der_basis(&id).unwrap().into_iter().find(|m| m.name == "h2").unwrap();
    assert_eq!(dec.levels_containing(&h2.map), vec![4]);
    assert_eq!(dec.total_dim(), 8);
}

#[test]
fn corrected_m4_diagonal_is_degree_zero() {
    for n in 4..=9 {
        let id = FamilyId::M4 { n };
        let a = make_m4(n).unwrap();
        let dec = graded_der_decomposition(&a, &canonical_weights(&id).unwrap()).unwrap();
        assert_eq!(dec.levels_containing(&corrected_m4_h0(n)), vec![0]);
    }
}
