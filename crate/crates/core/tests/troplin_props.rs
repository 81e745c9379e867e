mod common;

use proptest::prelude::*;

use common::*;
use tightspan::closure::GanterOptions;
use tightspan::exactgeom::{rat, ratio, Rational};
use tightspan::matroid::{connected_components, corank_valuation, is_loopfree, Matroid, Valuation};
use tightspan::oracle::{brute_cell_at, brute_tls_membership, enumerate_matroids};
use tightspan::troplin::{bergman_fan, cell_at, fvector_report, tropical_linear_space, ValuatedMatroid};

/// `v(ij) = −d(i,j)` for a caterpillar tree with the given pendant lengths
/// and spine positions.
fn caterpillar(pendant: &[i64], spine: &[i64]) -> Valuation {
    let n = pendant.len();
    let u = Matroid::uniform(2, n);
    let values = u
        .bases()
        .iter()
        .map(|b| {
            let v: Vec<usize> = b.to_vec();
            let (i, j) = (v[0], v[1]);
            rat(-(pendant[i] + pendant[j] + (spine[i] - spine[j]).abs()))
        })
        .collect();
    Valuation::new(u, values).unwrap()
}

fn tree_strategy() -> impl Strategy<Value = Valuation> {
    (4usize..=6).prop_flat_map(|n| {
        (prop::collection::vec(1i64..=3, n), prop::collection::vec(0i64..=3, n))
            .prop_map(|(p, s)| caterpillar(&p, &s))
    })
}

fn point_strategy(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-8i64..=8).prop_map(|k| ratio(k, 2)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trees_have_rank_two_spaces(v in tree_strategy()) {
        let n = v.matroid().n();
        let vm = ValuatedMatroid::new(v).unwrap();
        let t = tropical_linear_space(&vm, GanterOptions::default()).unwrap();
        prop_assert_eq!(t.dim(), 1);
        prop_assert_eq!(t.lineality_dim(), 0);
        let b = t.bounded_f_vector(true);
        // a tree with at most n − 2 inner vertices and n − 3 inner edges
        prop_assert!(b[0] >= 1 && b[0] <= n - 2);
        prop_assert!(b.get(1).copied().unwrap_or(0) == b[0] - 1);
        prop_assert_eq!(t.f_vector(true)[1] , b[0] - 1 + n);
        prop_assert!(fvector_report(&t, true).all_within_bound());
    }

    #[test]
    fn membership_agrees_with_minimizers(v in tree_strategy(), seed in point_strategy(6), shift in -5i64..=5) {
        let n = v.matroid().n();
        let x: Vec<Rational> = seed[..n].to_vec();
        let vm = ValuatedMatroid::new(v.clone()).unwrap();
        let t = tropical_linear_space(&vm, GanterOptions::default()).unwrap();
        prop_assert_eq!(cell_at(&vm, &x).unwrap(), brute_cell_at(&v, &x));
        let inside = brute_tls_membership(&v, &x);
        prop_assert_eq!(t.contains(&x), inside);
        let moved: Vec<Rational> = x.iter().map(|xi| xi + rat(shift)).collect();
        prop_assert_eq!(t.contains(&moved), inside);
        prop_assert_eq!(cell_at(&vm, &moved).unwrap(), cell_at(&vm, &x).unwrap());
    }
}

#[test]
fn bergman_fans_of_small_matroids() {
    for n in 1..=4 {
        for m in enumerate_matroids(n).into_iter().filter(is_loopfree) {
            let b = bergman_fan(&m, GanterOptions::default()).unwrap();
            assert_eq!(b.dim() + 1, m.rank());
            assert_eq!(b.lineality_dim() + 1, connected_components(&m).len());
            // a fan has a single vertex modulo its lineality
            assert_eq!(b.f_vector(true)[0], 1);
            assert_eq!(b.span().dual_vertices.len(), 1);
        }
    }
}

#[test]
fn corank_lifts_of_rank_three_matroids_respect_the_bound() {
    let mut checked = 0;
    for m in enumerate_matroids(5).into_iter().filter(|m| m.rank() == 3 && is_loopfree(m)).take(40) {
        let vm = ValuatedMatroid::new(corank_valuation(&m)).unwrap();
        let t = tropical_linear_space(&vm, GanterOptions::default()).unwrap();
        assert_eq!(t.dim() + 1, 3);
        let report = fvector_report(&t, true);
        assert!(report.all_within_bound(), "{report:?}");
        checked += 1;
    }
    assert_eq!(checked, 40);
}

#[test]
fn uniform_bergman_fan_counts() {
    // the normal fan structure: dual to the loop-free faces of Δ(r, n)
    for n in 3..=6 {
        let t = bergman_fan(&Matroid::uniform(2, n), GanterOptions::default()).unwrap();
        assert_eq!(t.f_vector(true), vec![1, n]);
    }
    let t = bergman_fan(&Matroid::uniform(3, 4), GanterOptions::default()).unwrap();
    // Δ(3,4) is a tetrahedron; its loop-free faces have at least two vertices
    assert_eq!(t.f_vector(true), vec![1, 4, 6]);
}

#[test]
fn json_report_fields() {
    let vm = ValuatedMatroid::new(quartet()).unwrap();
    let t = tropical_linear_space(&vm, GanterOptions::default()).unwrap();
    let j = t.to_json(true);
    for key in ["vertices", "rays", "lineality", "cells", "f_vector", "bounded_f_vector", "n", "r", "speyer_bounds", "lineality_dim"] {
        assert!(j.get(key).is_some(), "missing {key}");
    }
    assert_eq!(j["bounded_f_vector"], serde_json::json!([2, 1]));
    assert_eq!(j["speyer_bounds"], serde_json::json!([2, 1]));
}
