mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use tightspan::closure::{ganter_hasse, ElementSet, GanterOptions};
use tightspan::exactgeom::{dot, normalized_volume, rat, to_rational_vec, PointConfig, Rational};
use tightspan::oracle::{brute_closed_sets, brute_regular_subdivision};
use tightspan::subdivision::{coordinatize, regular_subdivision, tight_span_closure, HeightFunction, Subdivision};

fn instance() -> impl Strategy<Value = (PointConfig, HeightFunction)> {
    (1usize..=3).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=8).prop_flat_map(move |mut pts| {
            pts.sort();
            pts.dedup();
            let n = pts.len();
            (Just(PointConfig::from_ints(d, &pts).unwrap()), prop::collection::vec(0i64..=4, n))
                .prop_map(|(c, h)| (c, HeightFunction::from_ints(&h)))
        })
    })
}

fn lifted_values(sub: &Subdivision, x: &[Rational]) -> Vec<Rational> {
    let h = sub.heights().unwrap();
    (0..sub.config().len()).map(|p| &h.0[p] - dot(sub.config().point(p), x)).collect()
}

fn argmin(values: &[Rational]) -> ElementSet {
    let min = values.iter().min().unwrap();
    ElementSet::from_indices(values.len(), (0..values.len()).filter(|&i| &values[i] == min))
}

fn argmax_dot(c: &PointConfig, u: &[Rational]) -> ElementSet {
    let vals: Vec<Rational> = c.points().iter().map(|p| -dot(p, u)).collect();
    argmin(&vals)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cells_match_brute_lower_hull((c, h) in instance()) {
        let sub = regular_subdivision(&c, &h).unwrap();
        let mut cells = sub.maximal_cells().to_vec();
        cells.sort();
        prop_assert_eq!(cells, brute_regular_subdivision(c.points(), &h.0));
    }

    #[test]
    fn closure_matches_brute_force((c, h) in instance()) {
        let sub = regular_subdivision(&c, &h).unwrap();
        let ground = sub.maximal_cells().len() + sub.boundary_facets().len();
        prop_assume!(ground <= 15);
        for gamma in [Vec::new(), sub.boundary_facets().to_vec()] {
            let sys = tight_span_closure(&sub, &gamma).unwrap();
            let (d, _) = ganter_hasse(&sys, GanterOptions::default()).unwrap();
            prop_assert_eq!(d.canonical(), brute_closed_sets(&sys));
        }
    }

    #[test]
    fn duality_and_coordinates((c, h) in instance()) {
        let sub = regular_subdivision(&c, &h).unwrap();
        let span = coordinatize(&sub, &[], GanterOptions::default()).unwrap();
        let dim_p = c.affine_dim();

        // closed nonempty proper sets correspond to the cells of the subdivision
        let primal: BTreeSet<ElementSet> = span.cells.iter().map(|cell| cell.primal.clone()).collect();
        prop_assert_eq!(primal.len(), span.cells.len());
        let all: BTreeSet<ElementSet> = sub.all_cells().into_iter().collect();
        prop_assert_eq!(&primal, &all);
        for cell in &span.cells {
            prop_assert_eq!(cell.dim as i64, dim_p - c.affine_dim_of(&cell.primal));
        }

        for (sigma, x) in sub.maximal_cells().iter().zip(&span.dual_vertices) {
            prop_assert_eq!(&argmin(&lifted_values(&sub, x)), sigma);
            for l in &span.lineality {
                prop_assert_eq!(dot(x, &to_rational_vec(l)), rat(0));
            }
        }
        for (f, u) in sub.carrier_facet().iter().zip(&span.dual_rays) {
            prop_assert_eq!(&argmax_dot(&c, &to_rational_vec(u)), sub.hull().incidence.row(*f));
        }
        for ((tau, f), u) in sub.boundary_facets().iter().zip(sub.carrier_facet()).zip(&span.dual_rays) {
            let facet = sub.hull().incidence.row(*f);
            prop_assert!(tau.is_subset(facet));
            prop_assert_eq!(c.affine_dim_of(tau), dim_p - 1);
            // far enough along the ray from a cell containing τ, exactly τ minimizes
            let u = to_rational_vec(u);
            let (s, x) = sub.maximal_cells().iter().zip(&span.dual_vertices).find(|(s, _)| tau.is_subset(s)).unwrap();
            prop_assert!(tau.is_subset(s));
            let vals = lifted_values(&sub, x);
            let spread = vals.iter().max().unwrap() - vals.iter().min().unwrap();
            let top = dot(c.point(facet.iter().next().unwrap()), &u);
            let gap = (0..c.len()).filter(|&p| !facet.contains(p)).map(|p| &top - dot(c.point(p), &u)).min();
            let t = gap.map_or(rat(1), |g| spread / g + rat(1));
            let far: Vec<Rational> = x.iter().zip(&u).map(|(a, b)| a + &t * b).collect();
            prop_assert_eq!(&argmin(&lifted_values(&sub, &far)), tau);
        }
    }

    #[test]
    fn volumes_partition((c, h) in instance()) {
        let sub = regular_subdivision(&c, &h).unwrap();
        let total: Rational = sub.maximal_cells().iter().map(|s| normalized_volume(&c, s)).sum();
        prop_assert_eq!(total, normalized_volume(&c, &ElementSet::full(c.len())));
    }

    #[test]
    fn full_boundary_leaves_interior_cells((c, h) in instance()) {
        let sub = regular_subdivision(&c, &h).unwrap();
        let span = coordinatize(&sub, sub.boundary_facets(), GanterOptions::default()).unwrap();
        let k = sub.maximal_cells().len();
        for node in span.hasse.nodes().iter().filter(|n| !n.is_full()) {
            prop_assert!(node.iter().all(|i| i < k));
        }
        let on_boundary = |s: &ElementSet| sub.hull().incidence.rows().iter().any(|row| s.is_subset(row));
        let interior: BTreeSet<ElementSet> = sub.all_cells().into_iter().filter(|s| !on_boundary(s)).collect();
        let got: BTreeSet<ElementSet> = span.cells.iter().map(|cell| cell.primal.clone()).collect();
        prop_assert_eq!(got, interior);
        prop_assert!(span.cells.iter().all(|cell| cell.is_bounded()));
    }
}

#[test]
fn two_pyramids() {
    let sub = subdivision_of(&tightspan::matroid::corank_valuation(&blocks(2)));
    assert_eq!(sub.maximal_cells().len(), 2);
    let span = coordinatize(&sub, &[], GanterOptions::default()).unwrap();
    let (a, b) = (&span.dual_vertices[0], &span.dual_vertices[1]);
    let diff: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    // the square is the hyperplane x_0 + x_1 = 1 inside Δ(2,4)
    assert!(diff[0] == diff[1] && diff[2] == diff[3] && diff[0] == -&diff[2] && diff[0] != rat(0));
    assert_eq!(span.bounded_f_vector(true), vec![2, 1]);
}

#[test]
fn bent_segment_span_json() {
    let s = bent_segment();
    let span = coordinatize(&s, &[], GanterOptions::default()).unwrap();
    let j = span.to_json(true);
    assert_eq!(j["vertices"], serde_json::json!([["-1"], ["1"]]));
    assert_eq!(j["f_vector"], serde_json::json!([2, 3]));
    assert_eq!(j["bounded_f_vector"], serde_json::json!([2, 1]));
}

#[test]
fn non_regular_cells_are_checked() {
    let c = config(1, &[&[0], &[1], &[2]]);
    assert!(Subdivision::from_cells(c.clone(), vec![set(3, &[0, 1]), set(3, &[1, 2])]).is_ok());
    assert!(Subdivision::from_cells(c, vec![set(3, &[0, 2]), set(3, &[1, 2])]).is_err());
}
