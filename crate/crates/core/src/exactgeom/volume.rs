use num_traits::{Signed, Zero};

use super::linalg::{determinant, rref};
use super::{hull, PointConfig, Rational};
use crate::closure::ElementSet;

/// Volume of `conv(points)` measured in a fixed coordinate chart of the
/// affine hull of `chart`, as `k!` times the Euclidean volume in that chart
/// (`k` = dimension of the chart). Points outside the chart's affine hull are
/// not supported.
///
/// The polytope is triangulated by pulling its lexicographically smallest
/// point and recursing into the facets that avoid it.
pub fn normalized_volume(chart: &PointConfig, points: &ElementSet) -> Rational {
    let coords = chart_coordinates(chart);
    let k = coords.first().map_or(0, Vec::len);
    if points.count() < k + 1 {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for simplex in pulling_triangulation(chart, points) {
        if simplex.len() != k + 1 {
            continue;
        }
        let base = &coords[simplex[0]];
        let m: Vec<Vec<Rational>> = simplex[1..]
            .iter()
            .map(|&i| coords[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        total += determinant(&m).abs();
    }
    total
}

/// Projects every point of `chart` onto a set of coordinates that is
/// injective on its affine hull.
fn chart_coordinates(chart: &PointConfig) -> Vec<Vec<Rational>> {
    let first = chart.point(0).to_vec();
    let diffs: Vec<Vec<Rational>> = chart
        .points()
        .iter()
        .map(|p| p.iter().zip(&first).map(|(a, b)| a - b).collect())
        .collect();
    let (_, pivots) = rref(diffs.clone(), chart.dim());
    diffs.iter().map(|d| pivots.iter().map(|&c| d[c].clone()).collect()).collect()
}

/// Simplices (as point index lists, apex first) of a pulling triangulation of
/// the points in `set`, in the same dimension as their affine hull.
fn pulling_triangulation(chart: &PointConfig, set: &ElementSet) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = set.to_vec();
    let sub = PointConfig::new(chart.dim(), idx.iter().map(|&i| chart.point(i).to_vec()).collect())
        .expect("subset of a valid configuration");
    let dim = sub.affine_dim();
    if dim <= 0 {
        return vec![vec![idx[sub.lex_order()[0]]]];
    }
    let h = hull(&sub);
    let apex_local = sub.lex_order().into_iter().find(|&i| h.vertices.contains(i)).unwrap();
    let apex = idx[apex_local];
    let mut out = Vec::new();
    for row in h.incidence.rows() {
        if row.contains(apex_local) {
            continue;
        }
        let facet = ElementSet::from_indices(chart.len(), row.iter().map(|l| idx[l]));
        for mut s in pulling_triangulation(chart, &facet) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}
