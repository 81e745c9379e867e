use num_bigint::BigInt;
use num_traits::Zero;

use super::{intersect_cells, tight_span_closure, Subdivision};
use crate::closure::{ganter_hasse, ElementSet, GanterOptions, GanterStats, HasseDiagram};
use crate::exactgeom::linalg::{null_space, project_out, solve};
use crate::exactgeom::{
    format_rational, int_rows_json, primitive, primitive_canonical_sign, Rational,
};
use crate::Error;

/// A cell `ρ_F` of the coordinatized span, dual to the subdivision cell
/// `⋂_{σ∈F} σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCell {
    /// Node index of `F` in the Hasse diagram.
    pub node: usize,
    /// Indices into [`ExtendedTightSpan::dual_vertices`].
    pub vertices: Vec<usize>,
    /// Indices into [`ExtendedTightSpan::dual_rays`].
    pub rays: Vec<usize>,
    /// Point set of the dual subdivision cell.
    pub primal: ElementSet,
    /// Dimension modulo the lineality space.
    pub dim: usize,
}

impl SpanCell {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

/// Extended tight span of a regular subdivision with coordinates.
#[derive(Clone, Debug)]
pub struct ExtendedTightSpan {
    pub base: Subdivision,
    pub gamma: Vec<ElementSet>,
    pub hasse: HasseDiagram,
    pub stats: GanterStats,
    pub cells: Vec<SpanCell>,
    /// One per maximal cell, orthogonal to the lineality space.
    pub dual_vertices: Vec<Vec<Rational>>,
    /// One per boundary facet: the outward normal of its carrier facet,
    /// projected off the lineality space.
    pub dual_rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

/// Builds the extended tight span of `sub` with respect to `gamma` and
/// attaches coordinates. `sub` must carry its height function.
pub fn coordinatize(sub: &Subdivision, gamma: &[ElementSet], opts: GanterOptions) -> Result<ExtendedTightSpan, Error> {
    let Some(heights) = sub.heights() else {
        return Err(Error::Invalid("coordinates need a regular subdivision with heights".into()));
    };
    let system = tight_span_closure(sub, gamma)?;
    let (hasse, stats) = ganter_hasse(&system, opts)?;
    let config = sub.config();
    let d = config.dim();
    let n = config.len();

    let p0 = config.point(0);
    let diffs: Vec<Vec<Rational>> =
        config.points().iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    let lin_basis = null_space(&diffs, d);

    // h(p) = p·x + c on the cell
    let dual_vertices: Vec<Vec<Rational>> = sub
        .maximal_cells()
        .iter()
        .map(|cell| {
            let rows: Vec<Vec<Rational>> = cell
                .iter()
                .map(|i| config.point(i).iter().cloned().chain(std::iter::once(Rational::from_integer(1.into()))).collect())
                .collect();
            let rhs: Vec<Rational> = cell.iter().map(|i| heights.0[i].clone()).collect();
            let sol = solve(&rows, &rhs, d + 1).expect("lifted lower facet is affine");
            project_out(&sol[..d], &lin_basis)
        })
        .collect();

    let dual_rays: Vec<Vec<BigInt>> = sub
        .carrier_facet()
        .iter()
        .map(|&f| {
            let outward: Vec<Rational> =
                sub.hull().hrep.facets[f].normal.iter().map(|x| Rational::from_integer(-x)).collect();
            primitive(&project_out(&outward, &lin_basis))
        })
        .collect();

    let m = sub.maximal_cells().len();
    let ground = sub.ground_cells();
    let dim_p = sub.dim();
    let top = ElementSet::full(ground.len());
    let mut cells = Vec::new();
    for (node, f) in hasse.nodes().iter().enumerate() {
        if f.is_empty() {
            continue;
        }
        let primal = intersect_cells(&ground, f, n);
        if primal.is_empty() {
            continue;
        }
        if *f == top && gamma.iter().any(|t| primal.is_subset(t)) {
            continue;
        }
        let cell_dim = config.affine_dim_of(&primal);
        cells.push(SpanCell {
            node,
            vertices: f.iter().filter(|&g| g < m).collect(),
            rays: f.iter().filter(|&g| g >= m).map(|g| g - m).collect(),
            primal,
            dim: (dim_p - cell_dim) as usize,
        });
    }
    cells.sort_by(|a, b| (a.dim, &a.vertices, &a.rays).cmp(&(b.dim, &b.vertices, &b.rays)));

    Ok(ExtendedTightSpan {
        base: sub.clone(),
        gamma: gamma.to_vec(),
        hasse,
        stats,
        cells,
        dual_vertices,
        dual_rays,
        lineality: lin_basis.iter().map(|v| primitive_canonical_sign(v)).collect(),
    })
}

fn counts<'a>(dims: impl Iterator<Item = usize> + 'a) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for d in dims {
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += 1;
    }
    out
}

impl ExtendedTightSpan {
    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// Cell counts by dimension. With `quotient` the dimensions are taken
    /// modulo the lineality space, otherwise in the ambient space.
    pub fn f_vector(&self, quotient: bool) -> Vec<usize> {
        let shift = if quotient { 0 } else { self.lineality_dim() };
        counts(self.cells.iter().map(|c| c.dim + shift))
    }

    pub fn bounded_f_vector(&self, quotient: bool) -> Vec<usize> {
        let shift = if quotient { 0 } else { self.lineality_dim() };
        counts(self.cells.iter().filter(|c| c.is_bounded()).map(|c| c.dim + shift))
    }

    /// Largest cell dimension modulo lineality; `None` for an empty span.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// Value of `h(p) − p·x` minimized over the configuration, with the
    /// minimizing point set.
    pub fn minimizers(&self, x: &[Rational]) -> (Rational, ElementSet) {
        let config = self.base.config();
        let h = &self.base.heights().expect("coordinatized").0;
        let vals: Vec<Rational> = config
            .points()
            .iter()
            .zip(h)
            .map(|(p, hp)| hp - crate::exactgeom::dot(p, x))
            .collect();
        let min = vals.iter().min().cloned().unwrap_or_else(Rational::zero);
        let set = ElementSet::from_indices(config.len(), (0..vals.len()).filter(|&i| vals[i] == min));
        (min, set)
    }

    pub fn to_json(&self, quotient: bool) -> serde_json::Value {
        let vertices: Vec<Vec<String>> =
            self.dual_vertices.iter().map(|v| v.iter().map(format_rational).collect()).collect();
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|c| serde_json::json!({"vertices": c.vertices, "rays": c.rays}))
            .collect();
        serde_json::json!({
            "vertices": vertices,
            "rays": int_rows_json(&self.dual_rays),
            "lineality": int_rows_json(&self.lineality),
            "cells": cells,
            "f_vector": self.f_vector(quotient),
            "bounded_f_vector": self.bounded_f_vector(quotient),
        })
    }
}
