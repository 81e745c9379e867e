//! Regular subdivisions of point configurations, their dual complexes and
//! extended tight spans.
//!
//! A subdivision `Σ` is stored by the point sets of its maximal cells and of
//! its maximal boundary cells (the cells of `Σ` inside facets of
//! `P = conv(points)`). The extended tight span with respect to a family `Γ`
//! of boundary faces is the closure system on `S_Σ = Σ^max ∪ Δ_Σ` whose
//! nonempty closed sets correspond to the cells of `Σ` not contained in any
//! member of `Γ`.

mod span;

use serde::{Deserialize, Serialize};

use crate::closure::{restrict_to_lower_set, ClosureSystem, ElementSet, GroundSet};
use crate::exactgeom::{hull, normalized_volume, rat, serde_rational_vec, Hull, PointConfig, Rational};
use crate::Error;

pub use span::{coordinatize, ExtendedTightSpan, SpanCell};

/// One rational height per configuration point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HeightFunction(#[serde(with = "serde_rational_vec")] pub Vec<Rational>);

impl HeightFunction {
    pub fn zero(n: usize) -> Self {
        Self(vec![rat(0); n])
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A polytopal subdivision of a point configuration.
#[derive(Clone, Debug)]
pub struct Subdivision {
    config: PointConfig,
    heights: Option<HeightFunction>,
    hull: Hull,
    dim: i64,
    maximal_cells: Vec<ElementSet>,
    boundary_facets: Vec<ElementSet>,
    carrier_facet: Vec<usize>,
}

#[derive(Serialize)]
struct SubdivisionJson {
    maximal_cells: Vec<Vec<usize>>,
    boundary_facets: Vec<Vec<usize>>,
    carrier_facets: Vec<usize>,
}

impl Subdivision {
    /// Builds a (not necessarily regular) subdivision from its maximal cells.
    /// Only the poset of its extended tight spans is available for such a
    /// subdivision; [`coordinatize`] requires heights.
    ///
    /// The cell volumes must add up to the volume of the configuration.
    pub fn from_cells(config: PointConfig, maximal_cells: Vec<ElementSet>) -> Result<Self, Error> {
        let h = hull(&config);
        let sub = Self::assemble(config, None, h, maximal_cells)?;
        let total: Rational = sub.maximal_cells.iter().map(|c| normalized_volume(&sub.config, c)).sum();
        if total != normalized_volume(&sub.config, &ElementSet::full(sub.config.len())) {
            return Err(Error::Invalid("cells do not tile the configuration".into()));
        }
        Ok(sub)
    }

    fn assemble(
        config: PointConfig,
        heights: Option<HeightFunction>,
        hull: Hull,
        mut maximal_cells: Vec<ElementSet>,
    ) -> Result<Self, Error> {
        let n = config.len();
        let dim = config.affine_dim();
        maximal_cells.sort();
        maximal_cells.dedup();
        for (i, c) in maximal_cells.iter().enumerate() {
            if c.width() != n {
                return Err(Error::Invalid(format!("cell {i} has the wrong width")));
            }
            if config.affine_dim_of(c) != dim {
                return Err(Error::Invalid(format!("cell {i} is not full-dimensional")));
            }
        }
        let mut boundary: Vec<(ElementSet, usize)> = Vec::new();
        for (f, row) in hull.incidence.rows().iter().enumerate() {
            for c in &maximal_cells {
                let tau = c.intersection(row);
                if tau.count() as i64 >= dim
                    && !boundary.iter().any(|(b, _)| b == &tau)
                    && config.affine_dim_of(&tau) == dim - 1
                {
                    boundary.push((tau, f));
                }
            }
        }
        boundary.sort();
        let (boundary_facets, carrier_facet) = boundary.into_iter().unzip();
        Ok(Self { config, heights, hull, dim, maximal_cells, boundary_facets, carrier_facet })
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    pub fn heights(&self) -> Option<&HeightFunction> {
        self.heights.as_ref()
    }

    /// Hull of the whole configuration.
    pub fn hull(&self) -> &Hull {
        &self.hull
    }

    /// Affine dimension of `P`.
    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn maximal_cells(&self) -> &[ElementSet] {
        &self.maximal_cells
    }

    pub fn boundary_facets(&self) -> &[ElementSet] {
        &self.boundary_facets
    }

    /// Index (into the hull's facets) of the facet of `P` carrying each
    /// boundary facet.
    pub fn carrier_facet(&self) -> &[usize] {
        &self.carrier_facet
    }

    /// Point sets of `S_Σ`: maximal cells first, then boundary facets.
    pub fn ground_cells(&self) -> Vec<ElementSet> {
        self.maximal_cells.iter().chain(&self.boundary_facets).cloned().collect()
    }

    /// Every nonempty cell of the subdivision as a point set, sorted.
    pub fn all_cells(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = Vec::new();
        for cell in &self.maximal_cells {
            let idx = cell.to_vec();
            let sub = PointConfig::new(
                self.config.dim(),
                idx.iter().map(|&i| self.config.point(i).to_vec()).collect(),
            )
            .expect("cell of a valid configuration");
            let h = hull(&sub);
            let faces = crate::exactgeom::polytope_closure_vertex(&h.incidence);
            let (diagram, _) =
                crate::closure::ganter_hasse(&faces, Default::default()).expect("small face lattice");
            for face in diagram.nodes().iter().filter(|f| !f.is_empty()) {
                out.push(ElementSet::from_indices(self.config.len(), face.iter().map(|l| idx[l])));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SubdivisionJson {
            maximal_cells: self.maximal_cells.iter().map(ElementSet::to_vec).collect(),
            boundary_facets: self.boundary_facets.iter().map(ElementSet::to_vec).collect(),
            carrier_facets: self.carrier_facet.clone(),
        })
        .expect("serializable")
    }
}

/// Regular subdivision induced by `heights`: the projections of the lower
/// facets of the lifted configuration `{(p, h(p))}`.
pub fn regular_subdivision(config: &PointConfig, heights: &HeightFunction) -> Result<Subdivision, Error> {
    if heights.len() != config.len() {
        return Err(Error::Invalid(format!(
            "{} heights for {} points",
            heights.len(),
            config.len()
        )));
    }
    let base = hull(config);
    let lifted = PointConfig::new(
        config.dim() + 1,
        config
            .points()
            .iter()
            .zip(&heights.0)
            .map(|(p, h)| p.iter().cloned().chain(std::iter::once(h.clone())).collect())
            .collect(),
    )?;
    let n = config.len();
    let cells: Vec<ElementSet> = if lifted.affine_dim() == config.affine_dim() {
        // heights are affine on the configuration
        vec![ElementSet::full(n)]
    } else {
        let lh = hull(&lifted);
        let last = config.dim();
        lh.hrep
            .facets
            .iter()
            .zip(lh.incidence.rows())
            .filter(|(f, _)| f.normal[last] > num_bigint::BigInt::from(0))
            .map(|(_, row)| row.clone())
            .collect()
    };
    Subdivision::assemble(config.clone(), Some(heights.clone()), base, cells)
}

/// The closure operator of the extended tight span of `sub` with respect to
/// `gamma`. Every member of `gamma` must be a nonempty point set lying in a
/// facet of `P`.
pub fn tight_span_closure(sub: &Subdivision, gamma: &[ElementSet]) -> Result<ClosureSystem, Error> {
    let n = sub.config.len();
    for (i, g) in gamma.iter().enumerate() {
        if g.width() != n || g.is_empty() {
            return Err(Error::Invalid(format!("gamma member {i} is empty or has the wrong width")));
        }
        if !sub.hull.incidence.rows().iter().any(|row| g.is_subset(row)) {
            return Err(Error::Invalid(format!(
                "gamma member {i} {:?} is not contained in any facet of the polytope",
                g.to_vec()
            )));
        }
    }
    let cells = sub.ground_cells();
    let size = cells.len();
    let ground = GroundSet::new(size)?;
    let base_cells = cells.clone();
    let base = ClosureSystem::new(ground, move |f: &ElementSet| {
        if f.is_empty() {
            return f.clone();
        }
        let inter = intersect_cells(&base_cells, f, n);
        ElementSet::from_indices(size, (0..size).filter(|&g| inter.is_subset(&base_cells[g])))
    });
    let gamma = gamma.to_vec();
    Ok(restrict_to_lower_set(&base, move |closed: &ElementSet| {
        if closed.is_empty() {
            return true;
        }
        let inter = intersect_cells(&cells, closed, n);
        !gamma.iter().any(|t| inter.is_subset(t))
    }))
}

pub(crate) fn intersect_cells(cells: &[ElementSet], f: &ElementSet, width: usize) -> ElementSet {
    let mut acc = ElementSet::full(width);
    for g in f.iter() {
        acc.intersect_with(&cells[g]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{ganter_hasse, GanterOptions};

    pub(crate) fn bent_segment() -> Subdivision {
        let c = PointConfig::from_ints(1, &[vec![-1], vec![0], vec![1]]).unwrap();
        regular_subdivision(&c, &HeightFunction::from_ints(&[1, 0, 1])).unwrap()
    }

    fn sets(n: usize, xs: &[&[usize]]) -> Vec<ElementSet> {
        xs.iter().map(|x| ElementSet::from_indices(n, x.iter().copied())).collect()
    }

    #[test]
    fn bent_segment_cells() {
        let s = bent_segment();
        assert_eq!(s.maximal_cells(), sets(3, &[&[0, 1], &[1, 2]]).as_slice());
        assert_eq!(s.boundary_facets(), sets(3, &[&[0], &[2]]).as_slice());
    }

    #[test]
    fn zero_heights_give_trivial_subdivision() {
        let c = PointConfig::from_ints(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let s = regular_subdivision(&c, &HeightFunction::zero(4)).unwrap();
        assert_eq!(s.maximal_cells(), &[ElementSet::full(4)]);
        assert_eq!(s.boundary_facets().len(), 4);
    }

    #[test]
    fn affine_heights_give_trivial_subdivision() {
        let c = PointConfig::from_ints(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let s = regular_subdivision(&c, &HeightFunction::from_ints(&[0, 2, 5, 3])).unwrap();
        assert_eq!(s.maximal_cells().len(), 1);
    }

    #[test]
    fn height_length_mismatch_is_rejected() {
        let c = PointConfig::from_ints(1, &[vec![0], vec![1]]).unwrap();
        assert!(regular_subdivision(&c, &HeightFunction::zero(3)).is_err());
    }

    #[test]
    fn bent_segment_closed_sets() {
        let s = bent_segment();
        // S = [σ1, σ2, γ1, γ2]
        let free = tight_span_closure(&s, &[]).unwrap();
        let (h, _) = ganter_hasse(&free, GanterOptions::default()).unwrap();
        let mut proper: Vec<Vec<usize>> =
            h.nodes().iter().filter(|n| !n.is_full()).map(ElementSet::to_vec).collect();
        proper.sort();
        assert_eq!(proper, vec![vec![], vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 3]]);

        let tight = tight_span_closure(&s, s.boundary_facets()).unwrap();
        let (h, _) = ganter_hasse(&tight, GanterOptions::default()).unwrap();
        let mut proper: Vec<Vec<usize>> =
            h.nodes().iter().filter(|n| !n.is_full()).map(ElementSet::to_vec).collect();
        proper.sort();
        assert_eq!(proper, vec![vec![], vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn gamma_outside_boundary_is_rejected() {
        let s = bent_segment();
        let interior = ElementSet::from_indices(3, [1]);
        let err = tight_span_closure(&s, &[interior]).unwrap_err();
        assert!(err.to_string().contains("not contained in any facet"));
        assert!(tight_span_closure(&s, &[ElementSet::empty(3)]).is_err());
    }

    #[test]
    fn square_trivial_subdivision_span() {
        let c = PointConfig::from_ints(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let s = regular_subdivision(&c, &HeightFunction::zero(4)).unwrap();
        let (h, _) = ganter_hasse(&tight_span_closure(&s, &[]).unwrap(), GanterOptions::default()).unwrap();
        // ∅, {σ}, 4 × {σ,γ}, 4 × {σ,γ,γ'}, full
        assert_eq!(h.node_count(), 11);
        let by_size = crate::closure::poset_statistics(&h, |_, n| n.count() as i64);
        assert_eq!(by_size, vec![1, 1, 4, 4, 1]);
    }

    #[test]
    fn non_regular_input_exposes_only_the_poset() {
        let c = PointConfig::from_ints(1, &[vec![-1], vec![0], vec![1]]).unwrap();
        let s = Subdivision::from_cells(c, sets(3, &[&[0, 1], &[1, 2]])).unwrap();
        assert!(s.heights().is_none());
        assert!(coordinatize(&s, &[], GanterOptions::default()).is_err());
        assert!(tight_span_closure(&s, &[]).is_ok());
    }
}
