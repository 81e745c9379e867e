use std::str::FromStr;

use crate::closure::{ClosureSystem, ElementSet, GroundSet, HasseDiagram};
use crate::Error;

use super::{Hull, IncidenceMatrix, PointConfig};

/// Which side of the vertex–facet incidences serves as ground set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Encoding {
    #[default]
    Vertex,
    Facet,
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "vertex" => Ok(Self::Vertex),
            "facet" => Ok(Self::Facet),
            _ => Err(Error::Parse(format!("unknown encoding {s:?}, expected vertex or facet"))),
        }
    }
}

/// Face-lattice closure of a hull. In the vertex encoding the ground set
/// is the hull's vertices in increasing point order.
pub fn face_lattice_closure(hull: &Hull, encoding: Encoding) -> ClosureSystem {
    match encoding {
        Encoding::Vertex => polytope_closure_vertex(&hull.incidence.restrict_columns(&hull.vertices)),
        Encoding::Facet => polytope_closure_facet(&hull.incidence),
    }
}

/// Configuration points on the face represented by a closed set of
/// [`face_lattice_closure`].
pub fn face_points(hull: &Hull, encoding: Encoding, closed: &ElementSet) -> ElementSet {
    let n = hull.incidence.cols();
    match encoding {
        Encoding::Vertex => {
            let verts: Vec<usize> = hull.vertices.iter().collect();
            let chosen: Vec<usize> = closed.iter().map(|l| verts[l]).collect();
            if chosen.is_empty() {
                return ElementSet::empty(n);
            }
            hull.points_on(&ElementSet::from_indices(
                hull.incidence.rows().len(),
                (0..hull.incidence.rows().len()).filter(|&r| chosen.iter().all(|&v| hull.incidence.get(r, v))),
            ))
        }
        Encoding::Facet if hull.incidence.rows().is_empty() && !closed.is_empty() => ElementSet::empty(n),
        Encoding::Facet => hull.points_on(closed),
    }
}

/// Number of proper nonempty faces in each dimension `0..dim P`.
pub fn face_f_vector(config: &PointConfig, hull: &Hull, diagram: &HasseDiagram, encoding: Encoding) -> Vec<usize> {
    let top = config.affine_dim();
    let mut f = vec![0; top.max(0) as usize];
    for node in diagram.nodes() {
        let face = face_points(hull, encoding, node);
        let d = config.affine_dim_of(&face);
        if d >= 0 && d < top {
            f[d as usize] += 1;
        }
    }
    f
}

/// Face closure on the columns (vertices): the vertices of the smallest face
/// containing `A`. `∅` is closed; a set on no common facet closes to all
/// vertices.
pub fn polytope_closure_vertex(inc: &IncidenceMatrix) -> ClosureSystem {
    let n = inc.cols();
    let col_sets = inc.column_sets();
    let facet_count = inc.rows().len();
    ClosureSystem::new(GroundSet::new(n.max(1)).expect("nonempty"), move |a: &ElementSet| {
        if a.is_empty() {
            return a.clone();
        }
        let mut common = ElementSet::full(facet_count);
        for v in a.iter() {
            common.intersect_with(&col_sets[v]);
        }
        ElementSet::from_indices(n, (0..n).filter(|&v| common.is_subset(&col_sets[v])))
    })
}

/// Face closure on the rows (facets): all facets containing the face cut out
/// by the facets in `F`. When that face is empty, every facet contains it, so
/// the full facet set is the closed set of the empty face.
///
/// A point has no facets; its ground set is a single stand-in element whose
/// singleton is the empty face.
pub fn polytope_closure_facet(inc: &IncidenceMatrix) -> ClosureSystem {
    let m = inc.rows().len();
    let rows = inc.rows().to_vec();
    let cols = inc.cols();
    ClosureSystem::new(GroundSet::new(m.max(1)).expect("nonempty"), move |f: &ElementSet| {
        if f.is_empty() || m == 0 {
            return f.clone();
        }
        let mut face = ElementSet::full(cols);
        for r in f.iter() {
            face.intersect_with(&rows[r]);
        }
        ElementSet::from_indices(m, (0..m).filter(|&r| face.is_subset(&rows[r])))
    })
}
