use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::dd::cone_hull;
use super::linalg::project_out;
use super::rational::{
    int_rows_json, primitive, primitive_canonical_sign, serde_rational_rows, to_rational_vec, Rational,
};
use super::{Hull, IncidenceMatrix, PointConfig};
use crate::closure::{ClosureSystem, ElementSet, GroundSet};
use crate::Error;

/// A polyhedral fan given by its rays, its maximal cones (as ray index sets)
/// and a basis of its lineality space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<ElementSet>,
    lineality: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    dim: usize,
    #[serde(with = "serde_rational_rows")]
    rays: Vec<Vec<Rational>>,
    cones: Vec<Vec<usize>>,
    #[serde(default, with = "serde_rational_rows")]
    lineality: Vec<Vec<Rational>>,
}

impl Fan {
    /// Validates and normalizes: rays become primitive integer vectors,
    /// lineality generators get a canonical sign.
    pub fn new(
        dim: usize,
        rays: Vec<Vec<Rational>>,
        cones: Vec<Vec<usize>>,
        lineality: Vec<Vec<Rational>>,
    ) -> Result<Self, Error> {
        if rays.iter().chain(&lineality).any(|r| r.len() != dim) {
            return Err(Error::Invalid("fan vector of wrong length".into()));
        }
        if super::linalg::rank(&lineality) != lineality.len() {
            return Err(Error::Invalid("lineality generators are dependent".into()));
        }
        let r = rays.len();
        let mut cone_sets = Vec::with_capacity(cones.len());
        for c in &cones {
            if let Some(&bad) = c.iter().find(|&&i| i >= r) {
                return Err(Error::Invalid(format!("cone references missing ray {bad}")));
            }
            cone_sets.push(ElementSet::from_indices(r, c.iter().copied()));
        }
        for (i, a) in cone_sets.iter().enumerate() {
            for (j, b) in cone_sets.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    return Err(Error::Invalid(format!("maximal cone {i} is contained in cone {j}")));
                }
            }
        }
        let fan = Self {
            dim,
            rays: rays.iter().map(|v| primitive(&project_out(v, &lineality))).collect(),
            cones: cone_sets,
            lineality: lineality.iter().map(|v| primitive_canonical_sign(v)).collect(),
        };
        if fan.rays.iter().any(|v| v.iter().all(|x| x == &BigInt::from(0))) {
            return Err(Error::Invalid("ray lies in the lineality space".into()));
        }
        for (i, c) in fan.cones.iter().enumerate() {
            let local = fan.cone_incidence(c);
            // a ray is extreme iff it is the only ray on the facets through it
            let cols = local.column_sets();
            for (pos, facets_of) in cols.iter().enumerate() {
                let mut face = ElementSet::full(local.cols());
                for f in facets_of.iter() {
                    face.intersect_with(local.row(f));
                }
                if face.count() != 1 {
                    return Err(Error::Invalid(format!("cone {i}: ray at position {pos} is not extreme")));
                }
            }
        }
        Ok(fan)
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        let raw: FanJson = serde_json::from_str(s)?;
        Self::new(raw.dim, raw.rays, raw.cones, raw.lineality)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "rays": int_rows_json(&self.rays),
            "cones": self.cones.iter().map(ElementSet::to_vec).collect::<Vec<_>>(),
            "lineality": int_rows_json(&self.lineality),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn cones(&self) -> &[ElementSet] {
        &self.cones
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// Dimension of the cone spanned by `rays` together with the lineality
    /// space.
    pub fn cone_dim(&self, rays: &ElementSet) -> usize {
        let gens: Vec<Vec<Rational>> = rays
            .iter()
            .filter(|&i| i < self.rays.len())
            .map(|i| to_rational_vec(&self.rays[i]))
            .chain(self.lineality.iter().map(|l| to_rational_vec(l)))
            .collect();
        super::linalg::rank(&gens)
    }

    /// Incidences between the facets of a cone and its rays (columns in
    /// increasing ray order).
    fn cone_incidence(&self, cone: &ElementSet) -> IncidenceMatrix {
        let members: Vec<usize> = cone.to_vec();
        let mut gens: Vec<Vec<BigInt>> = members.iter().map(|&i| self.rays[i].clone()).collect();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        let order: Vec<usize> = (0..gens.len()).collect();
        let h = cone_hull(&gens, self.dim, &order);
        let rows = h
            .facets
            .iter()
            .map(|a| {
                ElementSet::from_indices(
                    members.len(),
                    (0..members.len()).filter(|&j| super::rational::int_dot(a, &gens[j]) == BigInt::from(0)),
                )
            })
            .collect();
        IncidenceMatrix::new(members.len(), rows)
    }
}

/// Face-lattice closure of a fan on `rays ∪ {∞}`. The artificial element
/// `∞` (index `rays.len()`) makes the closure of a ray set lying in no
/// common cone the full ground set.
pub fn fan_closure(fan: &Fan) -> ClosureSystem {
    let r = fan.rays.len();
    let size = r + 1;
    let cones: Vec<(Vec<usize>, ElementSet, Vec<ElementSet>)> = fan
        .cones
        .iter()
        .map(|c| {
            let inc = fan.cone_incidence(c);
            (c.to_vec(), c.clone(), inc.rows().to_vec())
        })
        .collect();
    ClosureSystem::new(GroundSet::new(size).expect("nonempty"), move |f: &ElementSet| {
        if f.is_empty() {
            return f.clone();
        }
        if f.contains(r) {
            return ElementSet::full(size);
        }
        let mut rays_only = ElementSet::empty(r);
        for i in f.iter() {
            rays_only.insert(i);
        }
        let Some((members, _, facets)) = cones.iter().find(|(_, set, _)| rays_only.is_subset(set)) else {
            return ElementSet::full(size);
        };
        let local = ElementSet::from_indices(
            members.len(),
            members.iter().enumerate().filter(|(_, &g)| f.contains(g)).map(|(l, _)| l),
        );
        let mut face = ElementSet::full(members.len());
        for row in facets.iter().filter(|row| local.is_subset(row)) {
            face.intersect_with(row);
        }
        ElementSet::from_indices(size, face.iter().map(|l| members[l]))
    })
}

/// Normal fan of the hull of `config`: one ray per facet (outward normal),
/// one maximal cone per vertex, lineality spanned by the equation normals.
pub fn normal_fan(config: &PointConfig, hull: &Hull) -> Result<Fan, Error> {
    let lineality: Vec<Vec<Rational>> =
        hull.hrep.equations.iter().map(|e| to_rational_vec(&e.normal)).collect();
    let rays: Vec<Vec<Rational>> = hull
        .hrep
        .facets
        .iter()
        .map(|f| f.normal.iter().map(|x| Rational::from_integer(-x)).collect())
        .collect();
    let col_sets = hull.incidence.column_sets();
    let cones: Vec<Vec<usize>> = hull.vertices.iter().map(|v| col_sets[v].to_vec()).collect();
    Fan::new(config.dim(), rays, cones, lineality)
}
