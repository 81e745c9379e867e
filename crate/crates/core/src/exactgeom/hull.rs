use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::cone_hull;
use super::rational::{serde_rational_rows, Rational};
use crate::closure::ElementSet;
use crate::Error;

/// A finite list of pairwise distinct rational points of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    dim: usize,
    #[serde(with = "serde_rational_rows")]
    points: Vec<Vec<Rational>>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::Invalid("point configuration is empty".into()));
        }
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::Invalid(format!("point {i} has length {} but dim is {dim}", points[i].len())));
        }
        let mut sorted: Vec<&Vec<Rational>> = points.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("point configuration contains duplicate points".into()));
        }
        Ok(Self { dim, points })
    }

    pub fn from_ints(dim: usize, points: &[Vec<i64>]) -> Result<Self, Error> {
        Self::new(dim, points.iter().map(|p| p.iter().map(|&x| super::rat(x)).collect()).collect())
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        let raw: PointConfig = serde_json::from_str(s)?;
        Self::new(raw.dim, raw.points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Rational] {
        &self.points[i]
    }

    pub fn subset(&self, set: &ElementSet) -> Vec<&[Rational]> {
        set.iter().map(|i| self.points[i].as_slice()).collect()
    }

    /// Affine dimension of the points in `set`.
    pub fn affine_dim_of(&self, set: &ElementSet) -> i64 {
        super::linalg::affine_dim(set.iter().map(|i| self.points[i].as_slice()))
    }

    pub fn affine_dim(&self) -> i64 {
        self.affine_dim_of(&ElementSet::full(self.len()))
    }

    /// Indices sorted lexicographically by coordinates.
    pub fn lex_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.points[a].cmp(&self.points[b]));
        idx
    }

    /// Homogenized integer rows `(1, p)` scaled by the denominators.
    pub(crate) fn homogenized(&self) -> Vec<Vec<BigInt>> {
        self.points
            .iter()
            .map(|p| {
                let lcm = p.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                std::iter::once(lcm.clone())
                    .chain(p.iter().map(|q| q.numer() * &lcm / q.denom()))
                    .collect()
            })
            .collect()
    }
}

/// Affine constraint `normal·x + offset ≥ 0` (or `= 0` for equations),
/// i.e. `normal·x ≥ -offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl AffineForm {
    fn from_homogeneous(a: Vec<BigInt>) -> Self {
        let mut it = a.into_iter();
        let offset = it.next().expect("homogeneous form has a constant term");
        Self { normal: it.collect(), offset }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(self.offset.clone());
        for (a, xi) in self.normal.iter().zip(x) {
            if !a.is_zero() {
                acc += xi * a;
            }
        }
        acc
    }
}

/// Facet description of the convex hull of a configuration.
#[derive(Clone, Debug)]
pub struct HRep {
    /// Inward normals: every configuration point satisfies `eval ≥ 0`.
    pub facets: Vec<AffineForm>,
    /// Affine equations cutting out the affine hull.
    pub equations: Vec<AffineForm>,
}

/// Bit matrix with one row per facet and one column per configuration point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    cols: usize,
    rows: Vec<ElementSet>,
}

impl IncidenceMatrix {
    pub fn new(cols: usize, rows: Vec<ElementSet>) -> Self {
        assert!(rows.iter().all(|r| r.width() == cols));
        Self { cols, rows }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[ElementSet] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &ElementSet {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].contains(c)
    }

    /// For each column, the set of rows containing it.
    pub fn column_sets(&self) -> Vec<ElementSet> {
        let mut cols = vec![ElementSet::empty(self.rows.len()); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter() {
                cols[c].insert(r);
            }
        }
        cols
    }

    /// Keeps only the given columns, renumbered in increasing order.
    pub fn restrict_columns(&self, keep: &ElementSet) -> Self {
        let idx: Vec<usize> = keep.iter().collect();
        let rows = self
            .rows
            .iter()
            .map(|row| ElementSet::from_indices(idx.len(), idx.iter().enumerate().filter(|(_, &c)| row.contains(c)).map(|(i, _)| i)))
            .collect();
        Self { cols: idx.len(), rows }
    }
}

/// Result of [`hull`].
#[derive(Clone, Debug)]
pub struct Hull {
    pub hrep: HRep,
    pub incidence: IncidenceMatrix,
    pub vertices: ElementSet,
}

impl Hull {
    /// Points lying on every facet of `facets`; all points for the empty set.
    pub fn points_on(&self, facets: &ElementSet) -> ElementSet {
        let mut acc = ElementSet::full(self.incidence.cols());
        for f in facets.iter() {
            acc.intersect_with(self.incidence.row(f));
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let form = |f: &AffineForm| {
            serde_json::json!({
                "normal": f.normal.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "offset": f.offset.to_string(),
            })
        };
        serde_json::json!({
            "facets": self.hrep.facets.iter().map(form).collect::<Vec<_>>(),
            "equations": self.hrep.equations.iter().map(form).collect::<Vec<_>>(),
            "incidence": self.incidence.rows().iter().map(ElementSet::to_vec).collect::<Vec<_>>(),
            "vertices": self.vertices.to_vec(),
        })
    }
}

/// Exact convex hull of `config`: facets, equations of the affine hull,
/// facet–point incidences and vertex flags.
pub fn hull(config: &PointConfig) -> Hull {
    let gens = config.homogenized();
    let order = config.lex_order();
    let cone = cone_hull(&gens, config.dim() + 1, &order);
    let mut facets: Vec<AffineForm> = cone.facets.into_iter().map(AffineForm::from_homogeneous).collect();
    let equations: Vec<AffineForm> =
        cone.equations.into_iter().map(AffineForm::from_homogeneous).collect();

    let n = config.len();
    let mut rows: Vec<ElementSet> = facets
        .iter()
        .map(|f| {
            let mut row = ElementSet::empty(n);
            for (i, g) in gens.iter().enumerate() {
                let mut acc = g[0].clone() * &f.offset;
                for (a, x) in f.normal.iter().zip(&g[1..]) {
                    acc += a * x;
                }
                debug_assert!(!acc.is_negative(), "point {i} violates a facet");
                if acc.is_zero() {
                    row.insert(i);
                }
            }
            row
        })
        .collect();
    // a zero-dimensional hull yields the homogenizing form `1 ≥ 0`, tight nowhere
    let mut keep = rows.iter().map(|r| !r.is_empty());
    facets.retain(|_| keep.next().unwrap());
    rows.retain(|r| !r.is_empty());
    let incidence = IncidenceMatrix::new(n, rows);

    let col_sets = incidence.column_sets();
    let mut vertices = ElementSet::empty(n);
    for (p, facets_of_p) in col_sets.iter().enumerate() {
        let mut face = ElementSet::full(n);
        for f in facets_of_p.iter() {
            face.intersect_with(incidence.row(f));
        }
        if face.count() == 1 {
            vertices.insert(p);
        }
    }

    Hull { hrep: HRep { facets, equations }, incidence, vertices }
}

impl std::fmt::Display for AffineForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.normal.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]·x + {}", terms.join(","), self.offset)
    }
}
