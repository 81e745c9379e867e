//! Matroids given by their bases, valuations on them, and the matroid
//! polytope tests used for matroid subdivisions.

mod census;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closure::{ClosureSystem, ElementSet, GroundSet};
use crate::exactgeom::{format_rational, hull, rat, PointConfig, Rational};
use crate::subdivision::Subdivision;
use crate::Error;

pub use census::{parse_census, CensusOrder};

/// Exchange is checked at construction up to this ground set size.
pub const EXCHANGE_CHECK_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    r: usize,
    bases: Vec<ElementSet>,
    lookup: HashSet<ElementSet>,
}

#[derive(Serialize, Deserialize)]
struct MatroidJson {
    n: usize,
    r: usize,
    bases: Vec<Vec<usize>>,
}

impl Matroid {
    pub fn new(n: usize, bases: Vec<ElementSet>) -> Result<Self, Error> {
        let m = Self::unchecked(n, bases)?;
        if n <= EXCHANGE_CHECK_LIMIT {
            m.check_exchange()?;
        }
        Ok(m)
    }

    fn unchecked(n: usize, mut bases: Vec<ElementSet>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::Invalid("matroid on an empty ground set".into()));
        }
        if bases.is_empty() {
            return Err(Error::Invalid("matroid without bases".into()));
        }
        if let Some(b) = bases.iter().find(|b| b.width() != n) {
            return Err(Error::Invalid(format!("basis {:?} is not a subset of [{n}]", b.to_vec())));
        }
        bases.sort();
        bases.dedup();
        let r = bases[0].count();
        if let Some(b) = bases.iter().find(|b| b.count() != r) {
            return Err(Error::Invalid(format!(
                "bases of different sizes: {:?} has {} elements, expected {r}",
                b.to_vec(),
                b.count()
            )));
        }
        let lookup = bases.iter().cloned().collect();
        Ok(Self { n, r, bases, lookup })
    }

    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Self, Error> {
        for b in bases {
            if let Some(&x) = b.iter().find(|&&x| x >= n) {
                return Err(Error::Invalid(format!("element {x} outside [{n}]")));
            }
            let set: HashSet<_> = b.iter().collect();
            if set.len() != b.len() {
                return Err(Error::Invalid(format!("basis {b:?} repeats an element")));
            }
        }
        Self::new(n, bases.iter().map(|b| ElementSet::from_indices(n, b.iter().copied())).collect())
    }

    pub fn uniform(r: usize, n: usize) -> Self {
        let bases = (0..1u64 << n)
            .filter(|m| m.count_ones() as usize == r)
            .map(|m| ElementSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
            .collect();
        Self::unchecked(n, bases).expect("uniform matroid")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        let raw: MatroidJson = serde_json::from_str(s)?;
        let m = Self::from_bases(raw.n, &raw.bases)?;
        if m.r != raw.r {
            return Err(Error::Invalid(format!("declared rank {} but bases have size {}", raw.r, m.r)));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatroidJson {
            n: self.n,
            r: self.r,
            bases: self.bases.iter().map(ElementSet::to_vec).collect(),
        })
        .expect("serializable")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// Bases in increasing bit-vector order.
    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn is_basis(&self, b: &ElementSet) -> bool {
        self.lookup.contains(b)
    }

    pub fn basis_index(&self, b: &ElementSet) -> Option<usize> {
        self.bases.binary_search(b).ok()
    }

    /// Strong basis exchange for every pair of bases.
    pub fn check_exchange(&self) -> Result<(), Error> {
        for b in &self.bases {
            for b2 in &self.bases {
                for x in b.difference(b2).iter() {
                    let without = {
                        let mut s = b.clone();
                        s.remove(x);
                        s
                    };
                    if !b2.difference(b).iter().any(|y| self.lookup.contains(&without.with(y))) {
                        return Err(Error::Invalid(format!(
                            "basis exchange fails for {:?}, {:?} at element {x}",
                            b.to_vec(),
                            b2.to_vec()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Validation for large ground sets: every edge of the matroid polytope
    /// must be parallel to some `e_i − e_j`.
    pub fn check_polytope_edges(&self) -> Result<(), Error> {
        let config = matroid_polytope(self);
        match bad_edge(&config, &ElementSet::full(config.len())) {
            None => Ok(()),
            Some((u, v, dir)) => Err(Error::Invalid(format!(
                "polytope edge between bases {:?} and {:?} has direction {}",
                self.bases[u].to_vec(),
                self.bases[v].to_vec(),
                fmt_vec(&dir)
            ))),
        }
    }
}

pub fn rank_of(m: &Matroid, a: &ElementSet) -> usize {
    m.bases.iter().map(|b| b.intersection(a).count()).max().unwrap_or(0)
}

/// Closure operator whose closed sets are the flats.
pub fn matroid_closure(m: &Matroid) -> ClosureSystem {
    let m = m.clone();
    let n = m.n;
    ClosureSystem::new(GroundSet::new(n).expect("n ≥ 1"), move |a: &ElementSet| {
        let ra = rank_of(&m, a);
        let mut out = a.clone();
        for x in 0..n {
            if !a.contains(x) && rank_of(&m, &a.with(x)) == ra {
                out.insert(x);
            }
        }
        out
    })
}

pub fn loops(m: &Matroid) -> ElementSet {
    let mut used = ElementSet::empty(m.n);
    for b in &m.bases {
        used.union_with(b);
    }
    used.complement()
}

pub fn is_loopfree(m: &Matroid) -> bool {
    loops(m).is_empty()
}

/// Point configuration `{e_B}` in basis order.
pub fn matroid_polytope(m: &Matroid) -> PointConfig {
    let points = m
        .bases
        .iter()
        .map(|b| (0..m.n).map(|i| rat(b.contains(i) as i64)).collect())
        .collect();
    PointConfig::new(m.n, points).expect("distinct bases")
}

/// Elements of `B ∪ B'` in ground-set order; `M1` first.
pub fn direct_sum(m1: &Matroid, m2: &Matroid) -> Matroid {
    let n = m1.n + m2.n;
    let mut bases = Vec::with_capacity(m1.bases.len() * m2.bases.len());
    for a in &m1.bases {
        for b in &m2.bases {
            bases.push(ElementSet::from_indices(n, a.iter().chain(b.iter().map(|x| x + m1.n))));
        }
    }
    Matroid::unchecked(n, bases).expect("direct sum of matroids")
}

/// Connected components, ordered by smallest element. Computed from the
/// fundamental graph of one basis: `x ∉ B` and `y ∈ B` are joined when
/// `B − y + x` is a basis.
pub fn connected_components(m: &Matroid) -> Vec<ElementSet> {
    let n = m.n;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let b = &m.bases[0];
    for y in b.iter() {
        let mut without = b.clone();
        without.remove(y);
        for x in (0..n).filter(|&x| !b.contains(x)) {
            if m.lookup.contains(&without.with(x)) {
                let (ry, rx) = (find(&mut parent, y), find(&mut parent, x));
                parent[ry] = rx;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let root = find(&mut parent, x);
        groups.entry(root).or_default().push(x);
    }
    let mut comps: Vec<ElementSet> =
        groups.into_values().map(|g| ElementSet::from_indices(n, g)).collect();
    comps.sort_by_key(|c| c.iter().next());
    comps
}

/// Rational values on the bases of a matroid, in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    matroid: Matroid,
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct ValuationJson {
    values: BTreeMap<String, serde_json::Value>,
}

impl Valuation {
    pub fn new(matroid: Matroid, values: Vec<Rational>) -> Result<Self, Error> {
        if values.len() != matroid.bases.len() {
            return Err(Error::Invalid(format!(
                "{} values for {} bases",
                values.len(),
                matroid.bases.len()
            )));
        }
        Ok(Self { matroid, values })
    }

    pub fn zero(matroid: &Matroid) -> Self {
        Self { values: vec![rat(0); matroid.bases.len()], matroid: matroid.clone() }
    }

    /// Sets `v(B) = value` for each listed basis, 0 elsewhere.
    pub fn from_entries(matroid: &Matroid, entries: &[(Vec<usize>, Rational)]) -> Result<Self, Error> {
        let mut v = Self::zero(matroid);
        for (b, value) in entries {
            let set = ElementSet::from_indices(matroid.n, b.iter().copied());
            let Some(i) = matroid.basis_index(&set) else {
                return Err(Error::Invalid(format!("{b:?} is not a basis")));
            };
            v.values[i] = value.clone();
        }
        Ok(v)
    }

    /// Parses `{"values": {"0,1,3": "p/q", …}}`. Every basis must be listed.
    pub fn from_json(matroid: &Matroid, s: &str) -> Result<Self, Error> {
        let raw: ValuationJson = serde_json::from_str(s)?;
        let mut values: Vec<Option<Rational>> = vec![None; matroid.bases.len()];
        for (key, value) in raw.values {
            let elems = key
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad basis key {key:?}")))?;
            if elems.iter().any(|&x| x >= matroid.n) {
                return Err(Error::Invalid(format!("basis key {key:?} outside [{}]", matroid.n)));
            }
            let set = ElementSet::from_indices(matroid.n, elems);
            let Some(i) = matroid.basis_index(&set) else {
                return Err(Error::Invalid(format!("{key:?} is not a basis")));
            };
            let q = match value {
                serde_json::Value::String(s) => crate::exactgeom::parse_rational(&s)?,
                serde_json::Value::Number(x) => match x.as_i64() {
                    Some(i) => rat(i),
                    None => return Err(Error::Parse(format!("non-integer number for {key:?}; use \"p/q\""))),
                },
                other => return Err(Error::Parse(format!("bad value {other} for {key:?}"))),
            };
            if values[i].replace(q).is_some() {
                return Err(Error::Invalid(format!("basis {key:?} listed twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Invalid(format!("no value for basis {}", key_of(&matroid.bases[i])))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(matroid.clone(), values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: BTreeMap<String, serde_json::Value> = self
            .matroid
            .bases
            .iter()
            .zip(&self.values)
            .map(|(b, v)| (key_of(b), serde_json::Value::from(format_rational(v))))
            .collect();
        serde_json::to_value(ValuationJson { values }).expect("serializable")
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, basis: &ElementSet) -> Option<&Rational> {
        self.matroid.basis_index(basis).map(|i| &self.values[i])
    }
}

fn key_of(b: &ElementSet) -> String {
    b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `v_M(B) = r − rank_M(B)` on the bases of `U_{r,n}`.
pub fn corank_valuation(m: &Matroid) -> Valuation {
    let u = Matroid::uniform(m.r, m.n);
    let values = u.bases.iter().map(|b| rat((m.r - rank_of(m, b)) as i64)).collect();
    Valuation { matroid: u, values }
}

/// An edge of a maximal cell that is not parallel to any `e_i − e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWitness {
    pub cell: usize,
    /// Point indices of the edge's endpoints.
    pub endpoints: (usize, usize),
    pub direction: Vec<Rational>,
}

impl fmt::Display for EdgeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cell {} has edge {}-{} with direction {}",
            self.cell,
            self.endpoints.0,
            self.endpoints.1,
            fmt_vec(&self.direction)
        )
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(","))
}

/// First edge (over cells in order, then vertex pairs) violating the edge
/// criterion, if any.
pub fn matroidal_witness(sub: &Subdivision) -> Option<EdgeWitness> {
    sub.maximal_cells().iter().enumerate().find_map(|(c, cell)| {
        bad_edge(sub.config(), cell).map(|(u, v, direction)| EdgeWitness { cell: c, endpoints: (u, v), direction })
    })
}

/// Whether every cell of `sub` is a matroid polytope, by its edges.
pub fn is_matroidal(sub: &Subdivision) -> bool {
    matroidal_witness(sub).is_none()
}

fn is_root_direction(d: &[Rational]) -> bool {
    let nz: Vec<&Rational> = d.iter().filter(|x| **x != rat(0)).collect();
    nz.len() == 2 && *nz[0] == -nz[1].clone()
        && (nz[0] == &rat(1) || nz[0] == &rat(-1))
}

fn bad_edge(config: &PointConfig, cell: &ElementSet) -> Option<(usize, usize, Vec<Rational>)> {
    let idx = cell.to_vec();
    let sub = PointConfig::new(config.dim(), idx.iter().map(|&i| config.point(i).to_vec()).collect())
        .expect("subset of a valid configuration");
    let h = hull(&sub);
    let cols = h.incidence.column_sets();
    let verts: Vec<usize> = h.vertices.iter().collect();
    for (a, &u) in verts.iter().enumerate() {
        for &v in &verts[a + 1..] {
            let common = cols[u].intersection(&cols[v]);
            let adjacent = !verts.iter().any(|&w| w != u && w != v && common.is_subset(&cols[w]));
            if !adjacent {
                continue;
            }
            let dir: Vec<Rational> = sub.point(v).iter().zip(sub.point(u)).map(|(a, b)| a - b).collect();
            if !is_root_direction(&dir) {
                return Some((idx[u], idx[v], dir));
            }
        }
    }
    None
}
