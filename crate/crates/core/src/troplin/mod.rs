//! Tropical linear spaces of valuated matroids, computed as extended tight
//! spans of matroid subdivisions modulo `ℝ𝟙`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::closure::{ElementSet, GanterOptions};
use crate::exactgeom::linalg::{project_out, rank};
use crate::exactgeom::{int_rows_json, primitive_canonical_sign, rat, to_rational_vec, Rational};
use crate::matroid::{is_loopfree, loops, matroid_polytope, matroidal_witness, Matroid, Valuation};
use crate::subdivision::{coordinatize, regular_subdivision, ExtendedTightSpan, HeightFunction, Subdivision};
use crate::Error;

/// A valuation whose subdivision of the matroid polytope is matroidal.
#[derive(Clone, Debug)]
pub struct ValuatedMatroid {
    valuation: Valuation,
    subdivision: Subdivision,
}

impl ValuatedMatroid {
    pub fn new(valuation: Valuation) -> Result<Self, Error> {
        let config = matroid_polytope(valuation.matroid());
        let subdivision = regular_subdivision(&config, &HeightFunction(valuation.values().to_vec()))?;
        if let Some(w) = matroidal_witness(&subdivision) {
            return Err(Error::NotMatroidal(w));
        }
        Ok(Self { valuation, subdivision })
    }

    pub fn trivial(m: &Matroid) -> Self {
        Self::new(Valuation::zero(m)).expect("trivial subdivision of a matroid polytope")
    }

    pub fn matroid(&self) -> &Matroid {
        self.valuation.matroid()
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    /// `Σ_{M,v}`; point `i` is the `i`-th basis.
    pub fn subdivision(&self) -> &Subdivision {
        &self.subdivision
    }
}

/// Bases minimizing `v(B) − e_B·x`.
pub fn cell_at(vm: &ValuatedMatroid, x: &[Rational]) -> Result<Vec<ElementSet>, Error> {
    let m = vm.matroid();
    if x.len() != m.n() {
        return Err(Error::Invalid(format!("point of length {} for n = {}", x.len(), m.n())));
    }
    let vals: Vec<Rational> = m
        .bases()
        .iter()
        .zip(vm.valuation.values())
        .map(|(b, v)| b.iter().fold(v.clone(), |acc, i| acc - &x[i]))
        .collect();
    let min = vals.iter().min().expect("nonempty").clone();
    Ok(m.bases().iter().zip(&vals).filter(|(_, v)| **v == min).map(|(b, _)| b.clone()).collect())
}

#[derive(Clone, Debug)]
pub struct TropicalLinearSpace {
    source: ValuatedMatroid,
    span: ExtendedTightSpan,
    lineality: Vec<Vec<BigInt>>,
}

/// Builds `B(M, v)`. The excluded boundary faces are the faces `x_i = 0` of
/// the matroid polytope, which hold every cell with a loop.
pub fn tropical_linear_space(vm: &ValuatedMatroid, opts: GanterOptions) -> Result<TropicalLinearSpace, Error> {
    let m = vm.matroid();
    if !is_loopfree(m) {
        return Err(Error::Invalid(format!("matroid has loops {:?}", loops(m).to_vec())));
    }
    let k = m.bases().len();
    let gamma: Vec<ElementSet> = (0..m.n())
        .map(|i| ElementSet::from_indices(k, (0..k).filter(|&b| !m.bases()[b].contains(i))))
        .filter(|z| !z.is_empty())
        .collect();
    let span = coordinatize(&vm.subdivision, &gamma, opts)?;

    // lineality modulo 𝟙
    let ones = vec![rat(1); m.n()];
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for l in &span.lineality {
        let p = project_out(&to_rational_vec(l), std::slice::from_ref(&ones));
        let mut trial = basis.clone();
        trial.push(p.clone());
        if rank(&trial) > basis.len() {
            basis.push(p);
        }
    }
    debug_assert_eq!(basis.len() + 1, span.lineality.len());
    let lineality = basis.iter().map(|v| primitive_canonical_sign(v)).collect();
    Ok(TropicalLinearSpace { source: vm.clone(), span, lineality })
}

/// Tropical linear space of the trivial valuation.
pub fn bergman_fan(m: &Matroid, opts: GanterOptions) -> Result<TropicalLinearSpace, Error> {
    if !is_loopfree(m) {
        return Err(Error::Invalid(format!("matroid has loops {:?}", loops(m).to_vec())));
    }
    tropical_linear_space(&ValuatedMatroid::trivial(m), opts)
}

impl TropicalLinearSpace {
    pub fn source(&self) -> &ValuatedMatroid {
        &self.source
    }

    pub fn span(&self) -> &ExtendedTightSpan {
        &self.span
    }

    pub fn n(&self) -> usize {
        self.source.matroid().n()
    }

    pub fn rank(&self) -> usize {
        self.source.matroid().rank()
    }

    /// Basis of the lineality space in `ℝⁿ/ℝ𝟙` (sum-zero representatives).
    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// Dimension in `ℝⁿ/ℝ𝟙`.
    pub fn dim(&self) -> usize {
        self.span.dim().expect("loop-free matroids have a nonempty space") + self.lineality_dim()
    }

    /// With `quotient` cell dimensions are taken modulo the whole lineality
    /// space, otherwise in `ℝⁿ/ℝ𝟙`.
    pub fn f_vector(&self, quotient: bool) -> Vec<usize> {
        self.shifted(self.span.f_vector(true), quotient)
    }

    /// Without `quotient` a cell counts as bounded only if it has no rays
    /// and the lineality space is `ℝ𝟙`, so disconnected matroids have none.
    pub fn bounded_f_vector(&self, quotient: bool) -> Vec<usize> {
        if !quotient && self.lineality_dim() > 0 {
            return Vec::new();
        }
        self.span.bounded_f_vector(true)
    }

    fn shifted(&self, mut f: Vec<usize>, quotient: bool) -> Vec<usize> {
        if !quotient && !f.is_empty() {
            let mut out = vec![0; self.lineality_dim()];
            out.append(&mut f);
            return out;
        }
        f
    }

    /// Whether `x` lies in the space, read off the computed cells: the
    /// minimizer set of `x` must avoid every excluded face.
    pub fn contains(&self, x: &[Rational]) -> bool {
        let (_, argmin) = self.span.minimizers(x);
        !self.span.gamma.iter().any(|g| argmin.is_subset(g))
    }

    pub fn to_json(&self, quotient: bool) -> serde_json::Value {
        let report = fvector_report(self, quotient);
        let mut j = self.span.to_json(true);
        let obj = j.as_object_mut().expect("object");
        obj.insert("lineality".into(), int_rows_json(&self.lineality));
        for (k, v) in serde_json::to_value(report).expect("serializable").as_object().expect("object") {
            obj.insert(k.clone(), v.clone());
        }
        j
    }
}

fn binomial(a: i64, b: i64) -> u128 {
    if b == 0 {
        return 1;
    }
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    (0..b).fold(1u128, |acc, j| acc * (a - j) / (j + 1))
}

/// Conjectured maximal number of bounded `(i−1)`-cells of a tropical linear
/// space of rank `r` on `n` elements: `C(n−2i, r−i)·C(n−i−1, i−1)`.
pub fn speyer_bound(n: usize, r: usize, i: usize) -> u64 {
    let (n, r, i) = (n as i64, r as i64, i as i64);
    (binomial(n - 2 * i, r - i) * binomial(n - i - 1, i - 1)) as u64
}

/// Bounds for `i = 1..=r`.
pub fn speyer_bounds(n: usize, r: usize) -> Vec<u64> {
    (1..=r).map(|i| speyer_bound(n, r, i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVectorReport {
    pub n: usize,
    pub r: usize,
    pub lineality_dim: usize,
    pub f_vector: Vec<usize>,
    pub bounded_f_vector: Vec<usize>,
    pub speyer_bounds: Vec<u64>,
    pub within_bound: Vec<bool>,
}

impl FVectorReport {
    pub fn all_within_bound(&self) -> bool {
        self.within_bound.iter().all(|&b| b)
    }
}

pub fn fvector_report(tls: &TropicalLinearSpace, quotient: bool) -> FVectorReport {
    let bounded = tls.bounded_f_vector(false);
    let bounds = speyer_bounds(tls.n(), tls.rank());
    let len = bounds.len().max(bounded.len());
    let within_bound = (0..len)
        .map(|d| {
            let have = bounded.get(d).copied().unwrap_or(0) as u64;
            have <= bounds.get(d).copied().unwrap_or(0)
        })
        .collect();
    FVectorReport {
        n: tls.n(),
        r: tls.rank(),
        lineality_dim: tls.lineality_dim(),
        f_vector: tls.f_vector(quotient),
        bounded_f_vector: tls.bounded_f_vector(quotient),
        speyer_bounds: bounds,
        within_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{connected_components, corank_valuation, direct_sum};

    fn quartet() -> ValuatedMatroid {
        let u = Matroid::uniform(2, 4);
        ValuatedMatroid::new(Valuation::from_entries(&u, &[(vec![2, 3], rat(1))]).unwrap()).unwrap()
    }

    #[test]
    fn speyer_table() {
        assert_eq!(speyer_bounds(6, 3), vec![6, 6, 1]);
        assert_eq!(speyer_bounds(8, 3), vec![15, 20, 6]);
        assert_eq!(speyer_bounds(8, 4), vec![20, 30, 12, 1]);
        assert_eq!(speyer_bounds(4, 2), vec![2, 1]);
        for n in 3..12 {
            assert_eq!(speyer_bound(n, 2, 1), (n - 2) as u64);
        }
        assert_eq!(speyer_bounds(3, 2), vec![1, 0]);
        assert_eq!(speyer_bounds(1, 1), vec![1]);
        assert_eq!(speyer_bounds(3, 3), vec![0, 0, 0]);
    }

    #[test]
    fn cell_at_examples() {
        let u = Matroid::uniform(2, 4);
        assert_eq!(cell_at(&ValuatedMatroid::trivial(&u), &vec![rat(0); 4]).unwrap().len(), 6);
        let q = quartet();
        let c = cell_at(&q, &vec![rat(0); 4]).unwrap();
        assert_eq!(c.len(), 5);
        assert!(!c.contains(&ElementSet::from_indices(4, [2, 3])));
        let x = vec![rat(3), rat(-1), rat(2), rat(0)];
        let shifted: Vec<Rational> = x.iter().map(|v| v + crate::exactgeom::ratio(7, 3)).collect();
        assert_eq!(cell_at(&q, &x).unwrap(), cell_at(&q, &shifted).unwrap());
        assert!(cell_at(&q, &[rat(0)]).is_err());
    }

    #[test]
    fn quartet_tree() {
        let t = tropical_linear_space(&quartet(), GanterOptions::default()).unwrap();
        assert_eq!(t.f_vector(true), vec![2, 5]);
        assert_eq!(t.bounded_f_vector(true), vec![2, 1]);
        assert_eq!(t.dim() + 1, 2);
        assert_eq!(t.lineality_dim(), 0);
        let r = fvector_report(&t, true);
        assert_eq!(r.speyer_bounds, vec![2, 1]);
        assert!(r.all_within_bound());
    }

    #[test]
    fn two_blocks_corank_lift() {
        let u12 = Matroid::uniform(1, 2);
        let vm = ValuatedMatroid::new(corank_valuation(&direct_sum(&u12, &u12))).unwrap();
        let t = tropical_linear_space(&vm, GanterOptions::default()).unwrap();
        assert_eq!(t.bounded_f_vector(true), vec![2, 1]);
    }

    #[test]
    fn tripod() {
        let t = bergman_fan(&Matroid::uniform(2, 3), GanterOptions::default()).unwrap();
        assert_eq!(t.f_vector(true), vec![1, 3]);
        assert_eq!(t.bounded_f_vector(true), vec![1]);
        assert_eq!(t.span().dual_rays.len(), 3);
    }

    #[test]
    fn rank_one_is_a_point() {
        let t = bergman_fan(&Matroid::uniform(1, 4), GanterOptions::default()).unwrap();
        assert_eq!(t.dim(), 0);
        assert_eq!(t.f_vector(true), vec![1]);
    }

    #[test]
    fn disconnected_bergman_fan() {
        let u12 = Matroid::uniform(1, 2);
        let m = direct_sum(&u12, &u12);
        let t = bergman_fan(&m, GanterOptions::default()).unwrap();
        assert_eq!(t.lineality_dim(), 1);
        assert_eq!(t.lineality_dim() + 1, connected_components(&m).len());
        assert_eq!(t.dim() + 1, m.rank());
        assert_eq!(t.f_vector(true), vec![1]);
        assert_eq!(t.f_vector(false), vec![0, 1]);
        assert_eq!(t.bounded_f_vector(true), vec![1]);
        assert!(t.bounded_f_vector(false).is_empty());
        assert!(fvector_report(&t, true).all_within_bound());
    }

    #[test]
    fn loops_and_bad_valuations_are_rejected() {
        let loopy = Matroid::from_bases(3, &[vec![0, 1]]).unwrap();
        assert!(bergman_fan(&loopy, GanterOptions::default()).is_err());
        let u = Matroid::uniform(2, 4);
        let v = Valuation::from_entries(&u, &[(vec![0, 2], rat(1)), (vec![0, 3], rat(1))]).unwrap();
        assert!(matches!(ValuatedMatroid::new(v), Err(Error::NotMatroidal(_))));
    }

    #[test]
    fn membership_through_cells() {
        let t = tropical_linear_space(&quartet(), GanterOptions::default()).unwrap();
        assert!(t.contains(&vec![rat(0); 4]));
        // x_0 very negative: only bases avoiding 0 minimize, so 0 is a loop
        assert!(!t.contains(&[rat(-10), rat(0), rat(0), rat(0)]));
    }
}
