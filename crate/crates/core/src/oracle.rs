//! Brute-force reference implementations for tests. They share only
//! [`Rational`] and [`ElementSet`] with the rest of the crate and are meant
//! for small inputs.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::closure::{ClosureSystem, ElementSet};
use crate::exactgeom::Rational;
use crate::matroid::{Matroid, Valuation};

/// Node sets and covering pairs, each as sorted element lists.
pub type BrutePoset = (BTreeSet<Vec<usize>>, BTreeSet<(Vec<usize>, Vec<usize>)>);

/// Closes all `2^|S|` subsets and derives the covering relation by pairwise
/// inclusion.
pub fn brute_closed_sets(system: &ClosureSystem) -> BrutePoset {
    let n = system.size();
    assert!(n <= 20, "brute force limited to small ground sets");
    let mut closed: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let a = ElementSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        closed.insert(system.close(&a).to_vec());
    }
    let sets: Vec<(Vec<usize>, u32)> =
        closed.iter().map(|s| (s.clone(), s.iter().fold(0u32, |m, &i| m | 1 << i))).collect();
    let strictly_below = |a: u32, b: u32| a != b && a & !b == 0;
    let mut covers = BTreeSet::new();
    for (sa, a) in &sets {
        for (sb, b) in &sets {
            if strictly_below(*a, *b) && !sets.iter().any(|(_, c)| strictly_below(*a, *c) && strictly_below(*c, *b)) {
                covers.insert((sa.clone(), sb.clone()));
            }
        }
    }
    (closed, covers)
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Row echelon form by Gaussian elimination; returns reduced rows and pivot
/// columns.
fn echelon(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn kernel(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = echelon(rows, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Facets of `conv(points)` found by trying every hyperplane (inside the
/// affine hull) through `dim` of the points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteHull {
    pub affine_dim: i64,
    /// Point sets of the facets, sorted.
    pub facets: Vec<ElementSet>,
    /// Inward normal for each facet, in the direction space of the affine
    /// hull.
    pub normals: Vec<Vec<Rational>>,
}

pub fn brute_hull(points: &[Vec<Rational>]) -> BruteHull {
    let n = points.len();
    assert!(n >= 1);
    let d = points[0].len();
    let diffs: Vec<Vec<Rational>> = points.iter().map(|p| sub(p, &points[0])).collect();
    let (dir_basis, _) = echelon(diffs, d);
    let k = dir_basis.len();
    let mut found: Vec<(ElementSet, Vec<Rational>)> = Vec::new();
    if k == 0 {
        return BruteHull { affine_dim: 0, facets: vec![], normals: vec![] };
    }
    // all k-subsets
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        // a = Σ c_j basis_j with (p_s − p_0)·a = 0 on the subset
        let base = &points[idx[0]];
        let rows: Vec<Vec<Rational>> = idx[1..]
            .iter()
            .map(|&s| {
                let diff = sub(&points[s], base);
                dir_basis.iter().map(|l| dot(&diff, l)).collect()
            })
            .collect();
        let ker = kernel(rows, k);
        if ker.len() == 1 {
            let c = &ker[0];
            let mut a = vec![Rational::zero(); d];
            for (cj, l) in c.iter().zip(&dir_basis) {
                for (ai, li) in a.iter_mut().zip(l) {
                    *ai += cj * li;
                }
            }
            let vals: Vec<Rational> = points.iter().map(|p| dot(&a, &sub(p, base))).collect();
            let pos = vals.iter().any(|v| v.is_positive());
            let neg = vals.iter().any(|v| v.is_negative());
            if !(pos && neg) {
                if neg {
                    a = a.iter().map(|x| -x).collect();
                }
                let on = ElementSet::from_indices(n, (0..n).filter(|&i| vals[i].is_zero()));
                if !found.iter().any(|(f, _)| *f == on) {
                    found.push((on, a));
                }
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                found.sort_by(|a, b| a.0.cmp(&b.0));
                let (facets, normals) = found.into_iter().unzip();
                return BruteHull { affine_dim: k as i64, facets, normals };
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Maximal cells of the regular subdivision, from the lower facets of the
/// lifted configuration.
pub fn brute_regular_subdivision(points: &[Vec<Rational>], heights: &[Rational]) -> Vec<ElementSet> {
    let lifted: Vec<Vec<Rational>> =
        points.iter().zip(heights).map(|(p, h)| p.iter().cloned().chain([h.clone()]).collect()).collect();
    let base = brute_hull(points);
    let up = brute_hull(&lifted);
    if up.affine_dim == base.affine_dim {
        return vec![ElementSet::full(points.len())];
    }
    let last = points[0].len();
    let mut cells: Vec<ElementSet> = up
        .facets
        .into_iter()
        .zip(up.normals)
        .filter(|(_, a)| a[last].is_positive())
        .map(|(f, _)| f)
        .collect();
    cells.sort();
    cells
}

/// Bases minimizing `v(B) − e_B·x`, computed directly.
pub fn brute_cell_at(v: &Valuation, x: &[Rational]) -> Vec<ElementSet> {
    let vals: Vec<Rational> = v
        .matroid()
        .bases()
        .iter()
        .zip(v.values())
        .map(|(b, val)| val - b.iter().fold(Rational::zero(), |acc, i| acc + &x[i]))
        .collect();
    let min = vals.iter().min().cloned().expect("nonempty");
    v.matroid().bases().iter().zip(&vals).filter(|(_, w)| **w == min).map(|(b, _)| b.clone()).collect()
}

/// `x ∈ B(M, v)` iff the minimizing bases cover the ground set.
pub fn brute_tls_membership(v: &Valuation, x: &[Rational]) -> bool {
    let n = v.matroid().n();
    brute_cell_at(v, x).iter().fold(ElementSet::empty(n), |acc, b| acc.union(b)).is_full()
}

/// Whether `x ∈ conv(vertices) + cone(rays) + span(lineality)`, by an exact
/// phase-one simplex with Bland's rule.
pub fn point_in_cell(
    x: &[Rational],
    vertices: &[Vec<Rational>],
    rays: &[Vec<Rational>],
    lineality: &[Vec<Rational>],
) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let d = x.len();
    // columns: λ (vertices), μ (rays), ν⁺, ν⁻
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for v in vertices {
        cols.push(v.iter().cloned().chain([Rational::one()]).collect());
    }
    for r in rays {
        cols.push(r.iter().cloned().chain([Rational::zero()]).collect());
    }
    for l in lineality {
        cols.push(l.iter().cloned().chain([Rational::zero()]).collect());
        cols.push(l.iter().map(|t| -t).chain([Rational::zero()]).collect());
    }
    let mut b: Vec<Rational> = x.to_vec();
    b.push(Rational::one());
    feasible(&cols, &b, d + 1)
}

/// `A y = b, y ≥ 0` feasibility; `cols` are the columns of `A`.
fn feasible(cols: &[Vec<Rational>], b: &[Rational], m: usize) -> bool {
    let nv = cols.len();
    // tableau rows: [A | I | b], signs fixed so b ≥ 0
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let s = |q: &Rational| if flip { -q.clone() } else { q.clone() };
            let mut row: Vec<Rational> = cols.iter().map(|c| s(&c[i])).collect();
            row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row.push(s(&b[i]));
            row
        })
        .collect();
    let width = nv + m;
    let mut basis: Vec<usize> = (nv..nv + m).collect();
    loop {
        // reduced costs of phase-one objective (sum of artificials)
        let cost = |j: usize| -> Rational {
            let cj = if j >= nv { Rational::one() } else { Rational::zero() };
            let mut z = Rational::zero();
            for (i, &bi) in basis.iter().enumerate() {
                if bi >= nv {
                    z += &t[i][j];
                }
            }
            cj - z
        };
        let Some(enter) = (0..width).find(|&j| !basis.contains(&j) && cost(j).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            break;
        };
        let inv = Rational::one() / &t[r][enter];
        for q in t[r].iter_mut() {
            *q *= &inv;
        }
        let pr = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (q, p) in row.iter_mut().zip(&pr) {
                    *q -= &f * p;
                }
            }
        }
        basis[r] = enter;
    }
    basis.iter().enumerate().all(|(i, &bi)| bi < nv || t[i][width].is_zero())
}

fn masks(n: usize, r: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == r).collect()
}

fn exchange_closed(bases: &[u32]) -> bool {
    let has = |m: u32| bases.binary_search(&m).is_ok();
    bases.iter().all(|&a| {
        bases.iter().all(|&b| {
            let mut diff = a & !b;
            while diff != 0 {
                let x = diff & diff.wrapping_neg();
                diff &= diff - 1;
                let mut other = b & !a;
                let mut ok = false;
                while other != 0 {
                    let y = other & other.wrapping_neg();
                    other &= other - 1;
                    if has((a & !x) | y) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return false;
                }
            }
            true
        })
    })
}

/// Every matroid of rank `1..=n` on `[n]` (labelled, not up to isomorphism),
/// by testing all families of `r`-subsets for basis exchange.
pub fn enumerate_matroids(n: usize) -> Vec<Matroid> {
    assert!((1..=5).contains(&n), "exhaustive enumeration only for n ≤ 5");
    let mut out = Vec::new();
    for r in 1..=n {
        let all = masks(n, r);
        for pick in 1u64..(1u64 << all.len()) {
            let fam: Vec<u32> = (0..all.len()).filter(|i| pick >> i & 1 == 1).map(|i| all[i]).collect();
            if exchange_closed(&fam) {
                let bases: Vec<ElementSet> =
                    fam.iter().map(|&m| ElementSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1))).collect();
                out.push(Matroid::new(n, bases).expect("exchange-closed family"));
            }
        }
    }
    out
}

/// Lines `"n r bits"` (lexicographic census order) of the bundled
/// mini-census: every matroid on at most five elements, the uniform
/// matroids on six, and a few direct sums on six.
pub fn mini_census_lines() -> Vec<String> {
    let lex = |n: usize, r: usize, bases: &[u32]| -> String {
        let subs: Vec<u32> = lex_subsets(n, r);
        let bits: String = subs.iter().map(|m| if bases.contains(m) { '1' } else { '0' }).collect();
        format!("{n} {r} {bits}")
    };
    let as_masks = |m: &Matroid| -> Vec<u32> {
        m.bases().iter().map(|b| b.iter().fold(0u32, |acc, i| acc | 1 << i)).collect()
    };
    let mut out = Vec::new();
    for n in 1..=5 {
        for m in enumerate_matroids(n) {
            out.push(lex(n, m.rank(), &as_masks(&m)));
        }
    }
    for r in 1..=6 {
        out.push(lex(6, r, &masks(6, r)));
    }
    // direct sums given as lists of uniform blocks (r, n)
    let sums: [&[(usize, usize)]; 6] = [
        &[(1, 2), (2, 4)],
        &[(1, 3), (1, 3)],
        &[(2, 3), (2, 3)],
        &[(1, 2), (1, 2), (1, 2)],
        &[(1, 1), (2, 5)],
        &[(2, 4), (1, 1), (1, 1)],
    ];
    for blocks in sums {
        let mut fam: Vec<u32> = vec![0];
        let mut offset = 0;
        let mut rank = 0;
        for &(r, n) in blocks {
            fam = fam.iter().flat_map(|&a| masks(n, r).into_iter().map(move |b| a | b << offset)).collect();
            offset += n;
            rank += r;
        }
        out.push(lex(offset, rank, &fam));
    }
    out
}

fn lex_subsets(n: usize, r: usize) -> Vec<u32> {
    let mut v = masks(n, r);
    // bit reversal turns lexicographic order of sorted tuples into
    // decreasing numeric order
    let key = |m: &u32| std::cmp::Reverse((0..n).fold(0u32, |acc, i| acc | ((m >> i) & 1) << (n - 1 - i)));
    v.sort_by_key(key);
    v
}

/// Connected components as the minimal nonempty separators `A` with
/// `rank(A) + rank([n] − A) = r`.
pub fn brute_components(m: &Matroid) -> Vec<ElementSet> {
    let n = m.n();
    assert!(n <= 16);
    let bases: Vec<u32> =
        m.bases().iter().map(|b| b.iter().fold(0u32, |acc, i| acc | 1 << i)).collect();
    let rank = |a: u32| bases.iter().map(|b| (a & b).count_ones()).max().unwrap_or(0);
    let full = (1u32 << n) - 1;
    let r = rank(full);
    let seps: Vec<u32> = (1..=full).filter(|&a| rank(a) + rank(full & !a) == r).collect();
    let minimal: Vec<u32> =
        seps.iter().copied().filter(|&a| !seps.iter().any(|&b| b != a && b & !a == 0)).collect();
    let mut comps: Vec<ElementSet> =
        minimal.iter().map(|&a| ElementSet::from_indices(n, (0..n).filter(|i| a >> i & 1 == 1))).collect();
    comps.sort_by_key(|c| c.iter().next());
    comps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn identity_gives_boolean_lattice() {
        let (nodes, covers) = brute_closed_sets(&ClosureSystem::identity(3).unwrap());
        assert_eq!((nodes.len(), covers.len()), (8, 12));
    }

    #[test]
    fn hulls() {
        let sq = brute_hull(&pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]));
        assert_eq!(sq.facets.len(), 4);
        let seg = brute_hull(&pts(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]]));
        assert_eq!((seg.affine_dim, seg.facets.len()), (1, 2));
        let d24 = brute_hull(&pts(&[
            &[1, 1, 0, 0],
            &[1, 0, 1, 0],
            &[1, 0, 0, 1],
            &[0, 1, 1, 0],
            &[0, 1, 0, 1],
            &[0, 0, 1, 1],
        ]));
        assert_eq!((d24.affine_dim, d24.facets.len()), (3, 8));
    }

    #[test]
    fn lower_hull_of_bent_segment() {
        let cells = brute_regular_subdivision(&pts(&[&[-1], &[0], &[1]]), &[rat(1), rat(0), rat(1)]);
        assert_eq!(cells.iter().map(ElementSet::to_vec).collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn simplex_membership() {
        let square = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(point_in_cell(&[crate::exactgeom::ratio(1, 2), rat(1)], &square, &[], &[]));
        assert!(!point_in_cell(&[rat(2), rat(0)], &square, &[], &[]));
        let ray = pts(&[&[1, 0]]);
        assert!(point_in_cell(&[rat(5), rat(1)], &square, &ray, &[]));
        assert!(!point_in_cell(&[rat(-5), rat(1)], &square, &ray, &[]));
        let line = pts(&[&[0, 1]]);
        assert!(point_in_cell(&[rat(1), rat(-7)], &pts(&[&[1, 0]]), &[], &line));
        assert!(!point_in_cell(&[rat(1), rat(0)], &[], &ray, &[]));
    }

    #[test]
    fn matroid_counts() {
        // labelled matroids on [2] with rank ≥ 1: U12, {0}, {1}, U22
        assert_eq!(enumerate_matroids(2).len(), 4);
        let three = enumerate_matroids(3);
        assert!(three.iter().all(|m| m.check_exchange().is_ok()));
    }

    #[test]
    fn lex_subset_order() {
        assert_eq!(lex_subsets(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn mini_census_decodes() {
        for l in mini_census_lines() {
            let t: Vec<&str> = l.split(' ').collect();
            let (n, r) = (t[0].parse().unwrap(), t[1].parse().unwrap());
            crate::matroid::parse_census(t[2], n, r, crate::matroid::CensusOrder::Lex).unwrap();
        }
    }

    #[test]
    fn components_by_separators() {
        let u12 = Matroid::uniform(1, 2);
        let m = crate::matroid::direct_sum(&u12, &u12);
        assert_eq!(brute_components(&m).len(), 2);
        assert_eq!(brute_components(&Matroid::uniform(2, 4)).len(), 1);
    }
}
