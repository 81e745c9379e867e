//! Double description method for the facets of a finitely generated cone.
//!
//! The facets of `cone(g_1, .., g_m)` are the extreme rays of the dual cone
//! `{a : a·g_j ≥ 0}`. We first restrict to a coordinate subspace on which the
//! generators have full column rank, so that the dual cone is pointed, then
//! add the constraints one at a time starting from a simplicial cone.
//! Adjacency between rays is decided combinatorially from their zero sets.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{inverse, null_space, rref};
use super::rational::{primitive, primitive_int, to_rational_vec, Rational};
use crate::closure::ElementSet;

#[derive(Clone, Debug)]
pub struct ConeHull {
    /// Inward facet normals `a` with `a·g ≥ 0` for every generator.
    pub facets: Vec<Vec<BigInt>>,
    /// Basis of the linear forms vanishing on every generator.
    pub equations: Vec<Vec<BigInt>>,
    /// Dimension of the linear span of the generators.
    pub rank: usize,
}

struct Ray {
    v: Vec<BigInt>,
    zeros: ElementSet,
}

/// Facets and equations of the cone generated by `gens` (all of length
/// `dim`). Constraints are inserted in the order given by `order`, which
/// must be a permutation of `0..gens.len()`.
pub fn cone_hull(gens: &[Vec<BigInt>], dim: usize, order: &[usize]) -> ConeHull {
    let m = gens.len();
    let rows: Vec<Vec<Rational>> = gens.iter().map(|g| to_rational_vec(g)).collect();
    let equations: Vec<Vec<BigInt>> = null_space(&rows, dim).iter().map(|v| primitive(v)).collect();
    let (_, pivots) = rref(rows.clone(), dim);
    let k = pivots.len();
    if k == 0 {
        return ConeHull { facets: Vec::new(), equations, rank: 0 };
    }
    let reduced: Vec<Vec<BigInt>> =
        gens.iter().map(|g| pivots.iter().map(|&c| g[c].clone()).collect()).collect();

    // initial simplicial cone from the first k independent constraints
    let mut basis_rows: Vec<usize> = Vec::with_capacity(k);
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for &j in order {
        if basis_rows.len() == k {
            break;
        }
        let mut trial = echelon.clone();
        trial.push(to_rational_vec(&reduced[j]));
        let (r, p) = rref(trial, k);
        if p.len() > echelon.len() {
            echelon = r;
            basis_rows.push(j);
        }
    }
    debug_assert_eq!(basis_rows.len(), k);
    let b: Vec<Vec<Rational>> = basis_rows.iter().map(|&j| to_rational_vec(&reduced[j])).collect();
    let inv = inverse(&b).expect("basis rows are independent");

    let mut rays: Vec<Ray> = (0..k)
        .map(|c| {
            let col: Vec<Rational> = inv.iter().map(|row| row[c].clone()).collect();
            let mut zeros = ElementSet::empty(m);
            for (i, &j) in basis_rows.iter().enumerate() {
                if i != c {
                    zeros.insert(j);
                }
            }
            Ray { v: primitive(&col), zeros }
        })
        .collect();

    let mut in_basis = ElementSet::empty(m);
    for &j in &basis_rows {
        in_basis.insert(j);
    }
    let mut processed = in_basis.clone();

    for &j in order {
        if in_basis.contains(j) {
            continue;
        }
        let a = &reduced[j];
        let vals: Vec<BigInt> = rays.iter().map(|r| int_dot(&r.v, a)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        processed.insert(j);
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(j);
                }
            }
            continue;
        }

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.count() + 2 < k {
                    continue;
                }
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(t, r)| t != p && t != q && common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let vp = &vals[p];
                let vq = -&vals[q];
                let v: Vec<BigInt> =
                    rays[p].v.iter().zip(&rays[q].v).map(|(x, y)| &vq * x + vp * y).collect();
                let mut zeros = common;
                zeros.insert(j);
                fresh.push(Ray { v: primitive_int(v), zeros });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.insert(j);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }
    debug_assert!(processed.is_full());

    let mut facets: Vec<Vec<BigInt>> = rays
        .into_iter()
        .map(|r| {
            let mut full = vec![BigInt::zero(); dim];
            for (x, &c) in r.v.into_iter().zip(&pivots) {
                full[c] = x;
            }
            full
        })
        .collect();
    facets.sort();
    facets.dedup();
    ConeHull { facets, equations, rank: k }
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    super::rational::int_dot(a, b)
}
