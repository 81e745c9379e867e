//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rational::{dot, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form. Returns the reduced matrix and its pivot
/// columns in increasing order.
pub fn rref(mut m: Matrix, ncols: usize) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    rref(rows.to_vec(), ncols).1.len()
}

/// Basis of `{x : m x = 0}` for an `_ × ncols` matrix.
pub fn null_space(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Dimension of the affine hull of the given points; `-1` for no points.
pub fn affine_dim<'a, I>(points: I) -> i64
where
    I: IntoIterator<Item = &'a [Rational]>,
{
    let mut it = points.into_iter();
    let Some(first) = it.next() else {
        return -1;
    };
    let diffs: Vec<Vec<Rational>> =
        it.map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    if diffs.is_empty() {
        return 0;
    }
    rank(&diffs) as i64
}

/// Orthogonal projection of `x` onto the orthogonal complement of the span
/// of `basis` (which need not be orthogonal, but must be independent).
pub fn project_out(x: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    if basis.is_empty() {
        return x.to_vec();
    }
    let k = basis.len();
    // Solve (B Bᵀ) c = B x, then x - Bᵀ c.
    let mut sys: Matrix = (0..k)
        .map(|i| {
            let mut row: Vec<Rational> = (0..k).map(|j| dot(&basis[i], &basis[j])).collect();
            row.push(dot(&basis[i], x));
            row
        })
        .collect();
    sys = rref(sys, k).0;
    let mut out = x.to_vec();
    for (i, row) in sys.iter().enumerate() {
        let c = &row[k];
        for (o, b) in out.iter_mut().zip(&basis[i]) {
            *o -= c * b;
        }
    }
    out
}

/// Solves a square or overdetermined consistent system `a x = b`; `None` if
/// inconsistent. Free variables are set to zero.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let k = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(aug, k);
    if pivots.len() < k {
        return None;
    }
    Some(r.into_iter().map(|row| row[k..].to_vec()).collect())
}

/// Determinant by fraction-free elimination over the rationals.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let k = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let prow = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot;
                for (x, y) in row.iter_mut().zip(&prow).skip(col) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}
