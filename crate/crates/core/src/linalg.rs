//! Dense linear algebra over [`Scalar`]: row reduction, rank, kernels,
//! square solves and determinants.

use crate::num::Scalar;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// A basis of `{x : row·x = 0 for every row}`, one vector per free column.
pub fn kernel_basis(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let (reduced, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// A basis of the row space (the nonzero rows of the reduced form).
pub fn row_space_basis(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    rref(rows.to_vec(), ncols).0
}

/// Solves `A x = b` for any solution; `A` given by rows, possibly non-square.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Unique solution of a square system, or `None` if singular.
pub fn solve_square(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    if rank(a, n) < n {
        return None;
    }
    solve(a, b, n)
}

pub fn determinant(a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            let (upper, lower) = m.split_at_mut(i);
            for (x, y) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                *x = &*x - &(&f * y);
            }
        }
    }
    det
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let n = v.len();
    let before = rank(basis, n);
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    rank(&with, n) == before
}
