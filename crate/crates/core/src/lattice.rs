//! Integer-lattice linear algebra: Hermite normal form, completion of a
//! primitive set to a basis of `Z^d`, unimodular maps and the lattice
//! `L ∩ Z^d` of a rational subspace.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::num::{primitive_integer_vector, Rational, Scalar};

/// A dense integer matrix, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<String>>", into = "Vec<Vec<String>>")]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    cols: usize,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(rows).expect("ragged matrix literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows: vec![vec![BigInt::zero(); cols]; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.rows[i][j] = x.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.nrows() });
        }
        let mut out = Self::zeros(self.nrows(), other.cols);
        for i in 0..self.nrows() {
            for k in 0..self.cols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `M·v` for a scalar vector.
    pub fn mul_scalars(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        self.rows
            .iter()
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, x) in r.iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(&Scalar::from(a) * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix: `vᵀ·M`.
    pub fn left_mul_scalars(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.nrows(), "vector-matrix dimension mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = Scalar::zero();
                for (i, x) in v.iter().enumerate() {
                    let a = &self.rows[i][j];
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(&Scalar::from(a) * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.nrows(), self.cols, "determinant of a non-square matrix");
        let n = self.cols;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// `row[target] -= q · row[source]`.
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let src = self.rows[source].clone();
        for (x, s) in self.rows[target].iter_mut().zip(&src) {
            *x -= q * s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in self.rows[r].iter_mut() {
            *x = -&*x;
        }
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.rows[r].iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl TryFrom<Vec<Vec<String>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<String>>) -> Result<Self> {
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let mut row = Vec::with_capacity(r.len());
            for (j, s) in r.iter().enumerate() {
                let x: BigInt = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::schema(format!("[{i}][{j}]"), format!("not an integer: {s:?}")))?;
                row.push(x);
            }
            parsed.push(row);
        }
        Self::from_rows(parsed)
    }
}

impl From<IntMatrix> for Vec<Vec<String>> {
    fn from(m: IntMatrix) -> Self {
        m.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U·M = H`, `U` unimodular and `H` in row echelon
/// form: the pivot of each nonzero row is positive, lies strictly right of the
/// pivot above it, and every entry above a pivot is reduced into
/// `[0, pivot)`. Zero rows come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, UnimodularMap) {
    let (h, u) = hnf_raw(m);
    let inverse = integer_inverse_of_reduced(&u);
    (h, UnimodularMap { forward: u, inverse })
}

fn hnf_raw(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let nrows = m.nrows();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(nrows);
    let mut pr = 0;
    for col in 0..m.ncols() {
        if pr == nrows {
            break;
        }
        loop {
            // bring the smallest nonzero entry of the column to the pivot row
            let best = (pr..nrows)
                .filter(|&r| !h.rows[r][col].is_zero())
                .min_by(|&a, &b| h.rows[a][col].abs().cmp(&h.rows[b][col].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            h.swap_rows(pr, best);
            u.swap_rows(pr, best);
            let mut clean = true;
            for r in pr + 1..nrows {
                if h.rows[r][col].is_zero() {
                    continue;
                }
                let q = h.rows[r][col].div_floor(&h.rows[pr][col]);
                h.sub_row(r, pr, &q);
                u.sub_row(r, pr, &q);
                if !h.rows[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.rows[pr][col].is_zero() {
            continue;
        }
        if h.rows[pr][col].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for r in 0..pr {
            let q = h.rows[r][col].div_floor(&h.rows[pr][col]);
            h.sub_row(r, pr, &q);
            u.sub_row(r, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

/// Inverse of a unimodular matrix: its HNF is the identity, and the
/// transformation recorded on the way is the inverse.
fn integer_inverse_of_reduced(u: &IntMatrix) -> IntMatrix {
    let (h, w) = hnf_raw(u);
    debug_assert_eq!(h, IntMatrix::identity(u.nrows()), "matrix is not unimodular");
    w
}

/// A basis `u_1, …, u_d` of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        let d = vectors.len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
        }
        let det = IntMatrix::from_columns(&vectors, d).determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::InvariantViolation(format!("basis determinant is {det}, not ±1")));
        }
        Ok(LatticeBasis { vectors })
    }

    pub fn standard(d: usize) -> Self {
        LatticeBasis { vectors: IntMatrix::identity(d).rows }
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn determinant(&self) -> BigInt {
        IntMatrix::from_columns(&self.vectors, self.dim()).determinant()
    }
}

/// A unimodular linear map together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularMap {
    pub forward: IntMatrix,
    pub inverse: IntMatrix,
}

impl UnimodularMap {
    /// Wraps an integer matrix with determinant ±1.
    pub fn from_matrix(forward: IntMatrix) -> Result<Self> {
        if forward.nrows() != forward.ncols() {
            return Err(Error::DimensionMismatch { expected: forward.nrows(), found: forward.ncols() });
        }
        let det = forward.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::InvariantViolation(format!("determinant {det} is not ±1")));
        }
        let inverse = integer_inverse_of_reduced(&forward);
        Ok(UnimodularMap { forward, inverse })
    }

    pub fn identity(d: usize) -> Self {
        UnimodularMap { forward: IntMatrix::identity(d), inverse: IntMatrix::identity(d) }
    }

    pub fn dim(&self) -> usize {
        self.forward.nrows()
    }

    pub fn apply(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.forward.mul_vec(z)
    }

    pub fn apply_inverse(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.inverse.mul_vec(z)
    }

    pub fn apply_scalars(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.forward.mul_scalars(x)
    }

    pub fn apply_inverse_scalars(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.inverse.mul_scalars(x)
    }

    pub fn inverted(&self) -> Self {
        UnimodularMap { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    pub fn compose(&self, first: &UnimodularMap) -> Result<Self> {
        Ok(UnimodularMap { forward: self.forward.mul(&first.forward)?, inverse: first.inverse.mul(&self.inverse)? })
    }
}

/// The map sending `u_i` to `e_i`; its inverse has the basis vectors as columns.
pub fn unimodular_from_basis(basis: &LatticeBasis) -> UnimodularMap {
    let inverse = IntMatrix::from_columns(basis.vectors(), basis.dim());
    let forward = integer_inverse_of_reduced(&inverse);
    UnimodularMap { forward, inverse }
}

/// Extends `primitive` (a basis of `lin(primitive) ∩ Z^d`) to a basis of `Z^d`.
///
/// The first `r` output vectors are the inputs. When `r < d` the last vector
/// is oriented so that the basis has determinant `+1`.
pub fn extend_to_basis(primitive: &[Vec<BigInt>], d: usize) -> Result<LatticeBasis> {
    if let Some(bad) = primitive.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
    }
    let r = primitive.len();
    if r == 0 {
        return Ok(LatticeBasis::standard(d));
    }
    let vt = IntMatrix::from_columns(primitive, d);
    let (h, u) = hnf_raw(&vt);
    let rank = (0..d).filter(|&i| !h.is_zero_row(i)).count();
    if rank < r {
        return Err(Error::DependentVectors);
    }
    // U·Vᵀ = H with H = [T; 0]; primitive iff T is the identity
    let unimodular_top = (0..r).all(|i| h.rows[i][i].is_one());
    if !unimodular_top {
        return Err(Error::NotPrimitive { witness: non_primitivity_witness(primitive, d) });
    }
    let w = integer_inverse_of_reduced(&u);
    let mut vectors: Vec<Vec<BigInt>> = (0..d).map(|j| w.column(j)).collect();
    debug_assert_eq!(&vectors[..r], primitive);
    if r < d && IntMatrix::from_columns(&vectors, d).determinant().is_negative() {
        let last = vectors.last_mut().expect("r < d");
        last.iter_mut().for_each(|x| *x = -&*x);
    }
    LatticeBasis::new(vectors)
}

/// A vector of `lin(vs) ∩ Z^d` outside the integer span of `vs`.
fn non_primitivity_witness(vs: &[Vec<BigInt>], d: usize) -> Vec<BigInt> {
    let span: Vec<Vec<Rational>> =
        vs.iter().map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let full = sublattice_of_subspace(&span, d);
    let cols: Vec<Vec<Scalar>> = (0..d).map(|i| vs.iter().map(|v| Scalar::from(&v[i])).collect()).collect();
    for b in &full {
        let rhs: Vec<Scalar> = b.iter().map(Scalar::from).collect();
        let coeffs = linalg::solve(&cols, &rhs, vs.len()).expect("lattice vector lies in the span");
        if coeffs.iter().any(|c| c.as_integer().is_none()) {
            return b.clone();
        }
    }
    unreachable!("a non-unimodular HNF block implies a missing lattice vector")
}

/// A basis of the lattice `L ∩ Z^d`, `L` spanned by rational vectors.
///
/// The result is in row Hermite normal form, hence canonical for `L`.
pub fn sublattice_of_subspace(spanning: &[Vec<Rational>], d: usize) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<Scalar>> = spanning.iter().map(|v| v.iter().cloned().map(Scalar::from).collect()).collect();
    let r = linalg::rank(&rows, d);
    if r == 0 {
        return Vec::new();
    }
    let normals: Vec<Vec<BigInt>> = linalg::kernel_basis(&rows, d)
        .iter()
        .map(|n| {
            let rat: Vec<Rational> = n.iter().map(|x| x.as_rational().expect("rational data").clone()).collect();
            primitive_integer_vector(&rat).expect("kernel vectors are nonzero")
        })
        .collect();
    let kernel_rows: Vec<Vec<BigInt>> = if normals.is_empty() {
        IntMatrix::identity(d).rows
    } else {
        // integer kernel of N: rows of U annihilating Nᵀ
        let nt = IntMatrix::from_columns(&normals, d);
        let (h, u) = hnf_raw(&nt);
        (0..d).filter(|&i| h.is_zero_row(i)).map(|i| u.rows[i].clone()).collect()
    };
    let (h, _) = hnf_raw(&IntMatrix::from_rows(kernel_rows).expect("rectangular"));
    h.rows.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())).collect()
}

/// A primitive integer vector proportional to `v`, if one exists.
///
/// Writing `v_i = a_i + b_i√k`, `v` is proportional to a rational vector
/// exactly when the rational vectors `a` and `b` are parallel.
pub fn is_rational_direction(v: &[Scalar]) -> Result<Option<Vec<BigInt>>> {
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroVector);
    }
    let a: Vec<&Rational> = v.iter().map(Scalar::rational_part).collect();
    let b: Vec<&Rational> = v.iter().map(Scalar::irrational_part).collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if a[i] * b[j] != a[j] * b[i] {
                return Ok(None);
            }
        }
    }
    let base: Vec<Rational> = if a.iter().any(|x| !x.is_zero()) {
        a.into_iter().cloned().collect()
    } else {
        b.into_iter().cloned().collect()
    };
    Ok(primitive_integer_vector(&base))
}

/// The smallest rational subspace containing the span of `basis`: the span of
/// the rational and irrational coordinate parts. Returned as an independent
/// rational spanning set.
pub fn rational_hull(basis: &[Vec<Scalar>], d: usize) -> Vec<Vec<Rational>> {
    let parts: Vec<Vec<Scalar>> = basis
        .iter()
        .flat_map(|v| {
            let a: Vec<Scalar> = v.iter().map(|x| Scalar::from(x.rational_part().clone())).collect();
            let b: Vec<Scalar> = v.iter().map(|x| Scalar::from(x.irrational_part().clone())).collect();
            [a, b]
        })
        .collect();
    linalg::row_space_basis(&parts, d)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.as_rational().expect("rational rows").clone()).collect())
        .collect()
}

/// Whether the subspace spanned by `basis` is rational, i.e. spanned by its
/// lattice points.
pub fn is_rational_subspace(basis: &[Vec<Scalar>], d: usize) -> bool {
    rational_hull(basis, d).len() == linalg::rank(basis, d)
}
