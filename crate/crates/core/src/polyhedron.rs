//! Exact H-representation polyhedra `{x : ⟨a_i, x⟩ ≤ t_i}`.
//!
//! Equalities are stored as pairs of opposite inequalities. Every LP question
//! (emptiness, redundancy, implicit equalities, boundedness) is answered by the
//! exact simplex in [`crate::lp`].

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::UnimodularMap;
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::num::{dot, dot_int, lex_cmp, Scalar};

/// The inequality `⟨normal, x⟩ ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub normal: Vec<Scalar>,
    pub rhs: Scalar,
}

impl Inequality {
    pub fn new(normal: Vec<Scalar>, rhs: Scalar) -> Self {
        Inequality { normal, rhs }
    }

    /// Builds an inequality from integer coefficients.
    pub fn from_ints(normal: &[i64], rhs: i64) -> Self {
        Inequality { normal: normal.iter().map(|&x| Scalar::from(x)).collect(), rhs: Scalar::from(rhs) }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        dot(&self.normal, x)
    }

    pub fn eval_int(&self, z: &[BigInt]) -> Scalar {
        dot_int(&self.normal, z)
    }

    pub fn satisfied_by(&self, x: &[Scalar]) -> bool {
        self.eval(x) <= self.rhs
    }

    pub fn strictly_satisfied_by(&self, x: &[Scalar]) -> bool {
        self.eval(x) < self.rhs
    }

    pub fn tight_at(&self, x: &[Scalar]) -> bool {
        self.eval(x) == self.rhs
    }

    pub fn negated(&self) -> Inequality {
        Inequality { normal: self.normal.iter().map(|x| -x).collect(), rhs: -&self.rhs }
    }

    /// Positive rescaling making the first nonzero coefficient `±1`.
    pub fn normalized(&self) -> Inequality {
        let Some(lead) = self.normal.iter().find(|x| !x.is_zero()) else {
            return self.clone();
        };
        let scale = lead.abs().recip();
        Inequality { normal: self.normal.iter().map(|x| x * &scale).collect(), rhs: &self.rhs * &scale }
    }

    pub fn is_rational(&self) -> bool {
        self.rhs.is_rational() && self.normal.iter().all(Scalar::is_rational)
    }

    pub fn relaxed(&self, delta: &Scalar) -> Inequality {
        Inequality { normal: self.normal.clone(), rhs: &self.rhs + delta }
    }
}

/// A polyhedron in H-representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    ineqs: Vec<Inequality>,
}

/// A polyhedral cone `{u : ⟨a_i, u⟩ ≤ 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    normals: Vec<Vec<Scalar>>,
}

/// `point + span(directions)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    point: Vec<Scalar>,
    directions: Vec<Vec<Scalar>>,
}

impl Polyhedron {
    /// Validates dimensions and rejects zero normals.
    pub fn new(dim: usize, ineqs: Vec<Inequality>) -> Result<Self> {
        if dim > crate::MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        for (i, q) in ineqs.iter().enumerate() {
            if q.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: q.dim() });
            }
            if q.is_trivial() {
                return Err(Error::schema(format!("ineqs[{i}].a"), "normal vector is zero"));
            }
        }
        Ok(Polyhedron { dim, ineqs })
    }

    /// Drops trivial rows `0 ≤ t` with `t ≥ 0`; an unsatisfiable trivial row
    /// makes the result empty (kept as `x_1 ≤ -1, -x_1 ≤ -1`-style witness rows).
    pub(crate) fn from_rows_lossy(dim: usize, rows: Vec<Inequality>) -> Self {
        let mut ineqs = Vec::with_capacity(rows.len());
        for q in rows {
            if q.is_trivial() {
                if q.rhs.is_negative() {
                    return Self::empty(dim);
                }
                continue;
            }
            ineqs.push(q);
        }
        Polyhedron { dim, ineqs }
    }

    fn empty(dim: usize) -> Self {
        let mut e = vec![Scalar::zero(); dim.max(1)];
        e[0] = Scalar::one();
        let up = Inequality::new(e.clone(), Scalar::from(-1));
        let down = Inequality::new(e.iter().map(|x| -x).collect(), Scalar::from(-1));
        Polyhedron { dim, ineqs: vec![up, down] }
    }

    pub fn whole_space(dim: usize) -> Self {
        Polyhedron { dim, ineqs: Vec::new() }
    }

    /// `{x : lo ≤ x_i ≤ hi}` for every coordinate.
    pub fn cube(dim: usize, lo: &Scalar, hi: &Scalar) -> Self {
        let mut ineqs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut e = vec![Scalar::zero(); dim];
            e[i] = Scalar::one();
            ineqs.push(Inequality::new(e.clone(), hi.clone()));
            e[i] = Scalar::from(-1);
            ineqs.push(Inequality::new(e, -lo));
        }
        Polyhedron { dim, ineqs }
    }

    /// A box with per-coordinate integer bounds.
    pub fn int_box(bounds: &[(BigInt, BigInt)]) -> Self {
        let dim = bounds.len();
        let mut ineqs = Vec::with_capacity(2 * dim);
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            let mut e = vec![Scalar::zero(); dim];
            e[i] = Scalar::one();
            ineqs.push(Inequality::new(e.clone(), Scalar::from(hi)));
            e[i] = Scalar::from(-1);
            ineqs.push(Inequality::new(e, -Scalar::from(lo)));
        }
        Polyhedron { dim, ineqs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.ineqs
    }

    pub fn len(&self) -> usize {
        self.ineqs.len()
    }

    pub fn is_empty_system(&self) -> bool {
        self.ineqs.is_empty()
    }

    /// The common radicand of all data, if any scalar is irrational.
    pub fn radicand(&self) -> Option<u64> {
        self.ineqs.iter().flat_map(|q| q.normal.iter().chain(std::iter::once(&q.rhs))).find_map(Scalar::radicand)
    }

    pub fn is_rational(&self) -> bool {
        self.ineqs.iter().all(Inequality::is_rational)
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.ineqs.iter().all(|q| q.satisfied_by(x))
    }

    pub fn contains_int(&self, z: &[BigInt]) -> bool {
        self.ineqs.iter().all(|q| q.eval_int(z) <= q.rhs)
    }

    /// Strict satisfaction of every inequality. For a full-dimensional
    /// polyhedron this is membership in the interior.
    pub fn strictly_contains_int(&self, z: &[BigInt]) -> bool {
        self.ineqs.iter().all(|q| q.eval_int(z) < q.rhs)
    }

    pub fn strictly_contains(&self, x: &[Scalar]) -> bool {
        self.ineqs.iter().all(|q| q.strictly_satisfied_by(x))
    }

    pub fn with_inequality(&self, q: Inequality) -> Self {
        let mut ineqs = self.ineqs.clone();
        ineqs.push(q);
        Polyhedron { dim: self.dim, ineqs }
    }

    pub fn without(&self, index: usize) -> Self {
        let mut ineqs = self.ineqs.clone();
        ineqs.remove(index);
        Polyhedron { dim: self.dim, ineqs }
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        Ok(Polyhedron { dim: self.dim, ineqs })
    }

    /// Replaces inequality `index` by its relaxation by `delta`.
    pub fn relax(&self, index: usize, delta: &Scalar) -> Self {
        let mut ineqs = self.ineqs.clone();
        ineqs[index] = ineqs[index].relaxed(delta);
        Polyhedron { dim: self.dim, ineqs }
    }

    fn rows_rhs(&self) -> (Vec<Vec<Scalar>>, Vec<Scalar>) {
        (self.ineqs.iter().map(|q| q.normal.clone()).collect(), self.ineqs.iter().map(|q| q.rhs.clone()).collect())
    }

    /// `max ⟨c, x⟩` over the polyhedron.
    pub fn maximize(&self, objective: &[Scalar]) -> LpOutcome {
        let (rows, rhs) = self.rows_rhs();
        lp::maximize(&rows, &rhs, objective)
    }

    pub fn minimize(&self, objective: &[Scalar]) -> LpOutcome {
        let neg: Vec<Scalar> = objective.iter().map(|x| -x).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal { value: -value, point },
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<Scalar>> {
        let (rows, rhs) = self.rows_rhs();
        lp::feasible_point(&rows, &rhs, self.dim)
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyPolyhedron)
        } else {
            Ok(())
        }
    }

    /// Indices of inequalities tight on the whole polyhedron.
    pub fn implicit_equalities(&self) -> Result<Vec<usize>> {
        self.require_nonempty()?;
        let mut out = Vec::new();
        for (i, q) in self.ineqs.iter().enumerate() {
            match self.minimize(&q.normal) {
                LpOutcome::Optimal { value, .. } if value == q.rhs => out.push(i),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Affine dimension: `d` minus the rank of the implicit equalities.
    pub fn dimension(&self) -> Result<usize> {
        let eq = self.implicit_equalities()?;
        let rows: Vec<Vec<Scalar>> = eq.iter().map(|&i| self.ineqs[i].normal.clone()).collect();
        Ok(self.dim - linalg::rank(&rows, self.dim))
    }

    pub fn is_full_dimensional(&self) -> Result<bool> {
        Ok(self.dimension()? == self.dim)
    }

    /// Irredundant system for the same set.
    ///
    /// Rows are rescaled so the first nonzero coefficient is `±1`, parallel
    /// duplicates keep the tighter bound, and each remaining row is dropped if
    /// the others already imply it. Surviving rows keep their input order.
    pub fn canonicalize(&self) -> Result<Polyhedron> {
        Ok(self.canonicalize_indexed()?.0)
    }

    /// Like [`Polyhedron::canonicalize`], also returning for each surviving
    /// row the index of the input row it came from.
    pub fn canonicalize_indexed(&self) -> Result<(Polyhedron, Vec<usize>)> {
        self.require_nonempty()?;
        let mut rows: Vec<(usize, Inequality)> = Vec::new();
        for (i, q) in self.ineqs.iter().enumerate() {
            let n = q.normalized();
            match rows.iter_mut().find(|(_, r)| r.normal == n.normal) {
                Some((_, r)) => {
                    if n.rhs < r.rhs {
                        r.rhs = n.rhs;
                    }
                }
                None => rows.push((i, n)),
            }
        }
        let mut i = 0;
        while i < rows.len() {
            let others: Vec<Vec<Scalar>> =
                rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, (_, r))| r.normal.clone()).collect();
            let rhs: Vec<Scalar> =
                rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, (_, r))| r.rhs.clone()).collect();
            let redundant = match lp::maximize(&others, &rhs, &rows[i].1.normal) {
                LpOutcome::Optimal { value, .. } => value <= rows[i].1.rhs,
                _ => false,
            };
            if redundant {
                rows.remove(i);
            } else {
                i += 1;
            }
        }
        let origin = rows.iter().map(|(o, _)| *o).collect();
        let ineqs = rows.into_iter().map(|(_, r)| r).collect();
        Ok((Polyhedron { dim: self.dim, ineqs }, origin))
    }

    /// `rec(P) = {u : ⟨a_i, u⟩ ≤ 0}`.
    pub fn recession_cone(&self) -> Result<Cone> {
        self.require_nonempty()?;
        Ok(Cone { dim: self.dim, normals: self.ineqs.iter().map(|q| q.normal.clone()).collect() })
    }

    /// Per-coordinate `(min, max)`, or `None` when unbounded.
    pub fn bounding_box(&self) -> Result<Option<Vec<(Scalar, Scalar)>>> {
        self.require_nonempty()?;
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut e = vec![Scalar::zero(); self.dim];
            e[i] = Scalar::one();
            let (LpOutcome::Optimal { value: lo, .. }, LpOutcome::Optimal { value: hi, .. }) =
                (self.minimize(&e), self.maximize(&e))
            else {
                return Ok(None);
            };
            out.push((lo, hi));
        }
        Ok(Some(out))
    }

    pub fn is_bounded(&self) -> Result<bool> {
        self.require_nonempty()?;
        Ok(self.recession_cone()?.is_trivial())
    }

    /// `P + span(basis)`, by Fourier–Motzkin elimination along each basis
    /// vector followed by redundancy removal.
    pub fn sum_with_space(&self, basis: &[Vec<Scalar>]) -> Result<Polyhedron> {
        self.require_nonempty()?;
        let mut current = self.clone();
        for v in basis {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
            if v.iter().all(Scalar::is_zero) {
                continue;
            }
            let mut keep = Vec::new();
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for q in &current.ineqs {
                let s = dot(&q.normal, v);
                match s.signum() {
                    0 => keep.push(q.clone()),
                    1 => pos.push((q, s)),
                    _ => neg.push((q, -s)),
                }
            }
            for ((p, sp), (n, sn)) in pos.iter().cartesian_product(&neg) {
                let normal: Vec<Scalar> = p.normal.iter().zip(&n.normal).map(|(a, b)| &(sn * a) + &(sp * b)).collect();
                let rhs = &(sn * &p.rhs) + &(sp * &n.rhs);
                keep.push(Inequality::new(normal, rhs));
            }
            current = Polyhedron::from_rows_lossy(self.dim, keep).canonicalize()?;
        }
        Ok(current)
    }

    /// All vertices of a bounded polyhedron, sorted lexicographically.
    pub fn vertices(&self) -> Result<Vec<Vec<Scalar>>> {
        if !self.is_bounded()? {
            return Err(Error::Unbounded);
        }
        let base = self.canonicalize()?;
        let d = self.dim;
        if d == 0 {
            return Ok(vec![Vec::new()]);
        }
        let mut found: BTreeSet<Vec<Scalar>> = BTreeSet::new();
        for subset in (0..base.ineqs.len()).combinations(d) {
            let a: Vec<Vec<Scalar>> = subset.iter().map(|&i| base.ineqs[i].normal.clone()).collect();
            let b: Vec<Scalar> = subset.iter().map(|&i| base.ineqs[i].rhs.clone()).collect();
            if let Some(x) = linalg::solve_square(&a, &b) {
                if base.contains(&x) {
                    found.insert(x);
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// Exact volume of a bounded full-dimensional polyhedron.
    ///
    /// The boundary is triangulated recursively, always coning from the
    /// lexicographically smallest vertex of the current face.
    pub fn volume(&self) -> Result<Scalar> {
        if !self.is_bounded()? {
            return Err(Error::Unbounded);
        }
        let dim = self.dimension()?;
        if dim < self.dim {
            return Err(Error::NotFullDimensional { dim, expected: self.dim });
        }
        let base = self.canonicalize()?;
        let verts = base.vertices()?;
        let incidence: Vec<BTreeSet<usize>> =
            verts.iter().map(|v| (0..base.ineqs.len()).filter(|&i| base.ineqs[i].tight_at(v)).collect()).collect();
        let all: Vec<usize> = (0..verts.len()).collect();
        let mut simplices = Vec::new();
        triangulate(&verts, &incidence, base.ineqs.len(), &all, self.dim, &mut Vec::new(), &mut simplices);
        let mut total = Scalar::zero();
        let factorial: BigInt = (1..=self.dim as u64).map(BigInt::from).product();
        for s in &simplices {
            let v0 = &verts[s[0]];
            let m: Vec<Vec<Scalar>> =
                s[1..].iter().map(|&j| verts[j].iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
            total += &linalg::determinant(&m).abs();
        }
        Ok(&total / &Scalar::from(factorial))
    }

    /// One facet per inequality: the polyhedron with that inequality turned
    /// into an equality.
    pub fn facets(&self) -> Result<Vec<(usize, Polyhedron)>> {
        let dim = self.dimension()?;
        if dim < self.dim {
            return Err(Error::NotFullDimensional { dim, expected: self.dim });
        }
        Ok((0..self.ineqs.len()).map(|i| (i, self.facet(i))).collect())
    }

    pub fn facet(&self, i: usize) -> Polyhedron {
        self.with_inequality(self.ineqs[i].negated())
    }

    /// Image `A(P)`: the row `(a, t)` becomes `(aᵀ·A⁻¹, t)`.
    pub fn apply_unimodular(&self, map: &UnimodularMap) -> Result<Polyhedron> {
        if map.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: map.dim() });
        }
        let ineqs = self
            .ineqs
            .iter()
            .map(|q| Inequality::new(map.inverse.left_mul_scalars(&q.normal), q.rhs.clone()))
            .collect();
        Ok(Polyhedron { dim: self.dim, ineqs })
    }
}

/// Collects simplices (as vertex index lists) triangulating the face spanned
/// by `face`, of affine dimension `k`, coned over `apexes`.
fn triangulate(
    verts: &[Vec<Scalar>],
    incidence: &[BTreeSet<usize>],
    nineqs: usize,
    face: &[usize],
    k: usize,
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == 0 {
        let mut s = vec![face[0]];
        s.extend(apexes.iter().rev());
        out.push(s);
        return;
    }
    // vertices are sorted, so the smallest index is the lexicographic minimum
    let apex = *face.iter().min().expect("nonempty face");
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..nineqs {
        let sub: Vec<usize> = face.iter().copied().filter(|&v| incidence[v].contains(&i)).collect();
        if sub.len() < k || sub.contains(&apex) || sub.len() == face.len() {
            continue;
        }
        if affine_dimension(verts, &sub) != k - 1 || !seen.insert(sub.clone()) {
            continue;
        }
        apexes.push(apex);
        triangulate(verts, incidence, nineqs, &sub, k - 1, apexes, out);
        apexes.pop();
    }
}

fn affine_dimension(verts: &[Vec<Scalar>], idx: &[usize]) -> usize {
    let v0 = &verts[idx[0]];
    let diffs: Vec<Vec<Scalar>> =
        idx[1..].iter().map(|&j| verts[j].iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
    linalg::rank(&diffs, v0.len())
}

impl Cone {
    pub fn new(dim: usize, normals: Vec<Vec<Scalar>>) -> Result<Self> {
        if let Some(bad) = normals.iter().find(|n| n.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
        }
        Ok(Cone { dim, normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<Scalar>] {
        &self.normals
    }

    fn as_polyhedron(&self) -> Polyhedron {
        let ineqs = self.normals.iter().map(|n| Inequality::new(n.clone(), Scalar::zero())).collect();
        Polyhedron::from_rows_lossy(self.dim, ineqs)
    }

    pub fn contains(&self, u: &[Scalar]) -> bool {
        self.normals.iter().all(|n| !dot(n, u).is_positive())
    }

    /// Rows that vanish on the whole cone.
    fn implicit_equalities(&self) -> Vec<usize> {
        let p = self.as_polyhedron();
        (0..self.normals.len()).filter(|&i| matches!(p.minimize(&self.normals[i]), LpOutcome::Optimal { .. })).collect()
    }

    /// Whether the cone is `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.span().is_empty()
    }

    /// A basis of `lin(C)`: the kernel of the rows vanishing on `C`.
    pub fn span(&self) -> Vec<Vec<Scalar>> {
        let eq: Vec<Vec<Scalar>> = self.implicit_equalities().into_iter().map(|i| self.normals[i].clone()).collect();
        linalg::kernel_basis(&eq, self.dim)
    }

    /// A basis of the cone as a subspace, if `C = -C`.
    pub fn is_linear_space(&self) -> Option<Vec<Vec<Scalar>>> {
        if self.implicit_equalities().len() != self.normals.len() {
            return None;
        }
        Some(linalg::kernel_basis(&self.normals, self.dim))
    }
}

impl AffineSubspace {
    pub fn new(point: Vec<Scalar>, directions: Vec<Vec<Scalar>>) -> Result<Self> {
        let d = point.len();
        if let Some(bad) = directions.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
        }
        if linalg::rank(&directions, d) != directions.len() {
            return Err(Error::DependentVectors);
        }
        Ok(AffineSubspace { point, directions })
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn point(&self) -> &[Scalar] {
        &self.point
    }

    pub fn directions(&self) -> &[Vec<Scalar>] {
        &self.directions
    }

    pub fn translated(&self, offset: &[Scalar]) -> Self {
        AffineSubspace {
            point: self.point.iter().zip(offset).map(|(a, b)| a + b).collect(),
            directions: self.directions.clone(),
        }
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        let diff: Vec<Scalar> = x.iter().zip(&self.point).map(|(a, b)| a - b).collect();
        linalg::in_span(&self.directions, &diff)
    }
}

/// Lexicographic order on scalar vectors.
pub fn sort_points(points: &mut [Vec<Scalar>]) {
    points.sort_by(|a, b| lex_cmp(a, b));
}
