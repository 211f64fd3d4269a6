//! Decision procedures for lattice-freeness and maximality, with
//! independently checkable certificates and constructive refutations.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{is_rational_direction, is_rational_subspace, rational_hull, UnimodularMap};
use crate::linalg;
use crate::lp;
use crate::maximalize::{lift_back, normalize_split};
use crate::num::{dot, to_scalars, Rational, Scalar};
use crate::polyhedron::{AffineSubspace, Inequality, Polyhedron};
use crate::search::{
    approximate_line, enumerate_lattice_points, interior_lattice_point, relint_of_facet_contains,
    strict_points_in_window, ApproxResult, Witness,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeFreeness {
    Free,
    NotFree(Witness),
}

impl LatticeFreeness {
    pub fn is_free(&self) -> bool {
        matches!(self, LatticeFreeness::Free)
    }
}

/// Lattice-free iff no lattice point lies in the interior. Undecided
/// searches surface as [`Error::Undecided`].
pub fn is_lattice_free(p: &Polyhedron, cap: u64) -> Result<LatticeFreeness> {
    Ok(match interior_lattice_point(p, cap)? {
        Some(w) => LatticeFreeness::NotFree(w),
        None => LatticeFreeness::Free,
    })
}

/// A lattice point in the relative interior of one facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetWitness {
    pub facet: usize,
    pub point: Vec<BigInt>,
}

/// Evidence that a full-dimensional lattice-free polyhedron is maximal:
/// every facet has a lattice point in its relative interior, and the
/// recession cone is spanned by integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityCertificate {
    /// The canonical form the facet indices refer to.
    pub polyhedron: Polyhedron,
    pub facet_witnesses: Vec<FacetWitness>,
    pub rec_basis: Vec<Vec<BigInt>>,
    pub facet_count: usize,
    pub lineality_dim: usize,
}

impl MaximalityCertificate {
    /// Re-checks every claim with exact predicates. Lattice-freeness is not
    /// re-derived here; it is the precondition the certificate was issued under.
    pub fn validate(&self) -> Result<()> {
        let p = &self.polyhedron;
        let d = p.dim();
        let fail = |msg: String| Err(Error::InvariantViolation(msg));
        if self.facet_count != p.len() || self.facet_witnesses.len() != p.len() {
            return fail(format!("{} witnesses for {} facets", self.facet_witnesses.len(), p.len()));
        }
        for (i, w) in self.facet_witnesses.iter().enumerate() {
            if w.facet != i {
                return fail(format!("witness {i} is recorded for facet {}", w.facet));
            }
            if !relint_of_facet_contains(p, i, &w.point) {
                return fail(format!("witness {:?} is not in the relative interior of facet {i}", w.point));
            }
        }
        if self.rec_basis.len() != self.lineality_dim {
            return fail("recession basis size differs from the lineality dimension".into());
        }
        let basis: Vec<Vec<Scalar>> = self.rec_basis.iter().map(|v| to_scalars(v)).collect();
        if linalg::rank(&basis, d) != basis.len() {
            return fail("recession basis is dependent".into());
        }
        for v in &basis {
            if p.inequalities().iter().any(|q| !dot(&q.normal, v).is_zero()) {
                return fail(format!("{v:?} is not in the lineality space"));
            }
        }
        let rec = p.recession_cone()?;
        let Some(lin) = rec.is_linear_space() else {
            return fail("recession cone is not a linear space".into());
        };
        if lin.len() != self.lineality_dim {
            return fail("recession basis does not span the recession cone".into());
        }
        let bound = 1u128 << (d - self.lineality_dim);
        if self.facet_count as u128 > bound {
            return fail(format!("{} facets exceed 2^{}", self.facet_count, d - self.lineality_dim));
        }
        Ok(())
    }

    /// The certificate of `A(P)`, with witnesses and basis mapped by `A`.
    pub fn mapped(&self, map: &UnimodularMap) -> Result<MaximalityCertificate> {
        Ok(MaximalityCertificate {
            polyhedron: self.polyhedron.apply_unimodular(map)?,
            facet_witnesses: self
                .facet_witnesses
                .iter()
                .map(|w| FacetWitness { facet: w.facet, point: map.apply(&w.point) })
                .collect(),
            rec_basis: self.rec_basis.iter().map(|v| map.apply(v)).collect(),
            facet_count: self.facet_count,
            lineality_dim: self.lineality_dim,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    NotLatticeFree {
        witness: Witness,
    },
    /// A strictly larger lattice-free polyhedron.
    NotMaximal {
        enlargement: Polyhedron,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Certified(MaximalityCertificate),
    Refuted(Refutation),
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified(_))
    }
}

/// Certifies maximality of a full-dimensional polyhedron, or refutes it with
/// an interior lattice point or an explicit lattice-free enlargement.
pub fn certify_maximal_fulldim(p: &Polyhedron, cap: u64) -> Result<Certification> {
    let d = p.dim();
    let dim = p.dimension()?;
    if dim < d {
        return Err(Error::NotFullDimensional { dim, expected: d });
    }
    let canon = p.canonicalize()?;
    if let LatticeFreeness::NotFree(witness) = is_lattice_free(&canon, cap)? {
        return Ok(Certification::Refuted(Refutation::NotLatticeFree { witness }));
    }
    let cone = canon.recession_cone()?;
    let Some(lin) = cone.is_linear_space() else {
        let enlargement = canon.sum_with_space(&cone.span())?.canonicalize()?;
        return Ok(Certification::Refuted(Refutation::NotMaximal {
            enlargement,
            reason: "recession cone is not a linear space".into(),
        }));
    };
    if !is_rational_subspace(&lin, d) {
        let hull: Vec<Vec<Scalar>> =
            rational_hull(&lin, d).into_iter().map(|v| v.into_iter().map(Scalar::from).collect()).collect();
        let enlargement = canon.sum_with_space(&hull)?.canonicalize()?;
        return Ok(Certification::Refuted(Refutation::NotMaximal {
            enlargement,
            reason: "lineality space is not spanned by lattice vectors".into(),
        }));
    }

    let split = normalize_split(&canon)?;
    let inner = &split.k_prime;
    let mut facet_witnesses = Vec::with_capacity(inner.len());
    for i in 0..inner.len() {
        let found =
            enumerate_lattice_points(&inner.facet(i))?.into_iter().find(|y| relint_of_facet_contains(inner, i, y));
        match found {
            Some(y) => facet_witnesses.push(FacetWitness { facet: i, point: split.lift_point(&y) }),
            None => {
                let pushed = push_facet(inner, i)?;
                return Ok(Certification::Refuted(Refutation::NotMaximal {
                    enlargement: lift_back(&split, &pushed)?.canonicalize()?,
                    reason: format!("facet {i} has no lattice point in its relative interior"),
                }));
            }
        }
    }

    let m = canon.len();
    let r = split.r;
    if m as u128 > 1u128 << (d - r) {
        return Err(Error::InvariantViolation(format!("certified polyhedron has {m} > 2^{} facets", d - r)));
    }
    Ok(Certification::Certified(MaximalityCertificate {
        rec_basis: split.lineality_basis(),
        polyhedron: canon,
        facet_witnesses,
        facet_count: m,
        lineality_dim: r,
    }))
}

/// Relaxes facet `i` of a bounded lattice-free polytope until the first
/// lattice point beyond it would enter the interior.
fn push_facet(k: &Polyhedron, i: usize) -> Result<Polyhedron> {
    let delta = Scalar::one();
    let row = &k.inequalities()[i];
    let probe = k.relax(i, &delta);
    let gap = enumerate_lattice_points(&probe)?
        .into_iter()
        .filter(|z| k.inequalities().iter().enumerate().all(|(j, q)| j == i || q.eval_int(z) < q.rhs))
        .map(|z| &row.eval_int(&z) - &row.rhs)
        .filter(Scalar::is_positive)
        .min()
        .unwrap_or(delta);
    Ok(k.relax(i, &gap))
}

/// Verdict for an affine subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowDimVerdict {
    Maximal { normal: Vec<Scalar> },
    NotMaximal { reason: String, enlargement: Option<Polyhedron> },
}

impl LowDimVerdict {
    pub fn is_maximal(&self) -> bool {
        matches!(self, LowDimVerdict::Maximal { .. })
    }
}

/// A hyperplane is maximal lattice-free exactly when its normal is not a
/// rational direction. Rational hyperplanes sit inside the split between
/// consecutive lattice hyperplanes; lower-dimensional subspaces never are.
pub fn certify_maximal_lowdim(h: &AffineSubspace) -> Result<LowDimVerdict> {
    let d = h.ambient_dim();
    if h.dim() + 1 != d {
        return Ok(LowDimVerdict::NotMaximal {
            reason: format!("dimension {} < d-1 = {}", h.dim(), d.saturating_sub(1)),
            enlargement: None,
        });
    }
    let normal = linalg::kernel_basis(h.directions(), d).pop().expect("codimension one");
    match is_rational_direction(&normal)? {
        None => Ok(LowDimVerdict::Maximal { normal }),
        Some(n) => {
            let ns = to_scalars(&n);
            let level = dot(&ns, h.point()).floor();
            let lo = Scalar::from(&level);
            let hi = &lo + &Scalar::one();
            let split = Polyhedron::new(
                d,
                vec![Inequality::new(ns.clone(), hi), Inequality::new(ns.iter().map(|x| -x).collect(), -lo)],
            )?;
            Ok(LowDimVerdict::NotMaximal { reason: "normal is a rational direction".into(), enlargement: Some(split) })
        }
    }
}

/// Outcome of the `K + lin(rec K)` check.
#[derive(Clone, Debug)]
pub struct Lemma1Report {
    pub widened: Polyhedron,
    pub lineality: Vec<Vec<Scalar>>,
    pub interior_points: Vec<Vec<BigInt>>,
    pub samples: usize,
    /// Sample points where membership in `K - rec K` and `K + lin(rec K)` disagree.
    pub identity_mismatches: Vec<Vec<Scalar>>,
}

impl Lemma1Report {
    pub fn holds(&self) -> bool {
        self.interior_points.is_empty() && self.identity_mismatches.is_empty()
    }
}

/// Checks that `K + lin(rec K)` has no interior lattice point in `window`,
/// and samples the identity `K - rec K = K + lin(rec K)` there.
pub fn check_lemma1(p: &Polyhedron, window: &[(BigInt, BigInt)], cap: u64, samples: usize) -> Result<Lemma1Report> {
    let d = p.dim();
    if window.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: window.len() });
    }
    if let LatticeFreeness::NotFree(w) = is_lattice_free(p, cap)? {
        return Err(Error::NotLatticeFree { witness: w.point });
    }
    let lineality = p.recession_cone()?.span();
    if !is_rational_subspace(&lineality, d) {
        return Err(Error::IrrationalLineality);
    }
    let widened = p.sum_with_space(&lineality)?;
    let interior_points = strict_points_in_window(&widened, window)?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut identity_mismatches = Vec::new();
    for _ in 0..samples {
        let x: Vec<Scalar> = window
            .iter()
            .map(|(lo, hi)| {
                let den: i64 = rng.gen_range(1..=4);
                let lo = i64::try_from(lo * den).unwrap_or(i64::MIN / 2);
                let hi = i64::try_from(hi * den).unwrap_or(i64::MAX / 2);
                Scalar::from(Rational::new(BigInt::from(rng.gen_range(lo..=hi)), BigInt::from(den)))
            })
            .collect();
        if in_difference_with_recession(p, &x) != widened.contains(&x) {
            identity_mismatches.push(x);
        }
    }
    Ok(Lemma1Report { widened, lineality, interior_points, samples, identity_mismatches })
}

/// `x ∈ K - rec K` iff some `k ∈ K` has `k - x ∈ rec K`.
fn in_difference_with_recession(p: &Polyhedron, x: &[Scalar]) -> bool {
    let mut rows = Vec::with_capacity(2 * p.len());
    let mut rhs = Vec::with_capacity(2 * p.len());
    for q in p.inequalities() {
        rows.push(q.normal.clone());
        rhs.push(q.rhs.clone());
        rows.push(q.normal.clone());
        rhs.push(q.eval(x));
    }
    lp::feasible_point(&rows, &rhs, p.dim()).is_some()
}

/// Evidence that the line through `m` lies in `cl(Z^d + L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureCertificate {
    /// `m` is a nonzero multiple of `integer + in_space`, with `in_space ∈ L`
    /// and `integer` in the rational hull of `L`.
    Decomposition { integer: Vec<BigInt>, in_space: Vec<Scalar> },
    /// Lattice points approaching `L` along a single residual direction,
    /// with `m ∈ span(residual) + L`.
    ApproximationSequence(Vec<ApproxResult>),
}

/// Checks a closure certificate for `m` against `L = span(lineality)`.
pub fn verify_closure_certificate(m: &[Scalar], lineality: &[Vec<Scalar>], cert: &ClosureCertificate) -> Result<()> {
    let d = m.len();
    let bad = |msg: &str| Err(Error::InvariantViolation(msg.into()));
    match cert {
        ClosureCertificate::Decomposition { integer, in_space } => {
            if integer.len() != d || in_space.len() != d {
                return bad("decomposition has the wrong dimension");
            }
            if !linalg::in_span(lineality, in_space) {
                return bad("claimed space component is not in L");
            }
            let hull: Vec<Vec<Scalar>> =
                rational_hull(lineality, d).into_iter().map(|v| v.into_iter().map(Scalar::from).collect()).collect();
            if !linalg::in_span(&hull, &to_scalars(integer)) {
                return bad("integer component is outside the rational hull of L");
            }
            let sum: Vec<Scalar> = integer.iter().zip(in_space).map(|(a, b)| &Scalar::from(a) + b).collect();
            if sum.iter().all(Scalar::is_zero) || linalg::rank(&[sum, m.to_vec()], d) != 1 {
                return bad("decomposition is not a multiple of the vector");
            }
            Ok(())
        }
        ClosureCertificate::ApproximationSequence(seq) => {
            if seq.len() < 3 {
                return bad("need at least three approximations");
            }
            let mut residuals: Vec<Vec<Scalar>> = Vec::new();
            for (i, a) in seq.iter().enumerate() {
                if a.z.len() != d || a.x.len() != d {
                    return bad("approximation has the wrong dimension");
                }
                if !a.verify() {
                    return bad("approximation residual is out of range");
                }
                if !linalg::in_span(lineality, &a.x) {
                    return bad("projection is not in L");
                }
                let r = a.residual_vector();
                if lineality.iter().any(|l| !dot(l, &r).is_zero()) {
                    return bad("residual is not orthogonal to L");
                }
                if i > 0 {
                    let prev = &seq[i - 1];
                    if a.t <= prev.t || a.residual() >= prev.residual() {
                        return bad("tolerances must increase and residuals decrease");
                    }
                }
                residuals.push(r);
            }
            if linalg::rank(&residuals, d) != 1 {
                return bad("residuals are not parallel");
            }
            let mut span = lineality.to_vec();
            span.push(residuals[0].clone());
            if !linalg::in_span(&span, m) {
                return bad("vector is outside span(residual) + L");
            }
            Ok(())
        }
    }
}

/// Builds a decomposition certificate when `m` is a positive multiple of a
/// rational vector plus an element of `L`.
pub fn decomposition_certificate(m: &[Scalar], lineality: &[Vec<Scalar>]) -> Option<ClosureCertificate> {
    let d = m.len();
    let r = lineality.len();
    if m.iter().all(Scalar::is_zero) {
        return None;
    }
    let k = m.iter().chain(lineality.iter().flatten()).find_map(Scalar::radicand);
    // unknown coefficients c_j = p_j + q_j√k; the irrational part of m - Σ c_j l_j must vanish
    let (coeffs, w): (Vec<Scalar>, Vec<Rational>) = match k {
        None => (vec![Scalar::zero(); r], m.iter().map(|x| x.as_rational().cloned()).collect::<Option<_>>()?),
        Some(k) => {
            let kq = Rational::from_integer(BigInt::from(k));
            let rows: Vec<Vec<Scalar>> = (0..d)
                .map(|i| {
                    let mut row: Vec<Scalar> =
                        lineality.iter().map(|l| Scalar::from(l[i].irrational_part().clone())).collect();
                    row.extend(lineality.iter().map(|l| Scalar::from(l[i].rational_part().clone())));
                    row
                })
                .collect();
            let rhs: Vec<Scalar> = m.iter().map(|x| Scalar::from(x.irrational_part().clone())).collect();
            let sol = linalg::solve(&rows, &rhs, 2 * r)?;
            let pq: Vec<Rational> = sol.iter().map(|x| x.as_rational().cloned()).collect::<Option<_>>()?;
            let coeffs: Vec<Scalar> =
                (0..r).map(|j| Scalar::new(pq[j].clone(), pq[r + j].clone(), k).expect("valid radicand")).collect();
            let w = (0..d)
                .map(|i| {
                    let mut a = m[i].rational_part().clone();
                    for (j, l) in lineality.iter().enumerate() {
                        a -= &pq[j] * l[i].rational_part() + &pq[r + j] * &kq * l[i].irrational_part();
                    }
                    a
                })
                .collect();
            (coeffs, w)
        }
    };
    let den = w.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let scale = Scalar::from(den.clone());
    let integer: Vec<BigInt> = w.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut in_space = vec![Scalar::zero(); d];
    for (c, l) in coeffs.iter().zip(lineality) {
        for (s, x) in in_space.iter_mut().zip(l) {
            *s = &*s + &(&(c * x) * &scale);
        }
    }
    let cert = ClosureCertificate::Decomposition { integer, in_space };
    verify_closure_certificate(m, lineality, &cert).ok().map(|_| cert)
}

/// A decomposition certificate if one exists; otherwise, for a
/// one-dimensional `L`, a sequence of line approximations with doubling
/// tolerance, keeping only strict residual improvements.
pub fn auto_closure_certificate(m: &[Scalar], lineality: &[Vec<Scalar>], n_cap: u64) -> Option<ClosureCertificate> {
    if let Some(cert) = decomposition_certificate(m, lineality) {
        return Some(cert);
    }
    let [u] = lineality else {
        return None;
    };
    let mut seq: Vec<ApproxResult> = Vec::new();
    let mut t = 2u64;
    while seq.len() < 3 && t <= n_cap {
        let a = approximate_line(u, t, n_cap).ok()?;
        if seq.last().is_none_or(|prev| a.residual() < prev.residual()) {
            seq.push(a);
        }
        t *= 2;
    }
    let cert = ClosureCertificate::ApproximationSequence(seq);
    verify_closure_certificate(m, lineality, &cert).ok().map(|_| cert)
}

/// Outcome of the `K + M` check.
#[derive(Clone, Debug)]
pub struct Lemma2Report {
    pub sum: Polyhedron,
    pub interior_points_of_p: Vec<Vec<BigInt>>,
    pub interior_points_of_sum: Vec<Vec<BigInt>>,
}

impl Lemma2Report {
    /// No interior lattice point of `K + M` in the window.
    pub fn sum_is_lattice_free_in_window(&self) -> bool {
        self.interior_points_of_sum.is_empty()
    }
}

/// Verifies the closure certificates for each basis vector of `M`, then
/// enumerates the interior lattice points of `K` and `K + M` in `window`.
pub fn check_lemma2(
    p: &Polyhedron,
    space: &[Vec<Scalar>],
    certificates: &[ClosureCertificate],
    window: &[(BigInt, BigInt)],
) -> Result<Lemma2Report> {
    let d = p.dim();
    if window.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: window.len() });
    }
    if certificates.len() != space.len() {
        return Err(Error::schema("certificates", format!("expected {} certificates", space.len())));
    }
    let lineality = p.recession_cone()?.is_linear_space().ok_or(Error::RecessionNotLinear)?;
    for (index, (m, cert)) in space.iter().zip(certificates).enumerate() {
        if m.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: m.len() });
        }
        if let Err(e) = verify_closure_certificate(m, &lineality, cert) {
            let reason = match e {
                Error::InvariantViolation(msg) => msg,
                other => other.to_string(),
            };
            return Err(Error::UncertifiedSpace { index, reason });
        }
    }
    let sum = if space.is_empty() { p.clone() } else { p.sum_with_space(space)? };
    Ok(Lemma2Report {
        interior_points_of_p: strict_points_in_window(p, window)?,
        interior_points_of_sum: strict_points_in_window(&sum, window)?,
        sum,
    })
}
