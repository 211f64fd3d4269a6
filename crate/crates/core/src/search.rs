//! Lattice point searches: exact enumeration in bounded polyhedra, interior
//! point detection, the Minkowski finder on `tZ^d`, finite-tolerance
//! approximation of irrational lines and the parity pigeonhole.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{is_rational_direction, is_rational_subspace};
use crate::lp::{self, LpOutcome};
use crate::maximalize::normalize_split;
use crate::num::{dot, dot_int, norm_inf, to_scalars, Rational, Scalar};
use crate::polyhedron::{Inequality, Polyhedron};

/// Where a witness sits relative to the polyhedron it was found in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    FacetRelativeInterior(usize),
    Boundary,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Interior => write!(f, "interior"),
            Location::FacetRelativeInterior(i) => write!(f, "relative-interior-of-facet {i}"),
            Location::Boundary => write!(f, "boundary"),
        }
    }
}

/// A lattice point together with a checkable claim about its position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub point: Vec<BigInt>,
    pub location: Location,
}

impl Witness {
    pub fn interior(point: Vec<BigInt>) -> Self {
        Witness { point, location: Location::Interior }
    }

    /// Re-checks the location claim with exact predicates.
    pub fn verify(&self, p: &Polyhedron) -> bool {
        let z = &self.point;
        if z.len() != p.dim() {
            return false;
        }
        match self.location {
            Location::Interior => p.strictly_contains_int(z),
            Location::FacetRelativeInterior(i) => relint_of_facet_contains(p, i, z),
            Location::Boundary => p.contains_int(z) && p.inequalities().iter().any(|q| q.eval_int(z) == q.rhs),
        }
    }
}

/// Whether `z` lies on facet `i` and strictly inside every other inequality.
pub fn relint_of_facet_contains(p: &Polyhedron, i: usize, z: &[BigInt]) -> bool {
    let Some(own) = p.inequalities().get(i) else {
        return false;
    };
    own.eval_int(z) == own.rhs && p.inequalities().iter().enumerate().all(|(j, q)| j == i || q.eval_int(z) < q.rhs)
}

/// All lattice points of a bounded polyhedron, in lexicographic order.
pub fn enumerate_lattice_points(p: &Polyhedron) -> Result<Vec<Vec<BigInt>>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    if !p.is_bounded()? {
        return Err(Error::Unbounded);
    }
    let mut out = Vec::new();
    enumerate_slices(p.inequalities().to_vec(), p.dim(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// Lattice points of `P ∩ window`, where `window` gives integer bounds per coordinate.
pub fn enumerate_in_window(p: &Polyhedron, window: &[(BigInt, BigInt)]) -> Result<Vec<Vec<BigInt>>> {
    enumerate_lattice_points(&p.intersect(&Polyhedron::int_box(window))?)
}

/// Lattice points strictly inside every inequality of `P ∩ window`'s `P` part.
pub fn strict_points_in_window(p: &Polyhedron, window: &[(BigInt, BigInt)]) -> Result<Vec<Vec<BigInt>>> {
    Ok(enumerate_in_window(p, window)?.into_iter().filter(|z| p.strictly_contains_int(z)).collect())
}

/// Fixes coordinates one at a time; each slice range comes from an exact LP,
/// and the last coordinate is read off the inequalities directly.
fn enumerate_slices(ineqs: Vec<Inequality>, dim: usize, prefix: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    if dim == 0 {
        if ineqs.iter().all(|q| !q.rhs.is_negative()) {
            out.push(prefix.clone());
        }
        return;
    }
    let (lo, hi) = if dim == 1 {
        let mut lo: Option<Scalar> = None;
        let mut hi: Option<Scalar> = None;
        for q in &ineqs {
            let a = &q.normal[0];
            if a.is_zero() {
                if q.rhs.is_negative() {
                    return;
                }
                continue;
            }
            let bound = &q.rhs / a;
            if a.is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        (lo.expect("bounded slice").ceil(), hi.expect("bounded slice").floor())
    } else {
        let rows: Vec<Vec<Scalar>> = ineqs.iter().map(|q| q.normal.clone()).collect();
        let rhs: Vec<Scalar> = ineqs.iter().map(|q| q.rhs.clone()).collect();
        let mut e = vec![Scalar::zero(); dim];
        e[0] = Scalar::one();
        let hi = match lp::maximize(&rows, &rhs, &e) {
            LpOutcome::Optimal { value, .. } => value.floor(),
            LpOutcome::Infeasible => return,
            LpOutcome::Unbounded => unreachable!("slices of a bounded polyhedron are bounded"),
        };
        e[0] = Scalar::from(-1);
        let lo = match lp::maximize(&rows, &rhs, &e) {
            LpOutcome::Optimal { value, .. } => (-value).ceil(),
            _ => unreachable!("feasible and bounded above implies bounded below"),
        };
        (lo, hi)
    };
    let mut v = lo;
    while v <= hi {
        let sv = Scalar::from(&v);
        let mut sliced = Vec::with_capacity(ineqs.len());
        let mut feasible = true;
        for q in &ineqs {
            let rhs = &q.rhs - &(&q.normal[0] * &sv);
            let normal = q.normal[1..].to_vec();
            if normal.iter().all(Scalar::is_zero) {
                if rhs.is_negative() {
                    feasible = false;
                    break;
                }
                continue;
            }
            sliced.push(Inequality::new(normal, rhs));
        }
        if feasible {
            prefix.push(v.clone());
            enumerate_slices(sliced, dim - 1, prefix, out);
            prefix.pop();
        }
        v += 1;
    }
}

/// A lattice point in the interior of `P`, if one exists.
///
/// Bounded polyhedra are decided by enumeration. Unbounded polyhedra whose
/// lineality can be split off unimodularly (rational data, or a rational
/// linear recession cone) are reduced to a bounded problem in lower
/// dimension. Anything else is searched in windows `[-w, w]^d` for
/// `w = 1, 2, 4, …, cap`; failing that the answer is [`Error::Undecided`].
pub fn interior_lattice_point(p: &Polyhedron, cap: u64) -> Result<Option<Witness>> {
    if p.is_empty() || !p.is_full_dimensional()? {
        return Ok(None);
    }
    if p.is_bounded()? {
        let found = enumerate_lattice_points(p)?.into_iter().find(|z| p.strictly_contains_int(z));
        return Ok(found.map(Witness::interior));
    }
    if let Some(decided) = reduce_unbounded(p)? {
        return Ok(decided);
    }
    let d = p.dim();
    let mut w = 1u64;
    while w <= cap {
        let window = vec![(BigInt::from(-(w as i128)), BigInt::from(w)); d];
        if let Some(z) = strict_points_in_window(p, &window)?.into_iter().next() {
            return Ok(Some(Witness::interior(z)));
        }
        w = match w.checked_mul(2) {
            Some(next) if next <= cap || w == cap => next,
            _ if w < cap => cap,
            _ => break,
        };
    }
    Err(Error::Undecided { cap })
}

/// Decides an unbounded full-dimensional polyhedron through `P + lin(rec P)`,
/// which has the same interior lattice points up to translation along the
/// recession cone. Returns `None` when the reduction is not available.
fn reduce_unbounded(p: &Polyhedron) -> Result<Option<Option<Witness>>> {
    let d = p.dim();
    let cone = p.recession_cone()?;
    let span = cone.span();
    let linear = cone.is_linear_space().is_some();
    if !is_rational_subspace(&span, d) || (!linear && !p.is_rational()) {
        return Ok(None);
    }
    let widened = if linear { p.clone() } else { p.sum_with_space(&span)? };
    let split = normalize_split(&widened)?;
    let inner = &split.k_prime;
    let found = enumerate_lattice_points(inner)?.into_iter().find(|y| inner.strictly_contains_int(y));
    let Some(y) = found else {
        return Ok(Some(None));
    };
    let z = split.lift_point(&y);
    if linear {
        return Ok(Some(Some(Witness::interior(z))));
    }
    // z + n·g lies in int(P) for large n once g is in the relative interior of rec(P)
    let g = relative_interior_ray(p, &span)?;
    let mut n = BigInt::one();
    for _ in 0..256 {
        let candidate: Vec<BigInt> = z.iter().zip(&g).map(|(a, b)| a + &n * b).collect();
        if p.strictly_contains_int(&candidate) {
            return Ok(Some(Some(Witness::interior(candidate))));
        }
        n *= 2;
    }
    Err(Error::InvariantViolation("interior ray walk did not enter the polyhedron".into()))
}

/// An integer vector `g ∈ span` with `⟨a_i, g⟩ < 0` for every row of `P`
/// not orthogonal to the span. Requires rational data.
fn relative_interior_ray(p: &Polyhedron, span: &[Vec<Scalar>]) -> Result<Vec<BigInt>> {
    let r = span.len();
    // variables (c_1..c_r, s): maximize s with ⟨a_i, Σ c_j v_j⟩ + s ≤ 0, s ≤ 1
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for q in p.inequalities() {
        let coeffs: Vec<Scalar> = span.iter().map(|v| dot(&q.normal, v)).collect();
        if coeffs.iter().all(Scalar::is_zero) {
            continue;
        }
        let mut row = coeffs;
        row.push(Scalar::one());
        rows.push(row);
        rhs.push(Scalar::zero());
    }
    let mut cap_row = vec![Scalar::zero(); r];
    cap_row.push(Scalar::one());
    rows.push(cap_row);
    rhs.push(Scalar::one());
    let mut objective = vec![Scalar::zero(); r];
    objective.push(Scalar::one());
    let LpOutcome::Optimal { value, point } = lp::maximize(&rows, &rhs, &objective) else {
        return Err(Error::InvariantViolation("relative interior LP failed".into()));
    };
    if !value.is_positive() {
        return Err(Error::InvariantViolation("recession cone is not full-dimensional in its span".into()));
    }
    let mut u = vec![Scalar::zero(); p.dim()];
    for (c, v) in point.iter().zip(span) {
        for (ui, vi) in u.iter_mut().zip(v) {
            *ui = &*ui + &(c * vi);
        }
    }
    let rats: Vec<Rational> = u.iter().map(|x| x.as_rational().expect("rational data").clone()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    Ok(rats.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect())
}

/// A nonzero point of `tZ^d ∩ P` for a centrally symmetric convex body with
/// volume at least `(2t)^d`.
///
/// Among all such points the one with the smallest ℓ1 norm is returned;
/// ties go to the lexicographically greatest, so `e_1` beats `e_2` and
/// positive coordinates beat negative ones.
pub fn minkowski_find(p: &Polyhedron, t: u64) -> Result<Vec<BigInt>> {
    if t == 0 {
        return Err(Error::schema("t", "must be a positive integer"));
    }
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    if !p.is_bounded()? {
        return Err(Error::Unbounded);
    }
    let dim = p.dimension()?;
    if dim < p.dim() {
        return Err(Error::NotFullDimensional { dim, expected: p.dim() });
    }
    for q in p.inequalities() {
        let neg: Vec<Scalar> = q.normal.iter().map(|x| -x).collect();
        if let LpOutcome::Optimal { value, point } = p.maximize(&neg) {
            if value > q.rhs {
                return Err(Error::NotSymmetric { point });
            }
        }
    }
    let volume = p.volume()?;
    let side = Scalar::from(BigInt::from(2 * t));
    let required = (0..p.dim()).fold(Scalar::one(), |acc, _| &acc * &side);
    if volume < required {
        return Err(Error::VolumeShortfall { volume: Box::new(volume), required: Box::new(required) });
    }
    let ts = Scalar::from(BigInt::from(t));
    let scaled = Polyhedron::new(
        p.dim(),
        p.inequalities()
            .iter()
            .map(|q| Inequality::new(q.normal.iter().map(|a| a * &ts).collect(), q.rhs.clone()))
            .collect(),
    )?;
    let tb = BigInt::from(t);
    enumerate_lattice_points(&scaled)?
        .into_iter()
        .filter(|y| y.iter().any(|x| !x.is_zero()))
        .map(|y| y.into_iter().map(|x| x * &tb).collect::<Vec<BigInt>>())
        .min_by(|a, b| {
            let la: BigInt = a.iter().map(|x| x.abs()).sum();
            let lb: BigInt = b.iter().map(|x| x.abs()).sum();
            la.cmp(&lb).then_with(|| b.cmp(a))
        })
        .ok_or_else(|| Error::InvariantViolation("no nonzero lattice point despite sufficient volume".into()))
}

/// A lattice point close to the line `ℝu`, found at tolerance `1/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    pub z: Vec<BigInt>,
    /// Orthogonal projection of `z` onto the line.
    pub x: Vec<Scalar>,
    pub t: u64,
}

impl ApproxResult {
    pub fn residual_vector(&self) -> Vec<Scalar> {
        self.z.iter().zip(&self.x).map(|(a, b)| &Scalar::from(a) - b).collect()
    }

    /// `‖z - x‖_∞`.
    pub fn residual(&self) -> Scalar {
        norm_inf(&self.residual_vector())
    }

    /// `0 < ‖z - x‖_∞ < 1/t`, `z ≠ 0`, decided exactly.
    pub fn verify(&self) -> bool {
        let r = self.residual();
        self.t > 0 && self.z.iter().any(|c| !c.is_zero()) && r.is_positive() && r < Scalar::ratio(1, self.t as i64)
    }
}

/// Searches the cylinder `[-N, N]u + (1/t)B_∞` for `N = t, 2t, 4t, … ≤ n_cap`.
///
/// Within the first cylinder holding a lattice point with residual
/// `0 < ‖z - x‖_∞ < 1/t` the best approximation is returned: smallest
/// residual, oriented so that `⟨z, u⟩ > 0`, ties broken lexicographically.
pub fn approximate_line(u: &[Scalar], t: u64, n_cap: u64) -> Result<ApproxResult> {
    if t == 0 {
        return Err(Error::schema("t", "must be a positive integer"));
    }
    if is_rational_direction(u)?.is_some() {
        return Err(Error::RationalDirection);
    }
    let rho = Scalar::ratio(1, t as i64);
    let uu = dot(u, u);
    let mut n = t;
    while n <= n_cap {
        let bound = Scalar::from(BigInt::from(n));
        let mut candidates = Vec::new();
        cylinder_points(u, &rho, 0, (-&bound, bound.clone()), &mut Vec::new(), &mut candidates);
        let best = candidates
            .into_iter()
            .filter_map(|z| {
                let zu = dot_int(u, &z);
                if !zu.is_positive() {
                    return None;
                }
                let f = &zu / &uu;
                let x: Vec<Scalar> = u.iter().map(|c| &f * c).collect();
                let res = ApproxResult { z, x, t };
                let r = res.residual();
                (r.is_positive() && r < rho).then_some((r, res))
            })
            .min_by(|(ra, a), (rb, b)| ra.cmp(rb).then_with(|| a.z.cmp(&b.z)));
        if let Some((_, res)) = best {
            return Ok(res);
        }
        n = match n.checked_mul(2) {
            Some(next) => next,
            None => break,
        };
    }
    Err(Error::CapExhausted { cap: n_cap })
}

/// Lattice points `z` with `‖z - s·u‖_∞ ≤ rho` for some `s` in `interval`.
fn cylinder_points(
    u: &[Scalar],
    rho: &Scalar,
    i: usize,
    interval: (Scalar, Scalar),
    prefix: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if i == u.len() {
        out.push(prefix.clone());
        return;
    }
    let (lo, hi) = interval;
    let ends = [&lo * &u[i], &hi * &u[i]];
    let (min, max) = if ends[0] <= ends[1] { (&ends[0], &ends[1]) } else { (&ends[1], &ends[0]) };
    let mut z = (min - rho).ceil();
    let top = (max + rho).floor();
    while z <= top {
        let zs = Scalar::from(&z);
        let next = if u[i].is_zero() {
            (zs.abs() <= *rho).then(|| (lo.clone(), hi.clone()))
        } else {
            let a = &(&zs - rho) / &u[i];
            let b = &(&zs + rho) / &u[i];
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            let l = a.max(lo.clone());
            let h = b.min(hi.clone());
            (l <= h).then_some((l, h))
        };
        if let Some(next) = next {
            prefix.push(z.clone());
            cylinder_points(u, rho, i + 1, next, prefix, out);
            prefix.pop();
        }
        z += 1;
    }
}

/// A pair of vectors in the same class of `Z^d / 2Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityPair {
    /// Zero-based indices, `i < j`.
    pub i: usize,
    pub j: usize,
    pub midpoint: Vec<BigInt>,
}

/// The lexicographically first pair `(i, j)` with `w_i ≡ w_j (mod 2)`.
pub fn parity_pair(w: &[Vec<BigInt>]) -> Result<ParityPair> {
    let d = w.first().map_or(0, Vec::len);
    if let Some(bad) = w.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
    }
    let mut classes: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for (idx, v) in w.iter().enumerate() {
        let class: Vec<bool> = v.iter().map(|x| x.is_odd()).collect();
        let members = classes.entry(class).or_default();
        if members.len() < 2 {
            members.push(idx);
        }
    }
    let (i, j) = classes
        .values()
        .filter(|m| m.len() == 2)
        .map(|m| (m[0], m[1]))
        .min()
        .ok_or(Error::NoParityPair { m: w.len(), d })?;
    let two = BigInt::from(2);
    let midpoint = w[i].iter().zip(&w[j]).map(|(a, b)| (a + b) / &two).collect();
    Ok(ParityPair { i, j, midpoint })
}

/// Scalar copy of an integer point, for exact predicates.
pub fn as_scalars(z: &[BigInt]) -> Vec<Scalar> {
    to_scalars(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from(n)
    }

    fn q(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn poly(d: usize, rows: &[(&[i64], i64)]) -> Polyhedron {
        Polyhedron::new(d, rows.iter().map(|(a, b)| Inequality::from_ints(a, *b)).collect()).unwrap()
    }

    fn unit_square() -> Polyhedron {
        Polyhedron::cube(2, &s(0), &s(1))
    }

    fn split() -> Polyhedron {
        poly(2, &[(&[1, 0], 1), (&[-1, 0], 0)])
    }

    /// Independent oracle: scan an integer box and test membership directly.
    fn brute_force(p: &Polyhedron, r: i64) -> Vec<Vec<BigInt>> {
        let d = p.dim();
        let mut out = Vec::new();
        let side = (2 * r + 1) as usize;
        for idx in 0..side.pow(d as u32) {
            let mut rem = idx;
            let mut z = vec![BigInt::zero(); d];
            for c in (0..d).rev() {
                z[c] = BigInt::from((rem % side) as i64 - r);
                rem /= side;
            }
            if p.contains_int(&z) {
                out.push(z);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumerate_examples() {
        let pts = enumerate_lattice_points(&unit_square()).unwrap();
        assert_eq!(pts, vec![ints(&[0, 0]), ints(&[0, 1]), ints(&[1, 0]), ints(&[1, 1])]);

        let tri = poly(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 2)]);
        let pts = enumerate_lattice_points(&tri).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts, brute_force(&tri, 3));

        let sliver = Polyhedron::new(
            2,
            vec![
                Inequality::from_ints(&[-1, 0], 0),
                Inequality::from_ints(&[1, 0], 1),
                Inequality::new(vec![s(0), s(-1)], q("-1/3")),
                Inequality::new(vec![s(0), s(1)], q("2/3")),
            ],
        )
        .unwrap();
        assert!(enumerate_lattice_points(&sliver).unwrap().is_empty());
        assert!(matches!(enumerate_lattice_points(&split()), Err(Error::Unbounded)));
    }

    #[test]
    fn enumerate_irrational_disc_approximation() {
        // |x| + |y| ≤ √2 holds (±1,0),(0,±1),(0,0)
        let r2 = Scalar::sqrt_of(2).unwrap();
        let mut rows = Vec::new();
        for a in [-1, 1] {
            for b in [-1, 1] {
                rows.push(Inequality::new(vec![s(a), s(b)], r2.clone()));
            }
        }
        let p = Polyhedron::new(2, rows).unwrap();
        assert_eq!(enumerate_lattice_points(&p).unwrap().len(), 5);
    }

    #[test]
    fn interior_examples() {
        assert_eq!(interior_lattice_point(&unit_square(), 8).unwrap(), None);
        let w = interior_lattice_point(&Polyhedron::cube(2, &s(-1), &s(1)), 8).unwrap().unwrap();
        assert_eq!(w.point, ints(&[0, 0]));
        assert_eq!(interior_lattice_point(&split(), 8).unwrap(), None);
        let wide = poly(2, &[(&[1, 0], 2), (&[-1, 0], 0)]);
        let w = interior_lattice_point(&wide, 8).unwrap().unwrap();
        assert!(w.verify(&wide));
    }

    #[test]
    fn interior_through_pointed_recession() {
        // {x2 ≥ 1/2}: rec is a half-plane, lin(rec) = R^2
        let half = Polyhedron::new(2, vec![Inequality::new(vec![s(0), s(-1)], q("-1/2"))]).unwrap();
        let w = interior_lattice_point(&half, 4).unwrap().unwrap();
        assert!(w.verify(&half));

        // {0 ≤ x1 ≤ 1, x2 ≥ 0} is lattice-free
        let strip = poly(2, &[(&[1, 0], 1), (&[-1, 0], 0), (&[0, -1], 0)]);
        assert_eq!(interior_lattice_point(&strip, 4).unwrap(), None);

        // a wedge far from the origin: interior points exist but only far out
        let wedge = Polyhedron::new(
            2,
            vec![Inequality::new(vec![s(-1), s(0)], q("-1/3")), Inequality::new(vec![s(2), s(-1)], q("1/3"))],
        )
        .unwrap();
        let w = interior_lattice_point(&wedge, 4).unwrap().unwrap();
        assert!(w.verify(&wedge));
    }

    #[test]
    fn interior_irrational_unbounded_uses_windows() {
        let r2 = Scalar::sqrt_of(2).unwrap();
        let slab = Polyhedron::new(
            2,
            vec![Inequality::new(vec![s(1), r2.clone()], q("1/10")), Inequality::new(vec![s(-1), -r2], s(0))],
        )
        .unwrap();
        let w = interior_lattice_point(&slab, 16).unwrap().unwrap();
        assert!(w.verify(&slab));
        // too small a cap cannot see any of them
        assert!(matches!(interior_lattice_point(&slab, 1), Err(Error::Undecided { cap: 1 })));
    }

    #[test]
    fn lower_dimensional_sets_have_empty_interior() {
        let r2 = Scalar::sqrt_of(2).unwrap();
        let line = Polyhedron::new(
            2,
            vec![Inequality::new(vec![s(1), r2.clone()], s(0)), Inequality::new(vec![s(-1), -r2], s(0))],
        )
        .unwrap();
        assert_eq!(interior_lattice_point(&line, 4).unwrap(), None);
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(minkowski_find(&Polyhedron::cube(2, &s(-1), &s(1)), 1).unwrap(), ints(&[1, 0]));
        assert_eq!(minkowski_find(&Polyhedron::cube(2, &s(-2), &s(2)), 2).unwrap(), ints(&[2, 0]));

        // hexagon conv{±(3,0), ±(0,3), ±(3,3)}
        let hex = poly(2, &[(&[1, 0], 3), (&[-1, 0], 3), (&[0, 1], 3), (&[0, -1], 3), (&[1, -1], 3), (&[-1, 1], 3)]);
        assert_eq!(hex.volume().unwrap(), s(27));
        let z = minkowski_find(&hex, 1).unwrap();
        assert_eq!(z, ints(&[1, 0]));
        assert!(hex.contains_int(&z));
    }

    #[test]
    fn minkowski_preconditions() {
        let shifted = Polyhedron::cube(2, &s(0), &s(3));
        assert!(matches!(minkowski_find(&shifted, 1), Err(Error::NotSymmetric { .. })));
        let small = Polyhedron::cube(2, &q("-1/2"), &q("1/2"));
        match minkowski_find(&small, 1) {
            Err(Error::VolumeShortfall { volume, required }) => {
                assert_eq!(*volume, s(1));
                assert_eq!(*required, s(4));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(minkowski_find(&split(), 1), Err(Error::Unbounded)));
    }

    #[test]
    fn approximate_line_convergents() {
        let u = vec![s(1), Scalar::sqrt_of(2).unwrap()];
        let r5 = approximate_line(&u, 5, 1 << 12).unwrap();
        assert_eq!(r5.z, ints(&[5, 7]));
        assert!(r5.verify());
        let r12 = approximate_line(&u, 12, 1 << 12).unwrap();
        assert_eq!(r12.z, ints(&[12, 17]));
        assert!(r12.verify());
    }

    #[test]
    fn approximate_line_rejects_rational_direction() {
        assert!(matches!(approximate_line(&[s(1), s(0)], 1, 64), Err(Error::RationalDirection)));
        assert!(matches!(approximate_line(&[s(0), s(0)], 1, 64), Err(Error::ZeroVector)));
        let u = vec![s(1), Scalar::sqrt_of(2).unwrap()];
        assert!(matches!(approximate_line(&u, 5, 4), Err(Error::CapExhausted { cap: 4 })));
    }

    #[test]
    fn parity_examples() {
        let w = vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1]), ints(&[2, 0])];
        let p = parity_pair(&w).unwrap();
        assert_eq!((p.i, p.j), (0, 4));
        assert_eq!(p.midpoint, ints(&[1, 0]));

        let p = parity_pair(&[ints(&[0, 0]), ints(&[0, 0])]).unwrap();
        assert_eq!((p.i, p.j, p.midpoint), (0, 1, ints(&[0, 0])));

        let w = vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])];
        assert!(matches!(parity_pair(&w), Err(Error::NoParityPair { m: 4, d: 2 })));
    }

    #[test]
    fn parity_pair_is_lexicographically_first() {
        // classes: 0:(1,0) 1:(0,1) 2:(0,1) 3:(1,0) → pairs (1,2) and (0,3); (0,3) comes first
        let w = vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[2, 3]), ints(&[3, 2])];
        let p = parity_pair(&w).unwrap();
        assert_eq!((p.i, p.j), (0, 3));
        assert_eq!(p.midpoint, ints(&[2, 1]));
    }

    #[test]
    fn witness_locations() {
        let sq = unit_square();
        assert!(Witness { point: ints(&[1, 0]), location: Location::Boundary }.verify(&sq));
        assert!(!Witness::interior(ints(&[1, 0])).verify(&sq));
        let tri = poly(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 2)]);
        assert!(Witness { point: ints(&[1, 1]), location: Location::FacetRelativeInterior(2) }.verify(&tri));
        assert!(!Witness { point: ints(&[2, 0]), location: Location::FacetRelativeInterior(2) }.verify(&tri));
    }
}
