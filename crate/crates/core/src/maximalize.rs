//! Unimodular splitting `A(P) = R^r × K′` and the constructive enlargement of
//! a bounded lattice-free polytope to a maximal lattice-free polyhedron.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    extend_to_basis, is_rational_subspace, rational_hull, sublattice_of_subspace, unimodular_from_basis, LatticeBasis,
    UnimodularMap,
};
use crate::maximality::{certify_maximal_fulldim, Certification, MaximalityCertificate};
use crate::num::{dot_int, Scalar};
use crate::polyhedron::{Inequality, Polyhedron};
use crate::search::{enumerate_lattice_points, interior_lattice_point, relint_of_facet_contains};

/// `A(P) = R^r × K′` for a unimodular `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitForm {
    pub map: UnimodularMap,
    pub r: usize,
    pub k_prime: Polyhedron,
}

impl SplitForm {
    pub fn ambient_dim(&self) -> usize {
        self.map.dim()
    }

    /// `A⁻¹(0^r, y)`.
    pub fn lift_point(&self, y: &[BigInt]) -> Vec<BigInt> {
        let mut full = vec![BigInt::zero(); self.r];
        full.extend_from_slice(y);
        self.map.apply_inverse(&full)
    }

    /// The `K′` coordinates of `A z`.
    pub fn project_point(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.map.apply(z)[self.r..].to_vec()
    }

    /// Integer vectors spanning `rec(P)`: the first `r` columns of `A⁻¹`.
    pub fn lineality_basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.r).map(|j| self.map.inverse.column(j)).collect()
    }
}

/// Splits off the lineality space of `P` by a unimodular change of basis.
///
/// Requires `rec(P)` to be a rational linear space. The lattice basis of
/// `L ∩ Z^d` is extended to a basis of `Z^d` whose complement vectors are
/// oriented with a positive leading coordinate.
pub fn normalize_split(p: &Polyhedron) -> Result<SplitForm> {
    let d = p.dim();
    let cone = p.recession_cone()?;
    let lin = cone.is_linear_space().ok_or(Error::RecessionNotLinear)?;
    if !is_rational_subspace(&lin, d) {
        return Err(Error::IrrationalLineality);
    }
    let lattice = sublattice_of_subspace(&rational_hull(&lin, d), d);
    let r = lattice.len();
    let mut vectors = extend_to_basis(&lattice, d)?.vectors().to_vec();
    for v in vectors.iter_mut().skip(r) {
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    let map = unimodular_from_basis(&LatticeBasis::new(vectors)?);
    let image = p.apply_unimodular(&map)?;
    let mut rows = Vec::with_capacity(image.len());
    for q in image.inequalities() {
        if q.normal[..r].iter().any(|x| !x.is_zero()) {
            return Err(Error::InvariantViolation("split coordinates are not free after the change of basis".into()));
        }
        rows.push(Inequality::new(q.normal[r..].to_vec(), q.rhs.clone()));
    }
    Ok(SplitForm { map, r, k_prime: Polyhedron::new(d - r, rows)? })
}

/// `A⁻¹(R^r × Q′)`.
pub fn lift_back(split: &SplitForm, q_prime: &Polyhedron) -> Result<Polyhedron> {
    let d = split.ambient_dim();
    if q_prime.dim() != d - split.r {
        return Err(Error::DimensionMismatch { expected: d - split.r, found: q_prime.dim() });
    }
    let rows = q_prime
        .inequalities()
        .iter()
        .map(|q| {
            let mut normal = vec![Scalar::zero(); split.r];
            normal.extend(q.normal.iter().cloned());
            Inequality::new(normal, q.rhs.clone())
        })
        .collect();
    Polyhedron::new(d, rows)?.apply_unimodular(&split.map.inverted())
}

/// A certified maximal lattice-free superset, with the intermediate stages
/// of the push loop.
#[derive(Clone, Debug)]
pub struct MaximalEnlargement {
    pub polyhedron: Polyhedron,
    pub certificate: MaximalityCertificate,
    /// The boxed polyhedron before the first push and after each push.
    pub stages: Vec<Polyhedron>,
    pub box_n: u64,
}

/// `2·max|vertex coordinate| + 2`, rounded up.
pub fn default_box(p: &Polyhedron) -> Result<u64> {
    let mut m = BigInt::zero();
    for v in p.vertices()? {
        for c in v {
            m = m.max(c.abs().ceil());
        }
    }
    u64::try_from(2 * m + 2).map_err(|_| Error::schema("box", "default box exceeds the supported range"))
}

/// Grows a bounded lattice-free polytope to a maximal lattice-free
/// polyhedron by pushing unoccupied facets to the nearest lattice point
/// beyond them, then releasing box constraints that are not needed.
pub fn enlarge_to_maximal(p: &Polyhedron, box_n: Option<u64>, cap: u64) -> Result<MaximalEnlargement> {
    let d = p.dim();
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let dim = p.dimension()?;
    if dim < d {
        return Err(Error::NotFullDimensional { dim, expected: d });
    }
    if !p.is_bounded()? {
        return Err(Error::Unbounded);
    }
    if let Some(w) = interior_lattice_point(p, cap)? {
        return Err(Error::NotLatticeFree { witness: w.point });
    }
    let box_n = match box_n {
        Some(n) => n,
        None => default_box(p)?,
    };
    let bound = Scalar::from(BigInt::from(box_n));
    let boxed = Polyhedron::cube(d, &-&bound, &bound);
    if let Some(bbox) = p.bounding_box()? {
        if bbox.iter().any(|(lo, hi)| *lo < -&bound || *hi > bound) {
            return Err(Error::BoxTooSmall { box_n });
        }
    }

    let mut user: Vec<Inequality> = p.canonicalize()?.inequalities().to_vec();
    let box_rows = boxed.inequalities().to_vec();
    let assemble = |user: &[Inequality]| -> Result<(Polyhedron, Vec<usize>)> {
        let mut rows = user.to_vec();
        rows.extend(box_rows.iter().cloned());
        Polyhedron::new(d, rows)?.canonicalize_indexed()
    };
    let mut occupied: HashSet<Inequality> = HashSet::new();
    let mut stages = vec![assemble(&user)?.0];

    'scan: loop {
        let (current, origin) = assemble(&user)?;
        for (ci, &o) in origin.iter().enumerate() {
            if o >= user.len() {
                continue;
            }
            let row = &current.inequalities()[ci];
            if occupied.contains(row) {
                continue;
            }
            let facet_points = enumerate_lattice_points(&current.facet(ci))?;
            if facet_points.iter().any(|z| relint_of_facet_contains(&current, ci, z)) {
                occupied.insert(row.clone());
                continue;
            }
            // nearest lattice point beyond the facet, inside everything else and the box
            let mut relaxed = current.without(ci);
            for q in &box_rows {
                relaxed = relaxed.with_inequality(q.clone());
            }
            let target = enumerate_lattice_points(&relaxed)?
                .iter()
                .map(|z| dot_int(&row.normal, z))
                .filter(|v| *v > row.rhs)
                .min();
            match target {
                Some(t) => user[o] = Inequality::new(row.normal.clone(), t),
                None => {
                    user.remove(o);
                }
            }
            // a user row merged into a box row can be dropped without changing the set
            let next = assemble(&user)?.0;
            let last = stages.last().expect("initial stage");
            let same = next.len() == last.len() && next.inequalities().iter().all(|q| last.inequalities().contains(q));
            if !same {
                stages.push(next);
            }
            continue 'scan;
        }
        break;
    }

    // release box constraints, most recently added first
    let (mut current, origin) = assemble(&user)?;
    let mut box_facets: Vec<(usize, Inequality)> = origin
        .iter()
        .zip(current.inequalities())
        .filter(|(&o, _)| o >= user.len())
        .map(|(&o, q)| (o, q.clone()))
        .collect();
    box_facets.sort_by_key(|f| std::cmp::Reverse(f.0));
    for (_, row) in box_facets {
        let idx = current.inequalities().iter().position(|q| *q == row).expect("box facet present");
        let candidate = current.without(idx);
        if interior_lattice_point(&candidate, cap)?.is_none() {
            current = candidate;
        }
    }

    let result = current.canonicalize()?;
    match certify_maximal_fulldim(&result, cap)? {
        Certification::Certified(certificate) => {
            Ok(MaximalEnlargement { polyhedron: certificate.polyhedron.clone(), certificate, stages, box_n })
        }
        Certification::Refuted(_) => Err(Error::BoxTooSmall { box_n }),
    }
}
