//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use latfree::lattice::{IntMatrix, UnimodularMap};
use latfree::num::{Rational, Scalar};
use latfree::polyhedron::{Inequality, Polyhedron};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn cube_window(d: usize, r: i64) -> Vec<(BigInt, BigInt)> {
    vec![(BigInt::from(-r), BigInt::from(r)); d]
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

fn cross(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    vec![&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

/// H-representation of the convex hull of rational points in dimension 1 to
/// 3, or `None` when the hull is not full-dimensional.
pub fn hull(points: &[Vec<Scalar>]) -> Option<Polyhedron> {
    let d = points.first()?.len();
    let rows = match d {
        1 => {
            let lo = points.iter().map(|p| p[0].clone()).min()?;
            let hi = points.iter().map(|p| p[0].clone()).max()?;
            if lo == hi {
                return None;
            }
            vec![Inequality::new(vec![s(1)], hi), Inequality::new(vec![s(-1)], -lo)]
        }
        2 => hull_rows_2d(points)?,
        3 => hull_rows_3d(points)?,
        _ => unimplemented!("hulls are only generated up to dimension 3"),
    };
    let p = Polyhedron::new(d, rows).ok()?.canonicalize().ok()?;
    p.is_full_dimensional().ok()?.then_some(p)
}

fn hull_rows_2d(points: &[Vec<Scalar>]) -> Option<Vec<Inequality>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return None;
    }
    let turn = |o: &[Scalar], a: &[Scalar], b: &[Scalar]| {
        &(&(&a[0] - &o[0]) * &(&b[1] - &o[1])) - &(&(&a[1] - &o[1]) * &(&b[0] - &o[0]))
    };
    let mut lower: Vec<Vec<Scalar>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Scalar>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    let ring: Vec<Vec<Scalar>> = lower.into_iter().chain(upper).collect();
    if ring.len() < 3 {
        return None;
    }
    Some(
        (0..ring.len())
            .map(|i| {
                let (p, q) = (&ring[i], &ring[(i + 1) % ring.len()]);
                let normal = vec![&q[1] - &p[1], &p[0] - &q[0]];
                let rhs = dot(&normal, p);
                Inequality::new(normal, rhs)
            })
            .collect(),
    )
}

fn hull_rows_3d(points: &[Vec<Scalar>]) -> Option<Vec<Inequality>> {
    let n = points.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = cross(&sub(&points[j], &points[i]), &sub(&points[k], &points[i]));
                if normal.iter().all(Scalar::is_zero) {
                    continue;
                }
                let level = dot(&normal, &points[i]);
                let sides: Vec<Scalar> = points.iter().map(|p| &dot(&normal, p) - &level).collect();
                if sides.iter().all(|x| !x.is_positive()) {
                    rows.push(Inequality::new(normal, level));
                } else if sides.iter().all(|x| !x.is_negative()) {
                    rows.push(Inequality::new(normal.iter().map(|x| -x).collect(), -level));
                }
            }
        }
    }
    (rows.len() >= 4).then_some(rows)
}

/// A random point with coordinates in `[lo, hi]`, multiples of `1/den`.
pub fn random_point(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64, den: i64) -> Vec<Scalar> {
    (0..d).map(|_| frac(rng.gen_range(lo * den..=hi * den), den)).collect()
}

/// Random hull of `count` points; retried until full-dimensional.
pub fn random_polytope(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64, den: i64, count: usize) -> Polyhedron {
    loop {
        let pts: Vec<Vec<Scalar>> = (0..count).map(|_| random_point(rng, d, lo, hi, den)).collect();
        if let Some(p) = hull(&pts) {
            return p;
        }
    }
}

/// A random unimodular map with small entries.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> UnimodularMap {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..2 * d + 1 {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = rng.gen_range(-2..=2);
                let source = m[j].clone();
                m[i].iter_mut().zip(&source).for_each(|(x, y)| *x += c * y);
            }
            1 => m.swap(i, j),
            _ => m[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    UnimodularMap::from_matrix(IntMatrix::from_i64(&rows)).expect("elementary operations are unimodular")
}

/// Every integer point of `[-r, r]^d`, in lexicographic order.
pub fn box_points(d: usize, r: i64) -> Vec<Vec<BigInt>> {
    let side = (2 * r + 1) as usize;
    (0..side.pow(d as u32))
        .map(|mut idx| {
            let mut z = vec![BigInt::zero(); d];
            for c in (0..d).rev() {
                z[c] = BigInt::from((idx % side) as i64 - r);
                idx /= side;
            }
            z
        })
        .collect()
}

/// Brute-force enumeration: membership test on every point of a box.
pub fn brute_force_points(p: &Polyhedron, r: i64) -> Vec<Vec<BigInt>> {
    box_points(p.dim(), r).into_iter().filter(|z| p.contains_int(z)).collect()
}

/// Brute-force interior test within a box.
pub fn brute_force_interior(p: &Polyhedron, r: i64) -> Vec<Vec<BigInt>> {
    box_points(p.dim(), r).into_iter().filter(|z| p.strictly_contains_int(z)).collect()
}

/// Rescales a rational inequality to a primitive integer normal.
pub fn integral_row(q: &Inequality) -> Inequality {
    let rats: Vec<Rational> = q.normal.iter().map(|x| x.as_rational().expect("rational").clone()).collect();
    let lcm = rats.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = rats.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let factor = Scalar::from(Rational::new(lcm, g));
    Inequality::new(q.normal.iter().map(|x| x * &factor).collect(), &q.rhs * &factor)
}

/// A random lattice-free polygon: the hull of half-integer points drawn
/// from a lattice-free region (a split strip or a unimodular triangle
/// image), translated by a random integer vector.
pub fn random_lattice_free_polygon(rng: &mut ChaCha8Rng, spread: i64) -> Polyhedron {
    loop {
        let count = rng.gen_range(3..=6);
        let shape = rng.gen_range(0..3);
        let shift = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        let pts: Vec<Vec<Scalar>> = (0..count)
            .map(|_| {
                let (x, y) = match shape {
                    // the split 0 ≤ x ≤ 1
                    0 => (rng.gen_range(0..=2), rng.gen_range(-2 * spread..=2 * spread)),
                    // the triangle conv{(0,0),(2,0),(0,2)}
                    1 => {
                        let x = rng.gen_range(0..=4);
                        (x, rng.gen_range(0..=4 - x))
                    }
                    // the split 0 ≤ x + y ≤ 1
                    _ => {
                        let x = rng.gen_range(-2 * spread..=2 * spread);
                        (x, rng.gen_range(-x..=2 - x))
                    }
                };
                vec![frac(x + 2 * shift[0], 2), frac(y + 2 * shift[1], 2)]
            })
            .collect();
        if pts.iter().any(|p| p.iter().any(|c| c.abs() > s(4))) {
            continue;
        }
        if let Some(p) = hull(&pts) {
            return p;
        }
    }
}

/// A random lattice-free polytope in R^3 inside a split or a unit cube shift.
pub fn random_lattice_free_polytope_3d(rng: &mut ChaCha8Rng) -> Polyhedron {
    loop {
        let count = rng.gen_range(4..=7);
        let shape = rng.gen_range(0..2);
        let pts: Vec<Vec<Scalar>> = (0..count)
            .map(|_| match shape {
                0 => {
                    vec![frac(rng.gen_range(0..=2), 2), frac(rng.gen_range(-3..=3), 2), frac(rng.gen_range(-3..=3), 2)]
                }
                _ => (0..3).map(|_| frac(rng.gen_range(0..=2), 2)).collect(),
            })
            .collect();
        if let Some(p) = hull(&pts) {
            return p;
        }
    }
}

/// A random unbounded lattice-free polyhedron with rational lineality:
/// a unimodular image of a set inside the split `0 ≤ x_1 ≤ 1`.
pub fn random_unbounded_lattice_free(rng: &mut ChaCha8Rng, d: usize) -> Polyhedron {
    let mut rows = vec![
        Inequality::new(unit(d, 0, 1), &s(1) - &frac(rng.gen_range(0..=1), 4)),
        Inequality::new(unit(d, 0, -1), -frac(rng.gen_range(0..=1), 4)),
    ];
    for c in 1..d {
        match rng.gen_range(0..3) {
            // a lower bound: the recession cone is pointed in this coordinate
            0 => rows.push(Inequality::new(unit(d, c, -1), frac(rng.gen_range(-4..=4), 2))),
            // a slanted cut mixing coordinates
            1 => {
                let mut a = unit(d, c, -1);
                a[0] = s(rng.gen_range(-2..=2));
                rows.push(Inequality::new(a, frac(rng.gen_range(-4..=4), 3)));
            }
            // free coordinate
            _ => {}
        }
    }
    let base = Polyhedron::new(d, rows).expect("valid rows");
    let map = random_unimodular(rng, d);
    base.apply_unimodular(&map).expect("same dimension")
}

pub fn unit(d: usize, i: usize, sign: i64) -> Vec<Scalar> {
    let mut e = vec![s(0); d];
    e[i] = s(sign);
    e
}

/// A random centrally symmetric polytope: the hull of `±v_i`.
pub fn random_symmetric(rng: &mut ChaCha8Rng, d: usize, radius: i64, den: i64) -> Polyhedron {
    loop {
        let count = rng.gen_range(d..=d + 3);
        let mut pts = Vec::new();
        for _ in 0..count {
            let v = random_point(rng, d, -radius, radius, den);
            pts.push(v.iter().map(|x| -x).collect());
            pts.push(v);
        }
        if let Some(p) = hull(&pts) {
            return p;
        }
    }
}

pub fn abs_max(v: &[Scalar]) -> Scalar {
    v.iter().map(Scalar::abs).max().unwrap_or_else(|| s(0))
}
