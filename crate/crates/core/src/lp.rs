//! Exact two-phase simplex over [`Scalar`] with Bland's rule.
//!
//! Solves `max c·x  s.t.  A x ≤ b` with `x` free. Free variables are split as
//! `x = x⁺ - x⁻`; the first phase uses a single auxiliary variable entering
//! on the most violated row.

use crate::num::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Scalar, point: Vec<Scalar> },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Scalar> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    obj: Vec<Scalar>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Scalar {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Scalar>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Reduced costs for `costs` under the current basis; the last entry
    /// holds minus the current objective value.
    fn reprice(&mut self, costs: &[Scalar]) {
        let mut obj: Vec<Scalar> = costs.to_vec();
        obj.push(Scalar::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o = &*o - &(cb * x);
                }
            }
        }
        self.obj = obj;
    }

    /// Runs Bland's rule to optimality. Returns `false` on unboundedness.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn value_of(&self, var: usize) -> Scalar {
        self.basis.iter().position(|&b| b == var).map_or_else(Scalar::zero, |i| self.rhs(i).clone())
    }
}

/// `max objective·x` subject to `rows[i]·x ≤ rhs[i]`.
pub fn maximize(rows: &[Vec<Scalar>], rhs: &[Scalar], objective: &[Scalar]) -> LpOutcome {
    let n = objective.len();
    let m = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    if m == 0 {
        return if objective.iter().all(Scalar::is_zero) {
            LpOutcome::Optimal { value: Scalar::zero(), point: vec![Scalar::zero(); n] }
        } else {
            LpOutcome::Unbounded
        };
    }
    // columns: x⁺ (n), x⁻ (n), slacks (m), auxiliary (1)
    let aux = 2 * n + m;
    let ncols = aux + 1;
    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        basis: (0..m).map(|i| 2 * n + i).collect(),
        obj: vec![Scalar::zero(); ncols + 1],
        ncols,
    };
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let mut r = Vec::with_capacity(ncols + 1);
        r.extend(row.iter().cloned());
        r.extend(row.iter().map(|x| -x));
        r.extend((0..m).map(|j| if j == i { Scalar::one() } else { Scalar::zero() }));
        r.push(-Scalar::one());
        r.push(b.clone());
        t.rows.push(r);
    }

    let most_negative = (0..m).filter(|&i| t.rhs(i).is_negative()).min_by(|&a, &b| t.rhs(a).cmp(t.rhs(b)));
    if let Some(l) = most_negative {
        let mut costs = vec![Scalar::zero(); ncols];
        costs[aux] = -Scalar::one();
        t.pivot(l, aux);
        t.reprice(&costs);
        t.optimize(ncols);
        if !t.value_of(aux).is_zero() {
            return LpOutcome::Infeasible;
        }
        if let Some(r) = t.basis.iter().position(|&b| b == aux) {
            match (0..aux).find(|&j| !t.rows[r][j].is_zero()) {
                Some(c) => t.pivot(r, c),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            }
        }
    }
    // retire the auxiliary column by zeroing it
    for row in t.rows.iter_mut() {
        row[aux] = Scalar::zero();
    }

    let mut costs = vec![Scalar::zero(); ncols];
    for j in 0..n {
        costs[j] = objective[j].clone();
        costs[n + j] = -&objective[j];
    }
    t.reprice(&costs);
    if !t.optimize(aux) {
        return LpOutcome::Unbounded;
    }
    let point: Vec<Scalar> = (0..n).map(|j| &t.value_of(j) - &t.value_of(n + j)).collect();
    let value = -&t.obj[ncols];
    LpOutcome::Optimal { value, point }
}

/// Some point of `{x : A x ≤ b}`, if nonempty.
pub fn feasible_point(rows: &[Vec<Scalar>], rhs: &[Scalar], dim: usize) -> Option<Vec<Scalar>> {
    match maximize(rows, rhs, &vec![Scalar::zero(); dim]) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from(n)
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| s(x)).collect()
    }

    #[test]
    fn bounded_square() {
        let rows = vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])];
        let rhs = v(&[1, 0, 1, 0]);
        match maximize(&rows, &rhs, &v(&[1, 1])) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, s(2));
                assert_eq!(point, v(&[1, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_phase_one() {
        // x >= 2, y >= 3, x + y <= 10; minimize x + y
        let rows = vec![v(&[-1, 0]), v(&[0, -1]), v(&[1, 1])];
        let rhs = v(&[-2, -3, 10]);
        assert_eq!(maximize(&rows, &rhs, &v(&[-1, -1])).value(), Some(&s(-5)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = vec![v(&[1]), v(&[-1])];
        assert_eq!(maximize(&rows, &v(&[0, -1]), &v(&[0])), LpOutcome::Infeasible);
        let rows = vec![v(&[-1, 0])];
        assert_eq!(maximize(&rows, &v(&[0]), &v(&[0, 1])), LpOutcome::Unbounded);
        assert_eq!(maximize(&[], &[], &v(&[0, 0])).value(), Some(&s(0)));
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // many constraints tight at the origin
        let rows = vec![v(&[1, 1]), v(&[1, 2]), v(&[2, 1]), v(&[-1, 0]), v(&[0, -1]), v(&[1, -1]), v(&[-1, 1])];
        let rhs = v(&[0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(maximize(&rows, &rhs, &v(&[1, 1])).value(), Some(&s(0)));
    }

    #[test]
    fn irrational_objective() {
        let r2 = Scalar::sqrt_of(2).unwrap();
        let rows = vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])];
        let rhs = v(&[1, 1, 1, 1]);
        let value = maximize(&rows, &rhs, &[s(1), r2.clone()]).value().cloned().unwrap();
        assert_eq!(value, &s(1) + &r2);
    }
}
