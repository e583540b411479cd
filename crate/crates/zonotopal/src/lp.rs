//! Exact linear programming over the rationals.
//!
//! A small dense two-phase simplex with Bland's rule, used for chamber
//! witness points, cone membership, and bounding boxes of fiber polytopes.
//! Bland's rule guarantees termination; every number is an exact rational.

use crate::matrix::RatMatrix;
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

struct Tableau {
    // m x n coefficient block kept in canonical form w.r.t. the basis
    a: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = Rat::one() / self.a[row][col].clone();
        for v in self.a[row].iter_mut() {
            *v *= &inv;
        }
        self.rhs[row] *= &inv;
        for r in 0..self.a.len() {
            if r == row || self.a[r][col].is_zero() {
                continue;
            }
            let f = self.a[r][col].clone();
            for j in 0..self.a[r].len() {
                let delta = &f * &self.a[row][j];
                self.a[r][j] -= delta;
            }
            let delta = &f * &self.rhs[row];
            self.rhs[r] -= delta;
        }
        self.basis[row] = col;
    }

    /// Minimizes `cost . x` from the current basic feasible point.
    /// Entering and leaving variables follow Bland's rule.
    fn optimize(&mut self, cost: &[Rat], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let ncols = self.a[0].len();
            let mut entering = None;
            for j in 0..ncols {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() {
                        reduced -= &cost[bi] * &self.a[i][j];
                    }
                }
                if reduced < Rat::zero() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else { return true };
            let mut leave: Option<usize> = None;
            for i in 0..self.a.len() {
                if self.a[i][col] <= Rat::zero() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.a[i][col];
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let lr = &self.rhs[l] / &self.a[l][col];
                        ratio < lr || (ratio == lr && self.basis[i] < self.basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            let Some(row) = leave else { return false };
            self.pivot(row, col);
        }
    }

    fn solution(&self, nvars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nvars];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < nvars {
                x[bi] = self.rhs[i].clone();
            }
        }
        x
    }
}

/// Minimizes `c . x` subject to `A x = b`, `x >= 0`.
pub fn solve_standard(a: &RatMatrix, b: &[Rat], c: &[Rat]) -> LpResult {
    let m = a.nrows();
    let n = a.ncols();
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);

    // normalize to nonnegative rhs, append artificial identity block
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i] < Rat::zero();
        let mut row: Vec<Rat> = (0..n)
            .map(|j| {
                if flip {
                    -a.get(i, j).clone()
                } else {
                    a.get(i, j).clone()
                }
            })
            .collect();
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        rows.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut tab = Tableau {
        a: rows,
        rhs,
        basis: (n..n + m).collect(),
    };

    // phase 1: minimize the sum of artificials
    let mut phase1_cost = vec![Rat::zero(); n + m];
    for item in phase1_cost.iter_mut().skip(n) {
        *item = Rat::one();
    }
    assert!(tab.optimize(&phase1_cost, &|_| true), "phase 1 is bounded");
    let infeas: Rat = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bi)| bi >= n)
        .map(|(i, _)| tab.rhs[i].clone())
        .fold(Rat::zero(), |acc, v| acc + v);
    if !infeas.is_zero() {
        return LpResult::Infeasible;
    }

    // drive remaining zero-valued artificials out of the basis
    let mut drop_rows = Vec::new();
    for i in 0..tab.basis.len() {
        if tab.basis[i] < n {
            continue;
        }
        let col = (0..n).find(|&j| !tab.a[i][j].is_zero());
        match col {
            Some(j) => tab.pivot(i, j),
            None => drop_rows.push(i),
        }
    }
    for &i in drop_rows.iter().rev() {
        tab.a.remove(i);
        tab.rhs.remove(i);
        tab.basis.remove(i);
    }

    // phase 2 on original columns only
    let mut phase2_cost = c.to_vec();
    phase2_cost.extend(std::iter::repeat(Rat::zero()).take(m));
    if !tab.optimize(&phase2_cost, &|j| j < n) {
        return LpResult::Unbounded;
    }
    let x = tab.solution(n);
    let value = c
        .iter()
        .zip(&x)
        .map(|(ci, xi)| ci * xi)
        .fold(Rat::zero(), |acc, v| acc + v);
    LpResult::Optimal { value, point: x }
}

/// A point `u` with `row . u >= 1` for every row, if the open cone
/// `{u : row . u > 0}` is nonempty. Exact either way.
pub fn strict_cone_point(rows: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    if rows.is_empty() {
        return Some(Vec::new());
    }
    let d = rows[0].len();
    if d == 0 {
        return None;
    }
    // u = p - q with p, q >= 0; slack s: R(p - q) - s = 1
    let m = rows.len();
    let n = 2 * d + m;
    let mut a = RatMatrix::zeros(m, n);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            *a.get_mut(i, j) = v.clone();
            *a.get_mut(i, d + j) = -v.clone();
        }
        *a.get_mut(i, 2 * d + i) = -Rat::one();
    }
    let b = vec![Rat::one(); m];
    let c = vec![Rat::zero(); n];
    match solve_standard(&a, &b, &c) {
        LpResult::Optimal { point, .. } => Some(
            (0..d)
                .map(|j| point[j].clone() - point[d + j].clone())
                .collect(),
        ),
        _ => None,
    }
}

/// Feasibility of `{lambda in [0,1]^N : sum lambda_i x_i = u}`.
pub fn box_fiber_feasible(dim: usize, columns: &[Vec<i64>], u: &[Rat]) -> bool {
    let nv = columns.len();
    let m = dim + nv;
    let n = 2 * nv;
    let mut a = RatMatrix::zeros(m, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            *a.get_mut(i, j) = crate::rational::rat_int(v);
        }
        *a.get_mut(dim + j, j) = Rat::one();
        *a.get_mut(dim + j, nv + j) = Rat::one();
    }
    let mut b = u.to_vec();
    b.extend(std::iter::repeat(Rat::one()).take(nv));
    let c = vec![Rat::zero(); n];
    matches!(solve_standard(&a, &b, &c), LpResult::Optimal { .. })
}

/// Feasibility of `{lambda >= 0 : sum lambda_i x_i = u}` (membership in the
/// cone spanned by the columns).
pub fn cone_member(dim: usize, columns: &[Vec<i64>], u: &[Rat]) -> bool {
    let nv = columns.len();
    let a = RatMatrix::from_int_columns(dim, columns);
    let c = vec![Rat::zero(); nv];
    matches!(solve_standard(&a, u, &c), LpResult::Optimal { .. })
}

/// Minimizes `w . y` over the polyhedron `{y : R y >= r}` with `y` free.
pub fn minimize_over_polyhedron(rows: &[Vec<Rat>], rhs: &[Rat], w: &[Rat]) -> LpResult {
    let m = rows.len();
    let d = w.len();
    let n = 2 * d + m;
    let mut a = RatMatrix::zeros(m, n);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), d);
        for (j, v) in row.iter().enumerate() {
            *a.get_mut(i, j) = v.clone();
            *a.get_mut(i, d + j) = -v.clone();
        }
        *a.get_mut(i, 2 * d + i) = -Rat::one();
    }
    let mut c = Vec::with_capacity(n);
    c.extend(w.iter().cloned());
    c.extend(w.iter().map(|v| -v.clone()));
    c.extend(std::iter::repeat(Rat::zero()).take(m));
    match solve_standard(&a, rhs, &c) {
        LpResult::Optimal { value, point } => LpResult::Optimal {
            value,
            point: (0..d)
                .map(|j| point[j].clone() - point[d + j].clone())
                .collect(),
        },
        other => other,
    }
}
