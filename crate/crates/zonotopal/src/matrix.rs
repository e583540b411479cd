//! Dense matrices over the rationals with exact Gaussian elimination.
//!
//! Pivoting always selects the largest-magnitude entry in the current
//! column block, which keeps intermediate numerators and denominators
//! small; there is no tolerance anywhere in this module.

use crate::error::{Error, Result};
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<Rat>),
    NoSolution,
    NonUnique,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given integer vectors.
    pub fn from_int_columns(dim: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = RatMatrix::zeros(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                *m.get_mut(i, j) = crate::rational::rat_int(v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * other.get(k, j);
                    *out.get_mut(i, j) += term;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} cols, vector has {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect())
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            // largest-magnitude pivot in this column at or below pr
            let mut best: Option<usize> = None;
            for r in pr..self.rows {
                if !self.get(r, pc).is_zero()
                    && best.map_or(true, |b| self.get(r, pc).abs() > self.get(b, pc).abs())
                {
                    best = Some(r);
                }
            }
            let Some(r) = best else { continue };
            self.swap_rows(pr, r);
            let inv = {
                let p = self.get(pr, pc).clone();
                Rat::one() / p
            };
            for j in pc..self.cols {
                let v = self.get(pr, j) * &inv;
                *self.get_mut(pr, j) = v;
            }
            for r2 in 0..self.rows {
                if r2 == pr || self.get(r2, pc).is_zero() {
                    continue;
                }
                let factor = self.get(r2, pc).clone();
                for j in pc..self.cols {
                    let delta = &factor * self.get(pr, j);
                    *self.get_mut(r2, j) -= delta;
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Exact determinant via elimination with largest-magnitude pivoting.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for k in 0..n {
            let mut best: Option<usize> = None;
            for r in k..n {
                if !m.get(r, k).is_zero()
                    && best.map_or(true, |b| m.get(r, k).abs() > m.get(b, k).abs())
                {
                    best = Some(r);
                }
            }
            let Some(r) = best else {
                return Ok(Rat::zero());
            };
            if r != k {
                m.swap_rows(k, r);
                det = -det;
            }
            let pivot = m.get(k, k).clone();
            det *= &pivot;
            for r2 in k + 1..n {
                if m.get(r2, k).is_zero() {
                    continue;
                }
                let factor = m.get(r2, k) / &pivot;
                for j in k..n {
                    let delta = &factor * m.get(k, j);
                    *m.get_mut(r2, j) -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Exact solve of `A x = b`: a unique solution, or a tag saying why not.
    pub fn solve(&self, b: &[Rat]) -> Result<SolveOutcome> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, rhs has {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.get_mut(i, j) = self.get(i, j).clone();
            }
            *aug.get_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(SolveOutcome::NoSolution);
        }
        if pivots.len() < self.cols {
            return Ok(SolveOutcome::NonUnique);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Ok(SolveOutcome::Unique(x))
    }

    /// A particular solution of `A x = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve_any(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, rhs has {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.get_mut(i, j) = self.get(i, j).clone();
            }
            *aug.get_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Basis of the right nullspace `{x : A x = 0}`, one vector per free
    /// column, each with a 1 in its free coordinate.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 3).rank(), 0);
        // row reduction by hand: two independent rows
        assert_eq!(m(&[&[1, 0, 1], &[0, 1, 1]]).rank(), 2);
    }

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::identity(4).det().unwrap(), rat_int(1));
        assert_eq!(m(&[&[1, 1], &[1, -1]]).det().unwrap(), rat_int(-2));
        assert_eq!(m(&[&[1, 0], &[1, 1]]).det().unwrap(), rat_int(1));
        assert!(RatMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat_int(2), rat_int(0)];
        assert_eq!(
            RatMatrix::identity(2).solve(&b).unwrap(),
            SolveOutcome::Unique(b.clone())
        );
        // 2x2 elimination by hand
        assert_eq!(
            m(&[&[1, 1], &[1, -1]]).solve(&b).unwrap(),
            SolveOutcome::Unique(vec![rat_int(1), rat_int(1)])
        );
        assert_eq!(
            m(&[&[1, 1], &[2, 2]])
                .solve(&[rat_int(1), rat_int(3)])
                .unwrap(),
            SolveOutcome::NoSolution
        );
        assert_eq!(
            m(&[&[1, 1], &[2, 2]])
                .solve(&[rat_int(1), rat_int(2)])
                .unwrap(),
            SolveOutcome::NonUnique
        );
        assert!(m(&[&[1, 1]]).solve(&b).is_err());
    }

    #[test]
    fn nullspace_annihilates() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn small_square(n: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec(small_rat(), n * n)
            .prop_map(move |e| RatMatrix::new(n, n, e).unwrap())
    }

    proptest! {
        #[test]
        fn det_multiplicative(a in small_square(3), b in small_square(3)) {
            let ab = a.matmul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn rank_transpose(a in small_square(3)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn solve_remultiplies(a in small_square(3), bx in proptest::collection::vec(small_rat(), 3)) {
            if let SolveOutcome::Unique(x) = a.solve(&bx).unwrap() {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), bx);
            }
        }
    }
}
