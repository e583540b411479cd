//! Integer vector lists with lattice-aware matroid operations: total
//! unimodularity, deletion, contraction with an explicit integral
//! coordinate system on the quotient lattice, sign normalization, and the
//! Tutte polynomial (fast deletion-contraction plus the corank-nullity
//! oracle used to cross-check it).

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{rat_int, Rat};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// An ordered list of integer vectors in `Z^dim`. Duplicates are allowed;
/// the list need not span.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VectorList {
    dim: usize,
    vectors: Vec<Vec<i64>>,
}

impl VectorList {
    pub fn new(dim: usize, vectors: Vec<Vec<i64>>) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector {i} has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
        }
        Ok(VectorList { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, i: usize) -> Result<&Vec<i64>> {
        self.vectors.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.vectors.len(),
        })
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    /// The `dim x N` matrix whose columns are the vectors.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_int_columns(self.dim, &self.vectors)
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    pub fn is_spanning(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn require_spanning(&self) -> Result<()> {
        let rank = self.rank();
        if rank != self.dim {
            return Err(Error::NonSpanning {
                rank,
                dim: self.dim,
            });
        }
        Ok(())
    }

    /// True iff every square submatrix has determinant in `{-1, 0, 1}`.
    pub fn is_totally_unimodular(&self) -> bool {
        self.tu_witness().is_none()
    }

    /// An offending square submatrix `(rows, cols, det)` if one exists.
    pub fn tu_witness(&self) -> Option<(Vec<usize>, Vec<usize>, Rat)> {
        let m = self.matrix();
        let max_k = self.dim.min(self.vectors.len());
        for k in 1..=max_k {
            for rows in (0..self.dim).combinations(k) {
                for cols in (0..self.vectors.len()).combinations(k) {
                    let mut sub = RatMatrix::zeros(k, k);
                    for (a, &r) in rows.iter().enumerate() {
                        for (b, &c) in cols.iter().enumerate() {
                            *sub.get_mut(a, b) = m.get(r, c).clone();
                        }
                    }
                    let det = sub.det().expect("square submatrix");
                    if det.abs() > Rat::one() {
                        return Some((rows, cols, det));
                    }
                }
            }
        }
        None
    }

    pub fn require_totally_unimodular(&self) -> Result<()> {
        match self.tu_witness() {
            None => Ok(()),
            Some((rows, cols, det)) => Err(Error::NotTotallyUnimodular {
                rows,
                cols,
                det: crate::rational::format_rat(&det),
            }),
        }
    }

    /// The list with the vector at `i` removed, order preserved.
    pub fn delete(&self, i: usize) -> Result<VectorList> {
        if i >= self.vectors.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.vectors.len(),
            });
        }
        let mut vectors = self.vectors.clone();
        vectors.remove(i);
        Ok(VectorList {
            dim: self.dim,
            vectors,
        })
    }

    /// True iff removing vector `i` drops the rank.
    pub fn is_coloop(&self, i: usize) -> Result<bool> {
        Ok(self.delete(i)?.rank() < self.rank())
    }

    pub fn is_zero_vector(&self, i: usize) -> Result<bool> {
        Ok(self.get(i)?.iter().all(|&v| v == 0))
    }

    /// Contraction along the vector at `i`, with integral coordinates on the
    /// quotient lattice obtained by completing the (primitive) pivot to a
    /// lattice basis.
    pub fn contract(&self, i: usize) -> Result<Contraction> {
        let x = self.get(i)?.clone();
        if x.iter().all(|&v| v == 0) {
            return Err(Error::ZeroVector(i));
        }
        let g = x.iter().fold(0i64, |acc, &v| gcd(acc, v.abs()));
        if g != 1 {
            return Err(Error::NonPrimitive(i));
        }
        let d = self.dim;
        let map = unimodular_completion(&x);
        debug_assert_eq!(apply_int_matrix(&map, &x), unit_vector(d, d - 1));

        let mut child_vectors = Vec::with_capacity(self.vectors.len() - 1);
        for (j, v) in self.vectors.iter().enumerate() {
            if j == i {
                continue;
            }
            let w = apply_int_matrix(&map, v);
            child_vectors.push(w[..d - 1].to_vec());
        }
        let child = VectorList::new(d - 1, child_vectors)?;
        Ok(Contraction {
            parent: self.clone(),
            pivot_index: i,
            unimodular_map: map,
            child,
        })
    }

    /// Flips vectors onto one side of a generic hyperplane and drops zero
    /// vectors. The translation `t` satisfies `B_X(u) = B_X'(u + t)` and
    /// `Z(X) = Z(X') - t`, where `X'` is the returned list.
    pub fn sign_normalize(&self) -> SignNormalized {
        let ell = self.generic_functional();
        let mut list = Vec::new();
        let mut translation = vec![0i64; self.dim];
        let mut flipped = Vec::new();
        let mut zeros_dropped = 0usize;
        for (i, v) in self.vectors.iter().enumerate() {
            if v.iter().all(|&x| x == 0) {
                zeros_dropped += 1;
                continue;
            }
            let dot: i128 = v
                .iter()
                .zip(&ell)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum();
            debug_assert!(dot != 0);
            if dot < 0 {
                let neg: Vec<i64> = v.iter().map(|&x| -x).collect();
                for (t, &n) in translation.iter_mut().zip(&neg) {
                    *t += n;
                }
                list.push(neg);
                flipped.push(i);
            } else {
                list.push(v.clone());
            }
        }
        SignNormalized {
            list: VectorList {
                dim: self.dim,
                vectors: list,
            },
            translation,
            zeros_dropped,
            flipped,
        }
    }

    /// Deterministic functional `(1, M, M^2, ...)` with nonzero dot product
    /// against every nonzero vector of the list.
    fn generic_functional(&self) -> Vec<i64> {
        let max_coord = self
            .vectors
            .iter()
            .flat_map(|v| v.iter())
            .map(|&x| x.abs())
            .max()
            .unwrap_or(0);
        let mut m = 1 + max_coord;
        loop {
            let ell: Vec<i64> = (0..self.dim as u32).map(|k| m.pow(k)).collect();
            let ok = self.vectors.iter().all(|v| {
                v.iter().all(|&x| x == 0)
                    || v.iter()
                        .zip(&ell)
                        .map(|(&a, &b)| a as i128 * b as i128)
                        .sum::<i128>()
                        != 0
            });
            if ok {
                return ell;
            }
            m += 1;
        }
    }

    /// Tutte polynomial via deletion-contraction over rational columns.
    pub fn tutte(&self) -> TuttePoly {
        let cols: Vec<Vec<Rat>> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|&x| rat_int(x)).collect())
            .collect();
        let t = tutte_columns(&cols);
        debug_assert!(t.coeffs.values().all(|&c| c >= 0));
        t
    }

    /// Tutte polynomial as the corank-nullity sum over all `2^N` sublists.
    pub fn tutte_corank_nullity(&self) -> TuttePoly {
        let n = self.vectors.len();
        let full_rank = self.rank() as i64;
        let xm1 = TuttePoly::x().sub(&TuttePoly::one_poly());
        let ym1 = TuttePoly::y().sub(&TuttePoly::one_poly());
        let mut acc = TuttePoly::zero();
        for mask in 0u64..(1u64 << n) {
            let subset: Vec<Vec<i64>> = (0..n)
                .filter(|&j| mask & (1 << j) != 0)
                .map(|j| self.vectors[j].clone())
                .collect();
            let card = subset.len() as i64;
            let r = RatMatrix::from_int_columns(self.dim, &subset).rank() as i64;
            let term = xm1
                .pow((full_rank - r) as u32)
                .mul(&ym1.pow((card - r) as u32));
            acc = acc.add(&term);
        }
        acc
    }

    /// Number of bases selectable from the list and the sum of |det| over
    /// them (the lattice volume of the zonotope).
    pub fn basis_count_and_volume(&self) -> (u64, Rat) {
        let n = self.vectors.len();
        let d = self.dim;
        if d == 0 {
            // the empty selection is the unique basis of the zero space
            return (1, Rat::one());
        }
        let mut count = 0u64;
        let mut vol = Rat::zero();
        if n < d {
            return (0, vol);
        }
        for cols in (0..n).combinations(d) {
            let chosen: Vec<Vec<i64>> = cols.iter().map(|&j| self.vectors[j].clone()).collect();
            let det = RatMatrix::from_int_columns(d, &chosen)
                .det()
                .expect("square");
            if !det.is_zero() {
                count += 1;
                vol += det.abs();
            }
        }
        (count, vol)
    }

    /// Primitive normals of the hyperplanes spanned by rank-(dim-1)
    /// sublists, deduplicated up to sign. Sorted for determinism.
    pub fn hyperplane_normals(&self) -> Vec<Vec<i64>> {
        let d = self.dim;
        if d == 0 {
            return Vec::new();
        }
        let mut seen = std::collections::BTreeSet::new();
        for subset in (0..self.vectors.len()).combinations(d - 1) {
            let rows: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&j| self.vectors[j].iter().map(|&x| rat_int(x)).collect())
                .collect();
            let m = RatMatrix::from_rows(rows).unwrap_or_else(|_| RatMatrix::zeros(0, d));
            let m = if subset.is_empty() {
                RatMatrix::zeros(0, d)
            } else {
                m
            };
            if m.rank() != d - 1 {
                continue;
            }
            let kernel = m.nullspace();
            debug_assert_eq!(kernel.len(), 1);
            let normal = primitive_integer(&kernel[0]);
            seen.insert(normal);
        }
        seen.into_iter().collect()
    }
}

/// Result of sign normalization: the one-sided list, the translation that
/// relates the two box splines, and bookkeeping about what changed.
#[derive(Debug, Clone)]
pub struct SignNormalized {
    pub list: VectorList,
    pub translation: Vec<i64>,
    pub zeros_dropped: usize,
    pub flipped: Vec<usize>,
}

/// Contraction of a list along a primitive pivot vector, carrying the
/// unimodular change of coordinates that maps the pivot to the last
/// standard basis vector.
#[derive(Debug, Clone)]
pub struct Contraction {
    parent: VectorList,
    pivot_index: usize,
    unimodular_map: Vec<Vec<i64>>,
    child: VectorList,
}

impl Contraction {
    pub fn parent(&self) -> &VectorList {
        &self.parent
    }

    pub fn pivot_index(&self) -> usize {
        self.pivot_index
    }

    pub fn pivot(&self) -> &Vec<i64> {
        &self.parent.vectors[self.pivot_index]
    }

    pub fn unimodular_map(&self) -> &[Vec<i64>] {
        &self.unimodular_map
    }

    /// The child list `X/x` in integral quotient coordinates.
    pub fn child(&self) -> &VectorList {
        &self.child
    }

    /// First `d-1` rows of the unimodular map: the coordinate form of the
    /// projection onto the quotient lattice.
    pub fn quotient_map(&self) -> Vec<Vec<i64>> {
        self.unimodular_map[..self.unimodular_map.len() - 1].to_vec()
    }

    pub fn project_point(&self, z: &[i64]) -> Vec<i64> {
        let d = self.parent.dim;
        debug_assert_eq!(z.len(), d);
        self.unimodular_map[..d - 1]
            .iter()
            .map(|row| row.iter().zip(z).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn project_point_rat(&self, z: &[Rat]) -> Vec<Rat> {
        let d = self.parent.dim;
        debug_assert_eq!(z.len(), d);
        self.unimodular_map[..d - 1]
            .iter()
            .map(|row| {
                row.iter()
                    .zip(z)
                    .map(|(&a, b)| rat_int(a) * b)
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect()
    }
}

/// Bivariate polynomial with integer coefficients in the variables `x, y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuttePoly {
    coeffs: BTreeMap<(u32, u32), i64>,
}

impl TuttePoly {
    pub fn zero() -> Self {
        TuttePoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one_poly() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), 1);
        TuttePoly { coeffs }
    }

    pub fn x() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 0), 1);
        TuttePoly { coeffs }
    }

    pub fn y() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 1), 1);
        TuttePoly { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), i64> {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.coeffs {
            let v = out.coeffs.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                out.coeffs.remove(&e);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut neg = other.clone();
        for c in neg.coeffs.values_mut() {
            *c = -*c;
        }
        self.add(&neg)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TuttePoly::zero();
        for (&(a, b), &c1) in &self.coeffs {
            for (&(e, f), &c2) in &other.coeffs {
                let key = (a + e, b + f);
                let v = out.coeffs.entry(key).or_insert(0);
                *v += c1 * c2;
                if *v == 0 {
                    out.coeffs.remove(&key);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = TuttePoly::one_poly();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.coeffs
            .iter()
            .map(|(&(a, b), &c)| c * x.pow(a) * y.pow(b))
            .sum()
    }

    pub fn to_display(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        // descending degree reads naturally: x^2 + x + y
        let mut parts = Vec::new();
        for (&(a, b), &c) in self.coeffs.iter().rev() {
            let mono = match (a, b) {
                (0, 0) => String::new(),
                (1, 0) => "x".into(),
                (0, 1) => "y".into(),
                (a, 0) => format!("x^{a}"),
                (0, b) => format!("y^{b}"),
                (1, 1) => "x*y".into(),
                (a, 1) => format!("x^{a}*y"),
                (1, b) => format!("x*y^{b}"),
                (a, b) => format!("x^{a}*y^{b}"),
            };
            let part = match (c, mono.as_str()) {
                (c, "") => format!("{c}"),
                (1, m) => m.to_string(),
                (-1, m) => format!("-{m}"),
                (c, m) => format!("{c}*{m}"),
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

fn tutte_columns(cols: &[Vec<Rat>]) -> TuttePoly {
    if cols.is_empty() {
        return TuttePoly::one_poly();
    }
    let e = &cols[0];
    let rest: Vec<Vec<Rat>> = cols[1..].to_vec();
    if e.iter().all(|v| v.is_zero()) {
        return TuttePoly::y().mul(&tutte_columns(&rest));
    }
    let rank_of = |cs: &[Vec<Rat>]| -> usize {
        if cs.is_empty() {
            return 0;
        }
        RatMatrix::from_rows(cs.to_vec()).unwrap().rank()
    };
    let contracted = contract_columns(e, &rest);
    if rank_of(&rest) < rank_of(cols) {
        TuttePoly::x().mul(&tutte_columns(&contracted))
    } else {
        tutte_columns(&rest).add(&tutte_columns(&contracted))
    }
}

/// Matroid contraction on the matrix representation: eliminate the pivot's
/// supporting coordinate from every other column, then drop it.
fn contract_columns(e: &[Rat], others: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let r = e.iter().position(|v| !v.is_zero()).expect("nonzero pivot");
    others
        .iter()
        .map(|v| {
            let f = &v[r] / &e[r];
            v.iter()
                .enumerate()
                .filter(|&(i, _)| i != r)
                .map(|(i, vi)| vi - &f * &e[i])
                .collect()
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Extended gcd: returns `(g, a, b)` with `a*x + b*y == g >= 0`.
fn xgcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y == 0 {
        if x >= 0 {
            (x, 1, 0)
        } else {
            (-x, -1, 0)
        }
    } else {
        let (g, a, b) = xgcd(y, x % y);
        (g, b, a - (x / y) * b)
    }
}

fn unit_vector(dim: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0i64; dim];
    v[k] = 1;
    v
}

fn apply_int_matrix(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum())
        .collect()
}

/// A unimodular integer matrix `T` with `T x = e_d` for a primitive `x`.
fn unimodular_completion(x: &[i64]) -> Vec<Vec<i64>> {
    let d = x.len();
    let mut t: Vec<Vec<i64>> = (0..d).map(|i| unit_vector(d, i)).collect();
    let mut y = x.to_vec();
    loop {
        let nz: Vec<usize> = (0..d).filter(|&i| y[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let (i, j) = (nz[0], nz[1]);
        let (g, a, b) = xgcd(y[i], y[j]);
        let (qi, qj) = (y[i] / g, y[j] / g);
        let row_i: Vec<i64> = (0..d).map(|k| a * t[i][k] + b * t[j][k]).collect();
        let row_j: Vec<i64> = (0..d).map(|k| -qj * t[i][k] + qi * t[j][k]).collect();
        t[i] = row_i;
        t[j] = row_j;
        y[i] = g;
        y[j] = 0;
    }
    let k = (0..d).find(|&i| y[i] != 0).expect("primitive vector");
    assert!(y[k].abs() == 1, "pivot must be primitive");
    if y[k] < 0 {
        for v in t[k].iter_mut() {
            *v = -*v;
        }
    }
    t.swap(k, d - 1);
    t
}

/// Clears denominators and common factors; flips so the first nonzero
/// entry is positive.
pub(crate) fn primitive_integer(v: &[Rat]) -> Vec<i64> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let mut lcm = BigInt::one();
    for r in v {
        lcm = num_integer::lcm(lcm, r.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * &lcm / r.denom()).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = num_integer::gcd(g, n.clone());
    }
    let scaled: Vec<BigInt> = if g.is_zero() {
        ints
    } else {
        ints.iter().map(|n| n / &g).collect()
    };
    let flip = scaled
        .iter()
        .find(|n| !n.is_zero())
        .map(|n| n < &BigInt::zero())
        .unwrap_or(false);
    scaled
        .iter()
        .map(|n| {
            let n = if flip { -n.clone() } else { n.clone() };
            n.to_i64().expect("normal fits in i64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn vl(dim: usize, vs: &[&[i64]]) -> VectorList {
        VectorList::new(dim, vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    fn fig1() -> VectorList {
        vl(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn tu_check() {
        assert!(fig1().is_totally_unimodular());
        assert!(!vl(2, &[&[1, 1], &[1, -1]]).is_totally_unimodular());
        assert!(!vl(1, &[&[2]]).is_totally_unimodular());
        let w = vl(2, &[&[1, 1], &[1, -1]]).tu_witness().unwrap();
        assert_eq!(w.2.abs(), rat_int(2));
    }

    #[test]
    fn delete_examples() {
        assert_eq!(fig1().delete(2).unwrap(), vl(2, &[&[1, 0], &[0, 1]]));
        let one = vl(1, &[&[1]]);
        let empty = one.delete(0).unwrap();
        assert_eq!(empty.len(), 0);
        assert_eq!(empty.dim(), 1);
        assert_eq!(
            vl(1, &[&[1], &[1], &[1]]).delete(0).unwrap(),
            vl(1, &[&[1], &[1]])
        );
        assert!(one.delete(5).is_err());
    }

    #[test]
    fn coloop_examples() {
        assert!(vl(2, &[&[1, 0], &[0, 1]]).is_coloop(0).unwrap());
        assert!(!fig1().is_coloop(2).unwrap());
        assert!(!vl(1, &[&[1], &[1]]).is_coloop(0).unwrap());
    }

    #[test]
    fn contraction_examples() {
        // quotient by span(1,1) sends (1,0) and (0,1) to opposite classes
        let c = fig1().contract(2).unwrap();
        assert_eq!(c.child().dim(), 1);
        let a = c.child().vectors()[0].clone();
        let b = c.child().vectors()[1].clone();
        assert_eq!(a[0].abs(), 1);
        assert_eq!(b[0], -a[0]);
        // coordinate projection case
        let c2 = vl(2, &[&[1, 0], &[0, 1]]).contract(0).unwrap();
        assert_eq!(c2.child().vectors(), &[vec![1]]);
        // rank-1 collapse to dimension zero
        let c3 = vl(1, &[&[1], &[1], &[1]]).contract(1).unwrap();
        assert_eq!(c3.child().dim(), 0);
        assert_eq!(c3.child().len(), 2);
        // errors
        assert!(vl(2, &[&[0, 0]]).contract(0).is_err());
        assert!(vl(1, &[&[2]]).contract(0).is_err());
    }

    #[test]
    fn contraction_map_is_unimodular() {
        for list in [fig1(), vl(3, &[&[1, 0, 0], &[1, -1, 0], &[0, 1, -1]])] {
            for i in 0..list.len() {
                let c = list.contract(i).unwrap();
                let m = RatMatrix::from_rows(
                    c.unimodular_map()
                        .iter()
                        .map(|row| row.iter().map(|&x| rat_int(x)).collect())
                        .collect(),
                )
                .unwrap();
                assert_eq!(m.det().unwrap().abs(), rat_int(1));
                assert_eq!(
                    apply_int_matrix(c.unimodular_map(), c.pivot()),
                    unit_vector(list.dim(), list.dim() - 1)
                );
            }
        }
    }

    #[test]
    fn tutte_examples() {
        let t = fig1().tutte();
        // x^2 + x + y, from the corank-nullity sum over all 8 sublists
        let mut expected = BTreeMap::new();
        expected.insert((2, 0), 1);
        expected.insert((1, 0), 1);
        expected.insert((0, 1), 1);
        assert_eq!(t.coeffs(), &expected);
        assert_eq!(t.eval(0, 1), 1);
        assert_eq!(t.eval(1, 1), 3);
        assert_eq!(t.to_display(), "x^2 + x + y");
        assert_eq!(fig1().tutte_corank_nullity(), t);
    }

    #[test]
    fn tutte_handles_loops_and_coloops() {
        let list = vl(2, &[&[1, 0], &[0, 0], &[0, 1], &[0, 1]]);
        assert_eq!(list.tutte(), list.tutte_corank_nullity());
    }

    #[test]
    fn sign_normalize_examples() {
        let (unchanged, t) = {
            let r = fig1().sign_normalize();
            (r.list, r.translation)
        };
        assert_eq!(unchanged, fig1());
        assert_eq!(t, vec![0, 0]);

        let r = vl(2, &[&[-1, 0], &[0, 1]]).sign_normalize();
        assert_eq!(r.list, vl(2, &[&[1, 0], &[0, 1]]));
        // translation is the sum of the flipped (post-flip) vectors, so that
        // Z(X) = Z(X') - t: here Z(X) = [-1,0]x[0,1] and Z(X') = [0,1]^2.
        assert_eq!(r.translation, vec![1, 0]);
        assert_eq!(r.flipped, vec![0]);

        let r2 = vl(1, &[&[1], &[-1]]).sign_normalize();
        assert_eq!(r2.list, vl(1, &[&[1], &[1]]));
        assert_eq!(r2.translation, vec![1]);

        let r3 = vl(1, &[&[0], &[1]]).sign_normalize();
        assert_eq!(r3.zeros_dropped, 1);
        assert_eq!(r3.list.len(), 1);
    }

    #[test]
    fn sign_normalize_idempotent() {
        for list in [
            fig1(),
            vl(2, &[&[-1, 0], &[0, 1], &[1, -1]]),
            vl(3, &[&[1, 0, 0], &[-1, 1, 0], &[0, -1, 1]]),
        ] {
            let once = list.sign_normalize();
            let twice = once.list.sign_normalize();
            assert_eq!(once.list, twice.list);
            assert_eq!(twice.translation, vec![0; list.dim()]);
        }
    }

    #[test]
    fn hyperplane_normals_examples() {
        let normals = fig1().hyperplane_normals();
        assert_eq!(normals, vec![vec![0, 1], vec![1, -1], vec![1, 0]]);
        // d = 1: the only hyperplane is the origin
        assert_eq!(vl(1, &[&[1], &[1]]).hyperplane_normals(), vec![vec![1]]);
    }

    #[test]
    fn basis_count_matches_tutte() {
        let (count, vol) = fig1().basis_count_and_volume();
        assert_eq!(count, 3);
        assert_eq!(vol, rat_int(3));
        assert_eq!(count as i64, fig1().tutte().eval(1, 1));
    }

    fn arbitrary_list() -> impl Strategy<Value = VectorList> {
        (1usize..=3).prop_flat_map(|d| {
            proptest::collection::vec(proptest::collection::vec(-1i64..=1, d), 0..=5)
                .prop_map(move |vs| VectorList::new(d, vs).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tutte_recursion_matches_oracle(list in arbitrary_list()) {
            prop_assert_eq!(list.tutte(), list.tutte_corank_nullity());
        }

        #[test]
        fn contraction_drops_rank_by_one(list in arbitrary_list()) {
            for i in 0..list.len() {
                if list.is_zero_vector(i).unwrap() || list.is_coloop(i).unwrap() {
                    continue;
                }
                if let Ok(c) = list.contract(i) {
                    prop_assert_eq!(c.child().rank() + 1, list.rank());
                }
            }
        }

        #[test]
        fn tu_preserved_by_contraction(list in arbitrary_list()) {
            if !list.is_totally_unimodular() {
                return Ok(());
            }
            for i in 0..list.len() {
                if list.is_zero_vector(i).unwrap() {
                    continue;
                }
                let c = list.contract(i).unwrap();
                prop_assert!(c.child().is_totally_unimodular());
            }
        }
    }
}
