//! The interpolation problem: reconstruct the unique internal-space
//! polynomial whose derivative of the box spline matches prescribed values
//! on the interior lattice points of the zonotope.
//!
//! Two independent solvers are provided. The direct solver assembles and
//! solves the square collocation system over the internal basis. The
//! recursive solver peels one vector at a time: solve on the contraction,
//! lift through a section, strip the lifted part, invert the backward
//! difference along the pivot fiber by prefix sums, and recurse on the
//! deletion. Both must agree exactly.

use crate::error::{Error, Result};
use crate::matrix::{RatMatrix, SolveOutcome};
use crate::poly::MultiPoly;
use crate::pspace::{internal_space, project_section, PSpaceBasis};
use crate::rational::{rat_int, Rat};
use crate::spline::{build_box, cardinal_derivative, PiecewiseSpline};
use crate::vectorlist::{Contraction, VectorList};
use crate::zonotope::{interior_lattice_points, LatticePointSet};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Finitely supported rational-valued function on the integer lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFunction {
    dim: usize,
    values: BTreeMap<Vec<i64>, Rat>,
}

impl GridFunction {
    pub fn new(dim: usize) -> Self {
        GridFunction {
            dim,
            values: BTreeMap::new(),
        }
    }

    pub fn from_pairs(dim: usize, pairs: Vec<(Vec<i64>, Rat)>) -> Result<Self> {
        let mut f = GridFunction::new(dim);
        for (p, v) in pairs {
            if p.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "grid point {p:?} in dimension {dim}"
                )));
            }
            f.add_value(p, v);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, p: &[i64]) -> Rat {
        self.values.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds into the value at `p`; entries that become zero are dropped.
    pub fn add_value(&mut self, p: Vec<i64>, v: Rat) {
        if v.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.values.entry(p) {
            Entry::Vacant(slot) => {
                slot.insert(v);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += v;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.values.iter()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, k: &Rat) -> GridFunction {
        let mut out = GridFunction::new(self.dim);
        for (p, v) in &self.values {
            out.add_value(p.clone(), v * k);
        }
        out
    }

    pub fn add(&self, other: &GridFunction) -> GridFunction {
        let mut out = self.clone();
        for (p, v) in &other.values {
            out.add_value(p.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &GridFunction) -> GridFunction {
        self.add(&other.scale(&rat_int(-1)))
    }
}

/// Backward difference along `x`: `f(z) - f(z - x)`.
pub fn nabla(f: &GridFunction, x: &[i64]) -> GridFunction {
    let mut out = GridFunction::new(f.dim());
    for (z, v) in f.support() {
        out.add_value(z.clone(), v.clone());
        let shifted: Vec<i64> = z.iter().zip(x).map(|(&a, &b)| a + b).collect();
        out.add_value(shifted, -v.clone());
    }
    out
}

/// Fiber sums along the pivot direction, in the contraction's integral
/// quotient coordinates.
pub fn sigma(f: &GridFunction, contraction: &Contraction) -> GridFunction {
    let mut out = GridFunction::new(contraction.child().dim());
    for (z, v) in f.support() {
        out.add_value(contraction.project_point(z), v.clone());
    }
    out
}

/// Inverse of `nabla` along `x` on functions summing to zero on every
/// fiber: `h(z) = sum_{k >= 0} g(z - k x)`.
fn nabla_inverse(g: &GridFunction, x: &[i64]) -> GridFunction {
    let mut out = GridFunction::new(g.dim());
    if g.is_zero() {
        return out;
    }
    // bounding box of the support limits the prefix-sum depth
    let dim = g.dim();
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    for (z, _) in g.support() {
        for j in 0..dim {
            lo[j] = lo[j].min(z[j]);
            hi[j] = hi[j].max(z[j]);
        }
    }
    let inside = |p: &[i64]| p.iter().enumerate().all(|(j, &v)| lo[j] <= v && v <= hi[j]);
    for (z, _) in g.support() {
        let mut acc = Rat::zero();
        let mut point = z.clone();
        loop {
            acc += g.get(&point);
            for (c, &xi) in point.iter_mut().zip(x) {
                *c -= xi;
            }
            if !inside(&point) {
                break;
            }
        }
        out.add_value(z.clone(), acc);
    }
    out
}

/// Solution of the interpolation problem: the polynomial, its coordinates
/// in the canonical internal basis, and the attained values.
#[derive(Debug, Clone)]
pub struct Interpolant {
    pub poly: MultiPoly,
    pub internal_coords: Vec<Rat>,
    pub certificate: Vec<(Vec<i64>, Rat)>,
}

/// Pivot selection order for the recursive solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    FirstNonColoop,
    LastNonColoop,
}

/// Collocation matrix of the cardinal system: entry `(i, j)` is the
/// `(i-1)`-th derivative of the cardinal B-spline of `n+1` ones at `j`.
#[derive(Debug, Clone)]
pub struct CardinalMatrix {
    pub n: usize,
    pub entries: RatMatrix,
}

pub fn cardinal_matrix(n: usize) -> CardinalMatrix {
    assert!(n >= 1);
    let mut entries = RatMatrix::zeros(n, n);
    for i in 1..=n {
        for j in 1..=n {
            *entries.get_mut(i - 1, j - 1) = cardinal_derivative(n + 1, i - 1, &rat_int(j as i64));
        }
    }
    CardinalMatrix { n, entries }
}

type CacheKey = (usize, Vec<Vec<i64>>);

fn cache_key(list: &VectorList) -> CacheKey {
    let mut vs = list.vectors().to_vec();
    vs.sort();
    (list.dim(), vs)
}

/// Shared computation context. Internal bases, box splines, and interior
/// point sets are cached by list content (order-independent, since all
/// three are invariant under permutations of the list).
#[derive(Default)]
pub struct Analyzer {
    internal: BTreeMap<CacheKey, Arc<PSpaceBasis>>,
    splines: BTreeMap<CacheKey, Arc<PiecewiseSpline>>,
    points: BTreeMap<CacheKey, Arc<LatticePointSet>>,
}

impl Analyzer {
    pub fn new() -> Self {
        Analyzer::default()
    }

    pub fn internal_basis(&mut self, list: &VectorList) -> Result<Arc<PSpaceBasis>> {
        let key = cache_key(list);
        if let Some(b) = self.internal.get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(internal_space(list)?);
        self.internal.insert(key, b.clone());
        Ok(b)
    }

    pub fn box_spline(&mut self, list: &VectorList) -> Result<Arc<PiecewiseSpline>> {
        let key = cache_key(list);
        if let Some(s) = self.splines.get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(build_box(list)?);
        self.splines.insert(key, s.clone());
        Ok(s)
    }

    pub fn interior_points(&mut self, list: &VectorList) -> Result<Arc<LatticePointSet>> {
        let key = cache_key(list);
        if let Some(p) = self.points.get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(interior_lattice_points(list)?);
        self.points.insert(key, p.clone());
        Ok(p)
    }

    /// The grid function `z -> p(D) B_X(z)` on the interior lattice points.
    pub fn gamma(&mut self, list: &VectorList, p: &MultiPoly) -> Result<GridFunction> {
        list.require_spanning()?;
        list.require_totally_unimodular()?;
        let basis = self.internal_basis(list)?;
        if !basis.contains(p) {
            return Err(Error::MembershipFailure);
        }
        self.gamma_unchecked(list, p)
    }

    fn gamma_unchecked(&mut self, list: &VectorList, p: &MultiPoly) -> Result<GridFunction> {
        let points = self.interior_points(list)?;
        let spline = self.box_spline(list)?;
        let applied = spline.apply(p)?;
        let mut out = GridFunction::new(list.dim());
        for z in points.iter() {
            let zr: Vec<Rat> = z.iter().map(|&v| rat_int(v)).collect();
            out.add_value(z.clone(), applied.eval(&zr)?);
        }
        Ok(out)
    }

    fn check_inputs(&mut self, list: &VectorList, f: &GridFunction) -> Result<()> {
        list.require_spanning()?;
        list.require_totally_unimodular()?;
        if f.dim() != list.dim() {
            return Err(Error::DimensionMismatch(format!(
                "values in dimension {}, list in dimension {}",
                f.dim(),
                list.dim()
            )));
        }
        let points = self.interior_points(list)?;
        for (z, _) in f.support() {
            if !points.contains(z) {
                return Err(Error::SupportViolation { point: z.clone() });
            }
        }
        Ok(())
    }

    /// Direct collocation solve over the internal basis.
    pub fn solve_direct(&mut self, list: &VectorList, f: &GridFunction) -> Result<Interpolant> {
        self.check_inputs(list, f)?;
        let basis = self.internal_basis(list)?;
        let points = self.interior_points(list)?;
        let m = points.len();
        if basis.dimension() != m {
            return Err(Error::SingularSystem);
        }
        if m == 0 {
            return Ok(Interpolant {
                poly: MultiPoly::zero(list.dim()),
                internal_coords: Vec::new(),
                certificate: Vec::new(),
            });
        }
        let spline = self.box_spline(list)?;
        let basis_polys = basis.basis();
        let mut a = RatMatrix::zeros(m, m);
        for (i, b) in basis_polys.iter().enumerate() {
            let applied = spline.apply(b)?;
            for (j, z) in points.iter().enumerate() {
                let zr: Vec<Rat> = z.iter().map(|&v| rat_int(v)).collect();
                *a.get_mut(j, i) = applied.eval(&zr)?;
            }
        }
        let rhs: Vec<Rat> = points.iter().map(|z| f.get(z)).collect();
        let coords = match a.solve(&rhs)? {
            SolveOutcome::Unique(c) => c,
            _ => return Err(Error::SingularSystem),
        };
        let poly = basis.combination(&coords)?;
        let certificate = points.iter().map(|z| (z.clone(), f.get(z))).collect();
        Ok(Interpolant {
            poly,
            internal_coords: coords,
            certificate,
        })
    }

    /// Deletion-contraction solver; must agree with `solve_direct` exactly.
    pub fn solve_recursive(&mut self, list: &VectorList, f: &GridFunction) -> Result<Interpolant> {
        self.solve_recursive_with_rule(list, f, PivotRule::FirstNonColoop)
    }

    pub fn solve_recursive_with_rule(
        &mut self,
        list: &VectorList,
        f: &GridFunction,
        rule: PivotRule,
    ) -> Result<Interpolant> {
        self.check_inputs(list, f)?;
        let poly = self.solve_rec(list, f, rule)?;
        let basis = self.internal_basis(list)?;
        let internal_coords = basis.coordinates(&poly).ok_or(Error::MembershipFailure)?;
        // certificate: the solution reproduces the data
        let attained = self.gamma_unchecked(list, &poly)?;
        let points = self.interior_points(list)?;
        let mut certificate = Vec::new();
        for z in points.iter() {
            let got = attained.get(z);
            if got != f.get(z) {
                return Err(Error::Invariant(
                    "recursive solution failed to reproduce the data".into(),
                ));
            }
            certificate.push((z.clone(), got));
        }
        Ok(Interpolant {
            poly,
            internal_coords,
            certificate,
        })
    }

    fn solve_rec(
        &mut self,
        list: &VectorList,
        f: &GridFunction,
        rule: PivotRule,
    ) -> Result<MultiPoly> {
        let d = list.dim();
        let points = self.interior_points(list)?;
        if points.is_empty() {
            // coloops or an empty interior force the zero solution
            if !f.is_zero() {
                return Err(Error::SupportViolation {
                    point: f.support().next().unwrap().0.clone(),
                });
            }
            return Ok(MultiPoly::zero(d));
        }
        if d == 0 {
            return Ok(MultiPoly::constant(0, f.get(&[])));
        }
        if d == 1 {
            return self.solve_cardinal(list, f);
        }

        let pivot = self.select_pivot(list, rule)?;
        let contraction = list.contract(pivot)?;
        let x = contraction.pivot().clone();

        // solve downstairs and lift through a section of the projection
        let fbar = sigma(f, &contraction);
        let qbar = self.solve_rec(contraction.child(), &fbar, rule)?;
        let basis = self.internal_basis(list)?;
        let section = project_section(&basis, &contraction)?;
        let qbar_coords = section
            .quotient
            .coordinates(&qbar)
            .ok_or(Error::MembershipFailure)?;
        let mut lifted = MultiPoly::zero(d);
        for (c, lift) in qbar_coords.iter().zip(&section.lifts) {
            lifted = lifted.add(&lift.scale(c));
        }

        // the remainder lies in the image of the backward difference
        let g = f.sub(&self.gamma_unchecked(list, &lifted)?);
        if !sigma(&g, &contraction).is_zero() {
            return Err(Error::Invariant(
                "remainder escapes the kernel of the fiber sum".into(),
            ));
        }
        let h = nabla_inverse(&g, &x);
        let deleted = list.delete(pivot)?;
        let deleted_points = self.interior_points(&deleted)?;
        for (z, _) in h.support() {
            if !deleted_points.contains(z) {
                return Err(Error::Invariant(
                    "difference preimage escapes the deleted interior".into(),
                ));
            }
        }
        let r = self.solve_rec(&deleted, &h, rule)?;
        Ok(lifted.add(&MultiPoly::linear_form(&x).mul(&r)))
    }

    fn select_pivot(&mut self, list: &VectorList, rule: PivotRule) -> Result<usize> {
        let order: Vec<usize> = match rule {
            PivotRule::FirstNonColoop => (0..list.len()).collect(),
            PivotRule::LastNonColoop => (0..list.len()).rev().collect(),
        };
        for i in order {
            if !list.is_zero_vector(i)? && !list.is_coloop(i)? {
                return Ok(i);
            }
        }
        Err(Error::Invariant(
            "no admissible pivot in a list with nonempty interior".into(),
        ))
    }

    /// One-dimensional base case: after sign normalization the list is all
    /// ones and the collocation matrix is the cardinal matrix.
    fn solve_cardinal(&mut self, list: &VectorList, f: &GridFunction) -> Result<MultiPoly> {
        let sn = list.sign_normalize();
        let t = sn.translation[0];
        let n = sn.list.len() - 1; // number of interior points
        debug_assert!(n >= 1);
        let m = cardinal_matrix(n);
        // values in normalized coordinates: f'(w) = f(w - t)
        let rhs: Vec<Rat> = (1..=n as i64).map(|w| f.get(&[w - t])).collect();
        let coords = match m.entries.transpose().solve(&rhs)? {
            SolveOutcome::Unique(c) => c,
            _ => return Err(Error::SingularSystem),
        };
        let mut poly = MultiPoly::zero(1);
        for (i, c) in coords.iter().enumerate() {
            poly = poly.add(&MultiPoly::monomial(1, vec![i as u32], c.clone()));
        }
        Ok(poly)
    }
}

/// One-shot wrappers with a fresh cache.
pub fn gamma(list: &VectorList, p: &MultiPoly) -> Result<GridFunction> {
    Analyzer::new().gamma(list, p)
}

pub fn solve_direct(list: &VectorList, f: &GridFunction) -> Result<Interpolant> {
    Analyzer::new().solve_direct(list, f)
}

pub fn solve_recursive(list: &VectorList, f: &GridFunction) -> Result<Interpolant> {
    Analyzer::new().solve_recursive(list, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn vl(dim: usize, vs: &[&[i64]]) -> VectorList {
        VectorList::new(dim, vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    fn fig1() -> VectorList {
        vl(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    fn ones(n: usize) -> VectorList {
        VectorList::new(1, vec![vec![1]; n]).unwrap()
    }

    fn gf(dim: usize, pairs: &[(&[i64], Rat)]) -> GridFunction {
        GridFunction::from_pairs(
            dim,
            pairs.iter().map(|(p, v)| (p.to_vec(), v.clone())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn nabla_examples() {
        let delta = gf(2, &[(&[0, 0], rat(1, 1))]);
        let d = nabla(&delta, &[1, 0]);
        assert_eq!(d.get(&[0, 0]), rat(1, 1));
        assert_eq!(d.get(&[1, 0]), rat(-1, 1));
        assert_eq!(d.support_len(), 2);
        assert!(nabla(&GridFunction::new(2), &[1, 0]).is_zero());
    }

    #[test]
    fn sigma_examples() {
        let list = fig1();
        let c = list.contract(2).unwrap();
        let f = gf(2, &[(&[1, 1], rat(1, 1))]);
        let s = sigma(&f, &c);
        assert_eq!(s.support_len(), 1);
        // two points on the same fiber add up
        let z = vec![1i64, 1];
        let zx: Vec<i64> = z.iter().zip(c.pivot()).map(|(&a, &b)| a + b).collect();
        let f2 = GridFunction::from_pairs(2, vec![(z, rat(1, 1)), (zx, rat(1, 1))]).unwrap();
        let s2 = sigma(&f2, &c);
        assert_eq!(s2.support_len(), 1);
        assert_eq!(s2.support().next().unwrap().1, &rat(2, 1));
        assert!(sigma(&GridFunction::new(2), &c).is_zero());
    }

    #[test]
    fn sigma_after_nabla_vanishes() {
        let list = fig1();
        let c = list.contract(2).unwrap();
        let f = gf(2, &[(&[0, 1], rat(3, 2)), (&[2, 2], rat(-1, 3))]);
        assert!(sigma(&nabla(&f, c.pivot()), &c).is_zero());
    }

    #[test]
    fn cardinal_matrices_match_reported_values() {
        let m1 = cardinal_matrix(1);
        assert_eq!(m1.entries.get(0, 0), &rat(1, 1));
        let m2 = cardinal_matrix(2);
        assert_eq!(m2.entries.get(0, 0), &rat(1, 2));
        assert_eq!(m2.entries.get(0, 1), &rat(1, 2));
        assert_eq!(m2.entries.get(1, 0), &rat(1, 1));
        assert_eq!(m2.entries.get(1, 1), &rat(-1, 1));
        let m3 = cardinal_matrix(3);
        let expected = [
            [rat(1, 6), rat(4, 6), rat(1, 6)],
            [rat(1, 2), rat(0, 1), rat(-1, 2)],
            [rat(1, 1), rat(-2, 1), rat(1, 1)],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m3.entries.get(i, j), &expected[i][j]);
            }
        }
    }

    #[test]
    fn gamma_examples() {
        // constant operator on the running example: value 1 at the center
        let g = gamma(&fig1(), &MultiPoly::one(2)).unwrap();
        assert_eq!(g.support_len(), 1);
        assert_eq!(g.get(&[1, 1]), rat(1, 1));

        // three ones: rows of the 2x2 cardinal matrix
        let g = gamma(&ones(3), &MultiPoly::one(1)).unwrap();
        assert_eq!(g.get(&[1]), rat(1, 2));
        assert_eq!(g.get(&[2]), rat(1, 2));
        let s = MultiPoly::linear_form(&[1]);
        let g = gamma(&ones(3), &s).unwrap();
        assert_eq!(g.get(&[1]), rat(1, 1));
        assert_eq!(g.get(&[2]), rat(-1, 1));

        // membership is enforced
        assert!(matches!(
            gamma(&fig1(), &s.project_vars(&[vec![1], vec![0]]).unwrap()),
            Err(Error::MembershipFailure)
        ));
    }

    #[test]
    fn direct_solver_fig1() {
        let f = gf(2, &[(&[1, 1], rat(5, 3))]);
        let sol = solve_direct(&fig1(), &f).unwrap();
        assert_eq!(sol.poly, MultiPoly::constant(2, rat(5, 3)));
        assert_eq!(sol.internal_coords, vec![rat(5, 3)]);
    }

    #[test]
    fn direct_solver_cardinal() {
        // f(1)=a, f(2)=b: the solution is (a+b) + (a-b)/2 s
        let (a, b) = (rat(1, 1), rat(0, 1));
        let f = gf(1, &[(&[1], a.clone()), (&[2], b.clone())]);
        let sol = solve_direct(&ones(3), &f).unwrap();
        let expected = MultiPoly::constant(1, &a + &b).add(&MultiPoly::monomial(
            1,
            vec![1],
            (&a - &b) / rat(2, 1),
        ));
        assert_eq!(sol.poly, expected);
        assert_eq!(sol.poly.to_string(), "1 + 1/2*s1");
    }

    #[test]
    fn zero_data_gives_zero() {
        let sol = solve_direct(&fig1(), &GridFunction::new(2)).unwrap();
        assert!(sol.poly.is_zero());
        let sol = solve_recursive(&fig1(), &GridFunction::new(2)).unwrap();
        assert!(sol.poly.is_zero());
    }

    #[test]
    fn coloop_lists_only_accept_zero() {
        let basis = vl(2, &[&[1, 0], &[0, 1]]);
        let sol = solve_recursive(&basis, &GridFunction::new(2)).unwrap();
        assert!(sol.poly.is_zero());
        let bad = gf(2, &[(&[0, 0], rat(1, 1))]);
        assert!(matches!(
            solve_direct(&basis, &bad),
            Err(Error::SupportViolation { .. })
        ));
    }

    #[test]
    fn support_violation_is_rejected() {
        let f = gf(2, &[(&[0, 0], rat(1, 1))]);
        assert!(matches!(
            solve_direct(&fig1(), &f),
            Err(Error::SupportViolation { .. })
        ));
    }

    #[test]
    fn non_tu_lists_are_rejected() {
        let list = vl(2, &[&[1, 1], &[1, -1], &[1, 0]]);
        let f = GridFunction::new(2);
        assert!(matches!(
            solve_direct(&list, &f),
            Err(Error::NotTotallyUnimodular { .. })
        ));
    }

    #[test]
    fn solvers_agree_on_fig1() {
        let mut analyzer = Analyzer::new();
        let f = gf(2, &[(&[1, 1], rat(-7, 5))]);
        let a = analyzer.solve_direct(&fig1(), &f).unwrap();
        let b = analyzer.solve_recursive(&fig1(), &f).unwrap();
        let c = analyzer
            .solve_recursive_with_rule(&fig1(), &f, PivotRule::LastNonColoop)
            .unwrap();
        assert_eq!(a.poly, b.poly);
        assert_eq!(a.poly, c.poly);
    }

    #[test]
    fn solvers_agree_on_cardinal_lists() {
        let mut analyzer = Analyzer::new();
        for n in 2..=5usize {
            let list = ones(n);
            let pairs: Vec<(Vec<i64>, Rat)> = (1..n as i64)
                .map(|j| (vec![j], rat(2 * j - 3, 3)))
                .collect();
            let f = GridFunction::from_pairs(1, pairs).unwrap();
            let a = analyzer.solve_direct(&list, &f).unwrap();
            let b = analyzer.solve_recursive(&list, &f).unwrap();
            assert_eq!(a.poly, b.poly, "n = {n}");
        }
    }

    #[test]
    fn round_trip_on_a_bigger_list() {
        let list = vl(2, &[&[1, 0], &[0, 1], &[1, 1], &[0, 1]]);
        let mut analyzer = Analyzer::new();
        let points = analyzer.interior_points(&list).unwrap();
        let pairs: Vec<(Vec<i64>, Rat)> = points
            .iter()
            .enumerate()
            .map(|(k, z)| (z.clone(), rat(3 * k as i64 - 2, 7)))
            .collect();
        let f = GridFunction::from_pairs(2, pairs).unwrap();
        let sol = analyzer.solve_direct(&list, &f).unwrap();
        let back = analyzer.gamma(&list, &sol.poly).unwrap();
        assert_eq!(back, f);
        let rec = analyzer.solve_recursive(&list, &f).unwrap();
        assert_eq!(rec.poly, sol.poly);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn sigma_of_nabla_vanishes_generally(
            pts in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 2), -5i64..=5), 1..5)
        ) {
            let list = fig1();
            let c = list.contract(2).unwrap();
            let mut f = GridFunction::new(2);
            for (p, v) in pts {
                f.add_value(p, rat_int(v));
            }
            prop_assert!(sigma(&nabla(&f, c.pivot()), &c).is_zero());
        }

        #[test]
        fn solver_is_linear(a in -4i64..=4, b in -4i64..=4) {
            let list = ones(4);
            let f = gf(1, &[(&[1], rat(a, 3)), (&[2], rat(b, 2)), (&[3], rat(a - b, 5))]);
            let g = gf(1, &[(&[1], rat(b, 7)), (&[3], rat(a + 1, 2))]);
            let mut analyzer = Analyzer::new();
            let sf = analyzer.solve_direct(&list, &f).unwrap();
            let sg = analyzer.solve_direct(&list, &g).unwrap();
            let sum = analyzer.solve_direct(&list, &f.add(&g)).unwrap();
            prop_assert_eq!(sum.poly, sf.poly.add(&sg.poly));
        }
    }
}
