//! Symbolic piecewise-polynomial splines of a vector list.
//!
//! The truncated-power spline is built incrementally: the spline of a basis
//! is constant on the topes inside its cone, and each further vector acts
//! by a one-dimensional convolution, realized as exact ray integration
//! against the previous level's pieces. Each refined tope's polynomial is
//! reconstructed from exact point evaluations and verified on held-out
//! points. The box spline is the signed sum of the truncated power over
//! the subset-sum shifts of the list, evaluated lazily.
//!
//! Evaluation at a wall resolves the tope by a fixed generic perturbation
//! direction, computing one-sided limits; disagreeing limits surface as a
//! `Discontinuity` error rather than picking a convention.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::matrix::{RatMatrix, SolveOutcome};
use crate::poly::MultiPoly;
use crate::pspace::monomials_of_degree;
use crate::rational::{rat_int, Rat};
use crate::vectorlist::{Contraction, VectorList};
use crate::zonotope::Zonotope;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplineKind {
    Multivariate,
    Box,
}

#[derive(Debug, Clone)]
pub struct PiecewiseSpline {
    kind: SplineKind,
    source: VectorList,
    normalized: VectorList,
    translation: Vec<i64>,
    arrangement: Arrangement,
    pieces: Vec<MultiPoly>,
    degree: u32,
    /// Box only: deduplicated subset-sum shifts with net signs.
    shifts: Vec<(Vec<i64>, i64)>,
    epsilon: Vec<i64>,
}

impl PiecewiseSpline {
    pub fn kind(&self) -> SplineKind {
        self.kind
    }

    pub fn source(&self) -> &VectorList {
        &self.source
    }

    /// The sign-normalized, zero-free, basis-first list the pieces belong to.
    pub fn normalized(&self) -> &VectorList {
        &self.normalized
    }

    /// `B_source(u) = B_normalized(u + translation)`.
    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn pieces(&self) -> &[MultiPoly] {
        &self.pieces
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn shifts(&self) -> &[(Vec<i64>, i64)] {
        &self.shifts
    }

    pub fn epsilon(&self) -> &[i64] {
        &self.epsilon
    }

    /// Every stored piece is zero or homogeneous of the spline degree.
    pub fn homogeneity_ok(&self) -> bool {
        self.pieces
            .iter()
            .all(|p| p.is_zero() || p.is_homogeneous_of(self.degree))
    }

    /// Applies a differential operator to every piece.
    pub fn apply(&self, op: &MultiPoly) -> Result<AppliedSpline<'_>> {
        if op.nvars() != self.normalized.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator in {} variables against a spline in dimension {}",
                op.nvars(),
                self.normalized.dim()
            )));
        }
        let pieces = self
            .pieces
            .iter()
            .map(|f| op.apply_diff(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(AppliedSpline {
            spline: self,
            pieces,
        })
    }

    /// Value of the spline itself (operator 1).
    pub fn eval(&self, u: &[Rat]) -> Result<Rat> {
        self.apply(&MultiPoly::one(self.normalized.dim()))?.eval(u)
    }

    /// Value of `op(D)` applied to the spline at `u`.
    pub fn eval_diff(&self, op: &MultiPoly, u: &[Rat]) -> Result<Rat> {
        self.apply(op)?.eval(u)
    }

    /// Distinct affine wall offsets per arrangement normal (box kind:
    /// offsets of all subset-sum translates; multivariate: the origin).
    pub fn wall_offsets(&self) -> Vec<(usize, Vec<i64>)> {
        let normals = self.arrangement.normals();
        let mut out = Vec::new();
        for (i, eta) in normals.iter().enumerate() {
            let mut offs = std::collections::BTreeSet::new();
            match self.kind {
                SplineKind::Multivariate => {
                    offs.insert(0i64);
                }
                SplineKind::Box => {
                    for (shift, _) in &self.shifts {
                        offs.insert(eta.iter().zip(shift).map(|(&a, &b)| a * b).sum());
                    }
                }
            }
            out.push((i, offs.into_iter().collect()));
        }
        out
    }
}

/// A spline with a differential operator already applied to each piece.
pub struct AppliedSpline<'a> {
    spline: &'a PiecewiseSpline,
    pieces: Vec<MultiPoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WallPolicy {
    Limits,
    Reject,
}

impl<'a> AppliedSpline<'a> {
    /// Evaluation with one-sided limit checking at walls.
    pub fn eval(&self, u: &[Rat]) -> Result<Rat> {
        self.eval_with_policy(u, WallPolicy::Limits)
    }

    /// Evaluation that refuses to touch any wall.
    pub fn eval_off_wall(&self, u: &[Rat]) -> Result<Rat> {
        self.eval_with_policy(u, WallPolicy::Reject)
    }

    fn eval_with_policy(&self, u: &[Rat], policy: WallPolicy) -> Result<Rat> {
        let d = self.spline.normalized.dim();
        if u.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, spline lives in dimension {d}",
                u.len()
            )));
        }
        let shifted: Vec<Rat> = match self.spline.kind {
            SplineKind::Box => u
                .iter()
                .zip(&self.spline.translation)
                .map(|(a, &t)| a + rat_int(t))
                .collect(),
            SplineKind::Multivariate => u.to_vec(),
        };
        let (plus, hit) = self.directional_sum(&shifted, 1);
        if !hit {
            return Ok(plus);
        }
        if policy == WallPolicy::Reject {
            return Err(Error::WallSample);
        }
        let (minus, _) = self.directional_sum(&shifted, -1);
        if plus == minus {
            Ok(plus)
        } else {
            Err(Error::Discontinuity { plus, minus })
        }
    }

    fn directional_sum(&self, u: &[Rat], orientation: i8) -> (Rat, bool) {
        let arr = &self.spline.arrangement;
        let eps = &self.spline.epsilon;
        let mut acc = Rat::zero();
        let mut hit = false;
        match self.spline.kind {
            SplineKind::Multivariate => {
                let (idx, h) = arr.locate_perturbed(u, eps, orientation);
                hit = h;
                if !self.pieces[idx].is_zero() {
                    acc = self.pieces[idx].eval(u).expect("dimension checked");
                }
            }
            SplineKind::Box => {
                for (shift, net) in &self.spline.shifts {
                    let v: Vec<Rat> = u
                        .iter()
                        .zip(shift)
                        .map(|(a, &s)| a - rat_int(s))
                        .collect();
                    let (idx, h) = arr.locate_perturbed(&v, eps, orientation);
                    hit |= h;
                    if !self.pieces[idx].is_zero() {
                        let val = self.pieces[idx].eval(&v).expect("dimension checked");
                        acc += val * rat_int(*net);
                    }
                }
            }
        }
        (acc, hit)
    }
}

/// Reorders a spanning list so that a basis comes first, preserving the
/// relative order otherwise.
fn basis_first(list: &VectorList) -> VectorList {
    let d = list.dim();
    let mut chosen: Vec<usize> = Vec::new();
    let mut current = Vec::new();
    for (i, v) in list.vectors().iter().enumerate() {
        if chosen.len() == d {
            break;
        }
        let mut candidate = current.clone();
        candidate.push(v.clone());
        if RatMatrix::from_int_columns(d, &candidate).rank() > current.len() {
            current = candidate;
            chosen.push(i);
        }
    }
    let mut vectors = Vec::with_capacity(list.len());
    for &i in &chosen {
        vectors.push(list.vectors()[i].clone());
    }
    for (i, v) in list.vectors().iter().enumerate() {
        if !chosen.contains(&i) {
            vectors.push(v.clone());
        }
    }
    VectorList::new(d, vectors).expect("same dimension")
}

struct Level {
    arrangement: Arrangement,
    pieces: Vec<MultiPoly>,
}

fn prefix(list: &VectorList, k: usize) -> VectorList {
    VectorList::new(list.dim(), list.vectors()[..k].to_vec()).expect("same dimension")
}

/// Builds the truncated-power pieces of a sign-normalized, basis-first list.
fn construct_levels(ordered: &VectorList) -> Result<Level> {
    let d = ordered.dim();
    let n = ordered.len();

    let base = prefix(ordered, d);
    let base_matrix = base.matrix();
    let det = base_matrix.det()?;
    debug_assert!(d == 0 || !det.is_zero());
    let inv_det = if d == 0 {
        Rat::one()
    } else {
        Rat::one() / det.abs()
    };

    let arrangement = Arrangement::build(d, base.hyperplane_normals());
    let pieces: Vec<MultiPoly> = arrangement
        .topes()
        .iter()
        .map(|tope| {
            let inside = match base_matrix.solve(&tope.witness) {
                Ok(SolveOutcome::Unique(lambda)) => lambda.iter().all(|v| v > &Rat::zero()),
                Ok(_) => false,
                Err(_) => false,
            };
            let inside = if d == 0 { true } else { inside };
            if inside {
                MultiPoly::constant(d, inv_det.clone())
            } else {
                MultiPoly::zero(d)
            }
        })
        .collect();
    let mut level = Level {
        arrangement,
        pieces,
    };

    for k in d + 1..=n {
        let current = prefix(ordered, k);
        let x = ordered.vectors()[k - 1].clone();
        let arrangement = Arrangement::build(d, current.hyperplane_normals());
        let degree = (k - d) as u32;
        let mut pieces = Vec::with_capacity(arrangement.topes().len());
        for tope in arrangement.topes() {
            pieces.push(reconstruct_piece(&level, &arrangement, tope, &x, degree)?);
        }
        level = Level {
            arrangement,
            pieces,
        };
    }
    Ok(level)
}

/// Largest `r` such that the L-infinity ball of radius `r` around the
/// witness stays strictly inside the tope.
fn safe_radius(arr: &Arrangement, signs: &[i8], witness: &[Rat]) -> Rat {
    let mut r: Option<Rat> = None;
    for (eta, &s) in arr.normals().iter().zip(signs) {
        let margin = eta
            .iter()
            .zip(witness)
            .map(|(&a, w)| rat_int(a * s as i64) * w)
            .fold(Rat::zero(), |acc, t| acc + t);
        let weight: i64 = eta.iter().map(|&a| a.abs()).sum();
        let bound = margin / rat_int(weight.max(1));
        r = Some(match r {
            None => bound,
            Some(cur) => cur.min(bound),
        });
    }
    r.unwrap_or_else(|| rat_int(1))
}

/// Reconstructs one tope's homogeneous polynomial of the given degree from
/// exact ray-integral evaluations, then verifies it on held-out points.
fn reconstruct_piece(
    prev: &Level,
    arr: &Arrangement,
    tope: &crate::arrangement::Tope,
    x: &[i64],
    degree: u32,
) -> Result<MultiPoly> {
    let d = tope.witness.len();
    let monomials = monomials_of_degree(d, degree);
    let target = monomials.len();
    let radius = safe_radius(arr, &tope.signs, &tope.witness);

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut values: Vec<Rat> = Vec::new();
    let mut extras: Vec<(Vec<Rat>, Rat)> = Vec::new();
    'shells: for shell in 1i64.. {
        let h = &radius / rat_int(2 * (shell + 1));
        let mut offsets = Vec::new();
        enumerate_box(d, shell, &mut vec![0; d], 0, &mut offsets);
        for v in offsets {
            let point: Vec<Rat> = tope
                .witness
                .iter()
                .zip(&v)
                .map(|(w, &vi)| w + &h * rat_int(vi))
                .collect();
            debug_assert_eq!(arr.sign_vector(&point), tope.signs);
            let row: Vec<Rat> = monomials
                .iter()
                .map(|m| {
                    MultiPoly::monomial(d, m.clone(), Rat::one())
                        .eval(&point)
                        .expect("dimensions match")
                })
                .collect();
            let mut candidate = rows.clone();
            candidate.push(row.clone());
            let rank = RatMatrix::from_rows(candidate.clone()).unwrap().rank();
            if rank > rows.len() {
                let value = ray_integral(prev, &point, x)?;
                rows.push(row);
                values.push(value);
                if rows.len() == target {
                    break 'shells;
                }
            } else if extras.len() < 2 && rows.len() + 1 >= target {
                let value = ray_integral(prev, &point, x)?;
                extras.push((point, value));
            }
        }
        assert!(shell < 64, "sampling failed to reach full rank");
    }

    let a = RatMatrix::from_rows(rows).unwrap();
    let coeffs = match a.solve(&values)? {
        SolveOutcome::Unique(c) => c,
        _ => return Err(Error::SingularSystem),
    };
    let mut piece = MultiPoly::zero(d);
    for (m, c) in monomials.iter().zip(&coeffs) {
        if !c.is_zero() {
            piece = piece.add(&MultiPoly::monomial(d, m.clone(), c.clone()));
        }
    }
    // held-out verification: the reconstruction must reproduce fresh values
    for (point, expected) in extras {
        assert_eq!(
            piece.eval(&point).expect("dimensions match"),
            expected,
            "piece reconstruction failed held-out verification"
        );
    }
    Ok(piece)
}

fn enumerate_box(d: usize, bound: i64, current: &mut Vec<i64>, idx: usize, out: &mut Vec<Vec<i64>>) {
    if idx == d {
        out.push(current.clone());
        return;
    }
    for v in -bound..=bound {
        current[idx] = v;
        enumerate_box(d, bound, current, idx + 1, out);
    }
}

/// Exact value of the convolution `int_0^infty prev(u0 - t x) dt`.
fn ray_integral(prev: &Level, u0: &[Rat], x: &[i64]) -> Result<Rat> {
    let arr = &prev.arrangement;
    let mut breakpoints: Vec<Rat> = Vec::new();
    for eta in arr.normals() {
        let a: i64 = eta.iter().zip(x).map(|(&p, &q)| p * q).sum();
        if a == 0 {
            continue;
        }
        let num = eta
            .iter()
            .zip(u0)
            .map(|(&p, q)| rat_int(p) * q)
            .fold(Rat::zero(), |acc, t| acc + t);
        let t = num / rat_int(a);
        if t > Rat::zero() {
            breakpoints.push(t);
        }
    }
    breakpoints.sort();
    breakpoints.dedup();

    let piece_at = |t: &Rat| -> Result<&MultiPoly> {
        let point: Vec<Rat> = u0
            .iter()
            .zip(x)
            .map(|(u, &xi)| u - rat_int(xi) * t)
            .collect();
        let idx = arr
            .locate(&point)
            .expect("segment midpoints avoid all walls");
        Ok(&prev.pieces[idx])
    };

    // the ray eventually leaves the support for good
    let tail_start = breakpoints.last().cloned().unwrap_or_else(Rat::zero);
    let tail_probe = tail_start + Rat::one();
    assert!(
        piece_at(&tail_probe)?.is_zero(),
        "ray must exit the support cone after the last breakpoint"
    );

    let dir: Vec<Rat> = x.iter().map(|&xi| -rat_int(xi)).collect();
    let mut total = Rat::zero();
    let mut t_prev = Rat::zero();
    for t_next in breakpoints {
        let mid = (&t_prev + &t_next) / rat_int(2);
        let piece = piece_at(&mid)?;
        if !piece.is_zero() {
            let coeffs = piece.restrict_line(u0, &dir)?;
            total += integrate_uni(&coeffs, &t_prev, &t_next);
        }
        t_prev = t_next;
    }
    Ok(total)
}

fn integrate_uni(coeffs: &[Rat], a: &Rat, b: &Rat) -> Rat {
    let mut total = Rat::zero();
    let mut apow = a.clone();
    let mut bpow = b.clone();
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let term = c * (&bpow - &apow) / rat_int(j as i64 + 1);
            total += term;
        }
        apow *= a;
        bpow *= b;
    }
    total
}

/// Builds the truncated-power spline of the (sign-normalized) list.
pub fn build_multivariate(list: &VectorList) -> Result<PiecewiseSpline> {
    build(list, SplineKind::Multivariate)
}

/// Builds the box spline: the truncated power together with its signed
/// subset-sum shifts, evaluated lazily.
pub fn build_box(list: &VectorList) -> Result<PiecewiseSpline> {
    build(list, SplineKind::Box)
}

fn build(list: &VectorList, kind: SplineKind) -> Result<PiecewiseSpline> {
    list.require_spanning()?;
    let sn = list.sign_normalize();
    let ordered = basis_first(&sn.list);
    let level = construct_levels(&ordered)?;
    let degree = (ordered.len() - ordered.dim()) as u32;

    let shifts = match kind {
        SplineKind::Multivariate => Vec::new(),
        SplineKind::Box => {
            let n = ordered.len();
            let mut nets: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
            for mask in 0u64..(1u64 << n) {
                let mut sum = vec![0i64; ordered.dim()];
                let mut sign = 1i64;
                for (j, v) in ordered.vectors().iter().enumerate() {
                    if mask & (1 << j) != 0 {
                        sign = -sign;
                        for (s, &vi) in sum.iter_mut().zip(v) {
                            *s += vi;
                        }
                    }
                }
                *nets.entry(sum).or_insert(0) += sign;
            }
            nets.retain(|_, v| *v != 0);
            nets.into_iter().collect()
        }
    };

    let epsilon = level.arrangement.generic_direction();
    Ok(PiecewiseSpline {
        kind,
        source: list.clone(),
        normalized: ordered,
        translation: sn.translation,
        arrangement: level.arrangement,
        pieces: level.pieces,
        degree,
        shifts,
        epsilon,
    })
}

/// Exact cardinal B-spline value: the box spline of `n_plus_1` ones in one
/// dimension, via the alternating-sum closed form.
pub fn cardinal_bspline(n_plus_1: usize, u: &Rat) -> Rat {
    cardinal_derivative(n_plus_1, 0, u)
}

/// Derivative of order `order` of the cardinal B-spline of `n_plus_1`
/// ones. Requires `order < n_plus_1` so the result is still a function
/// (the top derivative is a jump distribution).
pub fn cardinal_derivative(n_plus_1: usize, order: usize, u: &Rat) -> Rat {
    assert!(n_plus_1 >= 1);
    assert!(order < n_plus_1, "derivative order too high");
    let n = n_plus_1 - 1;
    let m = (n - order) as u32;
    let mut fact = BigInt::one();
    for k in 2..=(n - order) {
        fact *= BigInt::from(k);
    }
    let mut total = Rat::zero();
    let mut binom = BigInt::one();
    for j in 0..=(n as i64 + 1) {
        if j > 0 {
            // C(n+1, j) updated incrementally
            binom = &binom * BigInt::from(n as i64 + 2 - j) / BigInt::from(j);
        }
        let t = u - rat_int(j);
        let plus = if t > Rat::zero() {
            let mut p = Rat::one();
            for _ in 0..m {
                p *= &t;
            }
            p
        } else {
            Rat::zero()
        };
        if plus.is_zero() {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += Rat::from_integer(BigInt::from(sign) * &binom) * plus / Rat::from_integer(fact.clone());
    }
    total
}

/// Per-sample report of the convolution identity relating a box spline to
/// the box spline of a contraction.
#[derive(Debug, Clone)]
pub struct ConvolutionReport {
    pub samples: Vec<(Vec<Rat>, Rat)>,
}

/// Verifies `sum_{k in Z} B_X(u + k x) == B_{X/x}(u bar)` at the given
/// sample points. Samples where either side is genuinely ambiguous (a
/// discontinuous wall value) are rejected; a value mismatch is an error
/// carrying both sides.
pub fn check_convolution_identity(
    list: &VectorList,
    pivot: usize,
    samples: &[Vec<Rat>],
) -> Result<ConvolutionReport> {
    list.require_totally_unimodular()?;
    if list.is_zero_vector(pivot)? {
        return Err(Error::ZeroVector(pivot));
    }
    let x = list.get(pivot)?.clone();
    let contraction = list.contract(pivot)?;
    let parent_box = build_box(list)?;
    let child_box = build_box(contraction.child())?;
    let zono = Zonotope::hrep(list)?;
    let parent_applied = parent_box.apply(&MultiPoly::one(list.dim()))?;
    let child_applied = child_box.apply(&MultiPoly::one(contraction.child().dim()))?;

    let mut out = Vec::new();
    for u in samples {
        let (lo, hi) = fiber_range(&zono, u, &x)?;
        let mut lhs = Rat::zero();
        let mut k = lo;
        while k <= hi {
            let point: Vec<Rat> = u
                .iter()
                .zip(&x)
                .map(|(a, &b)| a + rat_int(b * k))
                .collect();
            lhs += parent_applied.eval(&point).map_err(reject_ambiguous)?;
            k += 1;
        }
        let ubar = contraction.project_point_rat(u);
        let rhs = child_applied.eval(&ubar).map_err(reject_ambiguous)?;
        if lhs != rhs {
            return Err(Error::ConvolutionMismatch {
                point: u.iter().map(crate::rational::format_rat).collect(),
                lhs,
                rhs,
            });
        }
        out.push((u.clone(), lhs));
    }
    Ok(ConvolutionReport { samples: out })
}

fn reject_ambiguous(e: Error) -> Error {
    match e {
        Error::Discontinuity { .. } => Error::WallSample,
        other => other,
    }
}

/// Integer range of `k` with `u + k x` possibly inside the zonotope.
fn fiber_range(zono: &Zonotope, u: &[Rat], x: &[i64]) -> Result<(i64, i64)> {
    use num_traits::ToPrimitive;
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for h in zono.halfspaces() {
        let a: i64 = h.normal.iter().zip(x).map(|(&p, &q)| p * q).sum();
        if a == 0 {
            continue;
        }
        let dot = h
            .normal
            .iter()
            .zip(u)
            .map(|(&p, q)| rat_int(p) * q)
            .fold(Rat::zero(), |acc, t| acc + t);
        let bound1 = (rat_int(h.lower) - &dot) / rat_int(a);
        let bound2 = (rat_int(h.upper) - &dot) / rat_int(a);
        let (lo_k, hi_k) = if bound1 <= bound2 {
            (bound1, bound2)
        } else {
            (bound2, bound1)
        };
        lo = Some(match lo {
            None => lo_k,
            Some(cur) => cur.max(lo_k),
        });
        hi = Some(match hi {
            None => hi_k,
            Some(cur) => cur.min(hi_k),
        });
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok((
            lo.ceil().to_integer().to_i64().expect("small range"),
            hi.floor().to_integer().to_i64().expect("small range"),
        )),
        // x is orthogonal to every facet normal only in degenerate setups
        _ => Ok((0, -1)),
    }
}

/// Deterministic points on the affine walls of a spline, each on exactly
/// one wall, biased toward the support. Returned in source coordinates.
pub fn wall_sample_points(spline: &PiecewiseSpline, per_wall: usize) -> Vec<Vec<Rat>> {
    let d = spline.normalized().dim();
    let arr = spline.arrangement();
    // center of the normalized zonotope
    let center: Vec<Rat> = (0..d)
        .map(|j| {
            let s: i64 = spline.normalized().vectors().iter().map(|v| v[j]).sum();
            rat_int(s) / rat_int(2)
        })
        .collect();
    // all (normal, offset) affine walls
    let mut walls: Vec<(usize, i64)> = Vec::new();
    for (i, offs) in spline.wall_offsets() {
        for o in offs {
            walls.push((i, o));
        }
    }
    let on_some_other_wall = |point: &[Rat], wall: (usize, i64)| -> bool {
        for &(i, o) in &walls {
            if (i, o) == wall {
                continue;
            }
            let dot = arr.normals()[i]
                .iter()
                .zip(point)
                .map(|(&a, b)| rat_int(a) * b)
                .fold(Rat::zero(), |acc, t| acc + t);
            if dot == rat_int(o) {
                return true;
            }
        }
        false
    };

    let mut out = Vec::new();
    for &(i, o) in &walls {
        let eta = &arr.normals()[i];
        let eta_rat: Vec<Rat> = eta.iter().map(|&a| rat_int(a)).collect();
        let norm_sq: i64 = eta.iter().map(|&a| a * a).sum();
        // center projected onto the wall
        let cdot = eta_rat
            .iter()
            .zip(&center)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, t| acc + t);
        let offset_gap = (cdot - rat_int(o)) / rat_int(norm_sq);
        let base: Vec<Rat> = center
            .iter()
            .zip(&eta_rat)
            .map(|(c, e)| c - &offset_gap * e)
            .collect();
        let kernel = RatMatrix::from_rows(vec![eta_rat.clone()])
            .unwrap()
            .nullspace();
        let wanted = if kernel.is_empty() { 1 } else { per_wall };
        let mut found = 0usize;
        'tries: for attempt in 0i64..200 {
            if found == wanted {
                break 'tries;
            }
            let mut point = base.clone();
            for (k, kv) in kernel.iter().enumerate() {
                let t = rat_int(found as i64 * (k as i64 + 2) + attempt + 1)
                    / rat_int(7 + 2 * k as i64 + 3 * attempt);
                for (p, e) in point.iter_mut().zip(kv) {
                    *p += &t * e;
                }
            }
            if on_some_other_wall(&point, (i, o)) {
                continue;
            }
            // back to source coordinates
            let source_point: Vec<Rat> = point
                .iter()
                .zip(spline.translation())
                .map(|(p, &t)| p - rat_int(t))
                .collect();
            out.push(source_point);
            found += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn vl(dim: usize, vs: &[&[i64]]) -> VectorList {
        VectorList::new(dim, vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    fn fig1() -> VectorList {
        vl(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    fn ones(n: usize) -> VectorList {
        VectorList::new(1, vec![vec![1]; n]).unwrap()
    }

    #[test]
    fn basis_truncated_power_is_cone_indicator() {
        let t = build_multivariate(&vl(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(t.degree(), 0);
        assert_eq!(t.eval(&[rat(1, 2), rat(1, 3)]).unwrap(), rat(1, 1));
        assert_eq!(t.eval(&[rat(-1, 2), rat(1, 3)]).unwrap(), rat(0, 1));
        assert_eq!(t.eval(&[rat(5, 1), rat(7, 1)]).unwrap(), rat(1, 1));
    }

    #[test]
    fn one_dimensional_ramp() {
        // two ones in dimension 1: the truncated power is t on (0, inf)
        let t = build_multivariate(&ones(2)).unwrap();
        assert_eq!(t.eval(&[rat(3, 2)]).unwrap(), rat(3, 2));
        assert_eq!(t.eval(&[rat(-3, 2)]).unwrap(), rat(0, 1));
        assert!(t.homogeneity_ok());
    }

    #[test]
    fn fig1_truncated_power_is_min() {
        let t = build_multivariate(&fig1()).unwrap();
        for (p, expected) in [
            (vec![rat(3, 2), rat(1, 2)], rat(1, 2)),
            (vec![rat(1, 2), rat(3, 2)], rat(1, 2)),
            (vec![rat(7, 3), rat(5, 3)], rat(5, 3)),
            (vec![rat(-1, 2), rat(1, 2)], rat(0, 1)),
            (vec![rat(1, 2), rat(-1, 2)], rat(0, 1)),
        ] {
            assert_eq!(t.eval(&p).unwrap(), expected, "at {p:?}");
        }
        // continuous across the diagonal wall
        assert_eq!(t.eval(&[rat(1, 2), rat(1, 2)]).unwrap(), rat(1, 2));
        assert!(t.homogeneity_ok());
        assert_eq!(t.degree(), 1);
    }

    #[test]
    fn box_spline_of_basis_is_unit_square_indicator() {
        let b = build_box(&vl(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(b.eval(&[rat(1, 2), rat(1, 2)]).unwrap(), rat(1, 1));
        assert_eq!(b.eval(&[rat(3, 2), rat(1, 2)]).unwrap(), rat(0, 1));
        // at a wall the one-sided limits disagree: indicator functions jump
        match b.eval(&[rat(0, 1), rat(1, 2)]) {
            Err(Error::Discontinuity { .. }) => {}
            other => panic!("expected discontinuity, got {other:?}"),
        }
    }

    #[test]
    fn cardinal_closed_form_examples() {
        // hat function values
        assert_eq!(cardinal_bspline(2, &rat(1, 1)), rat(1, 1));
        assert_eq!(cardinal_bspline(2, &rat(1, 2)), rat(1, 2));
        assert_eq!(cardinal_bspline(3, &rat(1, 1)), rat(1, 2));
        assert_eq!(cardinal_bspline(3, &rat(0, 1)), rat(0, 1));
        assert_eq!(cardinal_bspline(4, &rat(2, 1)), rat(2, 3));
        // first derivative of the cubic at 1
        assert_eq!(cardinal_derivative(4, 1, &rat(1, 1)), rat(1, 2));
    }

    #[test]
    fn cardinal_matches_engine() {
        for n_plus_1 in 2usize..=4 {
            let b = build_box(&ones(n_plus_1)).unwrap();
            for num in 0..=(2 * n_plus_1 as i64) {
                let u = rat(num, 2);
                let engine = b.eval(&[u.clone()]).unwrap();
                let closed = cardinal_bspline(n_plus_1, &u);
                assert_eq!(engine, closed, "n+1={n_plus_1} u={u}");
            }
        }
    }

    #[test]
    fn box_spline_fig1_center_value() {
        let b = build_box(&fig1()).unwrap();
        assert_eq!(b.eval(&[rat(1, 1), rat(1, 1)]).unwrap(), rat(1, 1));
        // outside the hexagon
        assert_eq!(b.eval(&[rat(5, 2), rat(1, 2)]).unwrap(), rat(0, 1));
    }

    #[test]
    fn flipped_lists_translate() {
        // B_X(u) = B_X'(u + t) exercised through evaluation
        let b = build_box(&vl(2, &[&[-1, 0], &[0, 1]])).unwrap();
        assert_eq!(b.translation(), &[1, 0]);
        assert_eq!(b.eval(&[rat(-1, 2), rat(1, 2)]).unwrap(), rat(1, 1));
        assert_eq!(b.eval(&[rat(1, 2), rat(1, 2)]).unwrap(), rat(0, 1));
    }

    #[test]
    fn derivative_identities_at_generic_points() {
        // D_x T_X = T_{X\x} and D_x B_X = B_{X\x} - B_{X\x}(. - x)
        let list = fig1();
        let x = vec![1i64, 1];
        let t_full = build_multivariate(&list).unwrap();
        let t_del = build_multivariate(&list.delete(2).unwrap()).unwrap();
        let dx = MultiPoly::linear_form(&x);
        for p in [
            vec![rat(3, 7), rat(2, 5)],
            vec![rat(12, 7), rat(3, 5)],
            vec![rat(9, 5), rat(13, 7)],
        ] {
            assert_eq!(
                t_full.eval_diff(&dx, &p).unwrap(),
                t_del.eval(&p).unwrap(),
                "at {p:?}"
            );
        }
        let b_full = build_box(&list).unwrap();
        let b_del = build_box(&list.delete(2).unwrap()).unwrap();
        for p in [
            vec![rat(3, 7), rat(2, 5)],
            vec![rat(12, 7), rat(8, 5)],
            vec![rat(6, 5), rat(4, 7)],
        ] {
            let shifted: Vec<Rat> = p.iter().zip(&x).map(|(a, &b)| a - rat_int(b)).collect();
            let lhs = b_full.eval_diff(&dx, &p).unwrap();
            let rhs = b_del.eval(&p).unwrap() - b_del.eval(&shifted).unwrap();
            assert_eq!(lhs, rhs, "at {p:?}");
        }
    }

    #[test]
    fn convolution_identity_fig1() {
        let report = check_convolution_identity(
            &fig1(),
            2,
            &[
                vec![rat(1, 1), rat(1, 1)],
                vec![rat(4, 7), rat(3, 5)],
                vec![rat(13, 11), rat(6, 7)],
            ],
        )
        .unwrap();
        assert_eq!(report.samples[0].1, rat(1, 1));
    }

    #[test]
    fn convolution_identity_collapses_to_constant() {
        // (1,1) in dimension 1: the contraction is the zero-dimensional
        // class, whose box spline is the constant 1
        let report = check_convolution_identity(
            &vl(1, &[&[1], &[1]]),
            1,
            &[vec![rat(2, 7)], vec![rat(9, 5)], vec![rat(-3, 11)]],
        )
        .unwrap();
        for (_, v) in &report.samples {
            assert_eq!(v, &rat(1, 1));
        }
    }

    #[test]
    fn support_is_zonotope() {
        let list = fig1();
        let b = build_box(&list).unwrap();
        let z = Zonotope::hrep(&list).unwrap();
        for p in [
            vec![rat(-1, 3), rat(1, 3)],
            vec![rat(7, 3), rat(1, 3)],
            vec![rat(1, 3), rat(12, 5)],
            vec![rat(3, 2), rat(1, 5)],
        ] {
            if !z.contains(&p) {
                assert_eq!(b.eval(&p).unwrap(), rat(0, 1), "outside point {p:?}");
            }
        }
    }

    #[test]
    fn wall_points_land_on_single_walls() {
        let b = build_box(&fig1()).unwrap();
        let pts = wall_sample_points(&b, 3);
        assert!(!pts.is_empty());
        let applied = b.apply(&MultiPoly::one(2)).unwrap();
        for p in &pts {
            // internal constant: limits agree everywhere
            applied.eval(p).unwrap();
        }
    }
}
