//! Brute-force cross-checks that are independent of the symbolic engine:
//! a Monte Carlo estimate of the truncated-power value as a fiber volume,
//! and exact LP membership for the zonotope. Everything here exists only
//! to certify the exact code paths.

use crate::lp::{self, LpResult};
use crate::matrix::RatMatrix;
use crate::rational::{rat_int, Rat};
use crate::vectorlist::{primitive_integer, VectorList};
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, Copy)]
pub struct VolumeEstimate {
    pub value: f64,
    pub std_err: f64,
}

/// Monte Carlo estimate of the truncated power of a sign-normalized list
/// at `u`: the normalized volume of `{lambda >= 0 : sum lambda_i x_i = u}`.
///
/// The fiber is parametrized as `lambda0 + K mu` over an integer kernel
/// basis `K`; the Hausdorff correction is
/// `sqrt(det(K^T K) / det(X X^T))`. Sampling is the only inexact step.
pub fn monte_carlo_truncated_power(
    list: &VectorList,
    u: &[Rat],
    samples: usize,
    seed: u64,
) -> VolumeEstimate {
    let d = list.dim();
    let n = list.len();
    let matrix = list.matrix();

    let gram_full = matrix
        .matmul(&matrix.transpose())
        .expect("dimensions agree")
        .det()
        .expect("square");
    let inv_sqrt_gram = 1.0 / gram_full.to_f64().expect("finite").sqrt();

    let Some(lambda0) = matrix.solve_any(u).expect("dimensions agree") else {
        return VolumeEstimate {
            value: 0.0,
            std_err: 0.0,
        };
    };

    let kernel: Vec<Vec<i64>> = matrix
        .nullspace()
        .iter()
        .map(|v| primitive_integer(v))
        .collect();
    let fiber_dim = kernel.len();
    debug_assert_eq!(fiber_dim, n - d);

    if fiber_dim == 0 {
        // the fiber is a single point; the 0-volume is 1 when feasible
        let feasible = lambda0.iter().all(|v| v >= &Rat::zero());
        return VolumeEstimate {
            value: if feasible { inv_sqrt_gram } else { 0.0 },
            std_err: 0.0,
        };
    }

    // Gram determinant of the kernel basis (rows of K are R^n vectors)
    let k_rows = RatMatrix::from_rows(
        kernel
            .iter()
            .map(|v| v.iter().map(|&x| rat_int(x)).collect())
            .collect(),
    )
    .unwrap();
    let gram_kernel = k_rows
        .matmul(&k_rows.transpose())
        .expect("dimensions agree")
        .det()
        .expect("square");
    let factor = gram_kernel.to_f64().expect("finite").sqrt() * inv_sqrt_gram;

    // bounding box of {mu : lambda0 + K mu >= 0} via exact LP per coordinate
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| kernel.iter().map(|k| rat_int(k[i])).collect())
        .collect();
    let rhs: Vec<Rat> = lambda0.iter().map(|v| -v.clone()).collect();
    let mut lo = Vec::with_capacity(fiber_dim);
    let mut hi = Vec::with_capacity(fiber_dim);
    for j in 0..fiber_dim {
        let mut w = vec![Rat::zero(); fiber_dim];
        w[j] = rat_int(1);
        let min = match lp::minimize_over_polyhedron(&rows, &rhs, &w) {
            LpResult::Optimal { value, .. } => value,
            LpResult::Infeasible => {
                return VolumeEstimate {
                    value: 0.0,
                    std_err: 0.0,
                }
            }
            LpResult::Unbounded => panic!("fiber of a one-sided list is bounded"),
        };
        w[j] = rat_int(-1);
        let max = match lp::minimize_over_polyhedron(&rows, &rhs, &w) {
            LpResult::Optimal { value, .. } => -value,
            _ => panic!("fiber of a one-sided list is bounded"),
        };
        lo.push(min.to_f64().expect("finite"));
        hi.push(max.to_f64().expect("finite"));
    }

    let box_vol: f64 = lo.iter().zip(&hi).map(|(a, b)| (b - a).max(0.0)).product();
    if box_vol == 0.0 {
        return VolumeEstimate {
            value: 0.0,
            std_err: 0.0,
        };
    }

    let l0: Vec<f64> = lambda0.iter().map(|v| v.to_f64().expect("finite")).collect();
    let kf: Vec<Vec<f64>> = kernel
        .iter()
        .map(|k| k.iter().map(|&x| x as f64).collect())
        .collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut hits = 0usize;
    let mut mu = vec![0.0f64; fiber_dim];
    for _ in 0..samples {
        for j in 0..fiber_dim {
            mu[j] = rng.gen_range(lo[j]..hi[j]);
        }
        let inside = (0..n).all(|i| {
            let mut v = l0[i];
            for j in 0..fiber_dim {
                v += kf[j][i] * mu[j];
            }
            v >= 0.0
        });
        if inside {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    VolumeEstimate {
        value: factor * box_vol * p,
        std_err: factor * box_vol * (p * (1.0 - p) / samples as f64).sqrt(),
    }
}

/// Exact membership in the zonotope via LP feasibility of the defining
/// fiber, independent of the half-space representation.
pub fn zonotope_member_lp(list: &VectorList, u: &[Rat]) -> bool {
    lp::box_fiber_feasible(list.dim(), list.vectors(), u)
}

/// Deterministic pseudo-random rational point generator for tests and the
/// verification suite.
pub struct RatPointSampler {
    rng: StdRng,
}

impl RatPointSampler {
    pub fn new(seed: u64) -> Self {
        RatPointSampler {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    /// A rational point in the given integer box, with denominators that
    /// make wall hits unlikely.
    pub fn point_in_box(&mut self, boxes: &[(i64, i64)]) -> Vec<Rat> {
        boxes
            .iter()
            .map(|&(lo, hi)| {
                let den = *[7i64, 11, 13, 17, 19]
                    .get(self.rng.gen_range(0..5))
                    .unwrap();
                let num = self.rng.gen_range(lo * den..=hi * den);
                Rat::new(num.into(), den.into())
            })
            .collect()
    }

    pub fn rational(&mut self, max_num: i64) -> Rat {
        let den = *[1i64, 2, 3, 5, 7].get(self.rng.gen_range(0..5)).unwrap();
        let num = self.rng.gen_range(-max_num * den..=max_num * den);
        Rat::new(num.into(), den.into())
    }
}
