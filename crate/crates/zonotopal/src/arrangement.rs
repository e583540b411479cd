//! Central hyperplane arrangements: tope (chamber) enumeration with exact
//! rational witness points, and an independent chamber count through the
//! characteristic polynomial as a completeness certificate.

use crate::lp;
use crate::matrix::RatMatrix;
use crate::rational::{rat_int, Rat};
use crate::vectorlist::primitive_integer;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A chamber of the arrangement: its sign vector over the normals and a
/// rational point strictly inside.
#[derive(Debug, Clone)]
pub struct Tope {
    pub signs: Vec<i8>,
    pub witness: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<i64>>,
    topes: Vec<Tope>,
    index: BTreeMap<Vec<i8>, usize>,
}

impl Arrangement {
    /// Enumerates every chamber of the central arrangement with the given
    /// (primitive, pairwise non-parallel) normals. Witnesses come from an
    /// exact LP; the count is certified against the characteristic
    /// polynomial of the arrangement.
    pub fn build(dim: usize, normals: Vec<Vec<i64>>) -> Arrangement {
        let mut topes = vec![Tope {
            signs: Vec::new(),
            witness: vec![Rat::zero(); dim],
        }];
        for (k, eta) in normals.iter().enumerate() {
            let mut next = Vec::new();
            for tope in &topes {
                let dot = dot_int_rat(eta, &tope.witness);
                let known_side = if dot.is_zero() {
                    None
                } else if dot > Rat::zero() {
                    Some(1i8)
                } else {
                    Some(-1i8)
                };
                for side in [1i8, -1] {
                    if known_side == Some(side) {
                        let mut signs = tope.signs.clone();
                        signs.push(side);
                        next.push(Tope {
                            signs,
                            witness: tope.witness.clone(),
                        });
                        continue;
                    }
                    // other side (or witness on the new wall): LP decides
                    let mut signs = tope.signs.clone();
                    signs.push(side);
                    let rows: Vec<Vec<Rat>> = signs
                        .iter()
                        .zip(normals.iter().take(k + 1))
                        .map(|(&s, n)| {
                            n.iter().map(|&v| rat_int(v * s as i64)).collect()
                        })
                        .collect();
                    if let Some(witness) = lp::strict_cone_point(&rows) {
                        next.push(Tope { signs, witness });
                    }
                }
            }
            topes = next;
        }
        topes.sort_by(|a, b| a.signs.cmp(&b.signs));
        let expected = chamber_count(dim, &normals);
        assert_eq!(
            topes.len() as u64,
            expected,
            "chamber enumeration does not match the characteristic polynomial count"
        );
        let index = topes
            .iter()
            .enumerate()
            .map(|(i, t)| (t.signs.clone(), i))
            .collect();
        Arrangement {
            dim,
            normals,
            topes,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn topes(&self) -> &[Tope] {
        &self.topes
    }

    pub fn tope_by_signs(&self, signs: &[i8]) -> Option<usize> {
        self.index.get(signs).copied()
    }

    /// Sign vector of a point, `0` where the point lies on a wall.
    pub fn sign_vector(&self, point: &[Rat]) -> Vec<i8> {
        self.normals
            .iter()
            .map(|eta| {
                let dot = dot_int_rat(eta, point);
                if dot.is_zero() {
                    0
                } else if dot > Rat::zero() {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// Tope index containing an off-wall point.
    pub fn locate(&self, point: &[Rat]) -> Option<usize> {
        let signs = self.sign_vector(point);
        if signs.contains(&0) {
            return None;
        }
        self.tope_by_signs(&signs)
    }

    /// Tope reached from `point` by an infinitesimal step along
    /// `direction * orientation`: zero signs are resolved by the direction.
    /// Returns the tope index and whether any wall was hit.
    pub fn locate_perturbed(
        &self,
        point: &[Rat],
        direction: &[i64],
        orientation: i8,
    ) -> (usize, bool) {
        let mut hit_wall = false;
        let signs: Vec<i8> = self
            .normals
            .iter()
            .map(|eta| {
                let dot = dot_int_rat(eta, point);
                if dot.is_zero() {
                    hit_wall = true;
                    let fallback: i64 = eta.iter().zip(direction).map(|(&a, &b)| a * b).sum();
                    debug_assert!(fallback != 0, "direction must be generic");
                    if fallback > 0 {
                        orientation
                    } else {
                        -orientation
                    }
                } else if dot > Rat::zero() {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let idx = self
            .tope_by_signs(&signs)
            .expect("every full sign vector is a chamber");
        (idx, hit_wall)
    }

    /// A deterministic integer direction that is orthogonal to no normal.
    pub fn generic_direction(&self) -> Vec<i64> {
        generic_direction(self.dim, &self.normals)
    }
}

pub(crate) fn generic_direction(dim: usize, avoid: &[Vec<i64>]) -> Vec<i64> {
    let max_coord = avoid
        .iter()
        .flat_map(|v| v.iter())
        .map(|&x| x.abs())
        .max()
        .unwrap_or(0);
    let mut m = 1 + max_coord;
    loop {
        let ell: Vec<i64> = (0..dim as u32).map(|k| m.pow(k)).collect();
        let ok = avoid.iter().all(|v| {
            v.iter()
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

fn dot_int_rat(a: &[i64], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(&x, y)| rat_int(x) * y)
        .fold(Rat::zero(), |acc, t| acc + t)
}

/// Number of chambers via Zaslavsky's theorem: `(-1)^dim chi(-1)`.
pub fn chamber_count(dim: usize, normals: &[Vec<i64>]) -> u64 {
    let chi = characteristic_polynomial(dim, normals.to_vec());
    let mut value: i64 = 0;
    for (k, c) in chi.iter().enumerate() {
        // chi(-1) = sum c_k (-1)^k
        value += c * if k % 2 == 0 { 1 } else { -1 };
    }
    let signed = if dim % 2 == 0 { value } else { -value };
    assert!(signed >= 0);
    signed as u64
}

/// Coefficients (by ascending power of `t`) of the characteristic
/// polynomial, computed by deletion-restriction with closed forms in
/// dimensions at most two.
fn characteristic_polynomial(dim: usize, normals: Vec<Vec<i64>>) -> Vec<i64> {
    let normals = dedupe_normals(normals);
    let m = normals.len() as i64;
    if normals.is_empty() {
        let mut chi = vec![0i64; dim + 1];
        chi[dim] = 1;
        return chi;
    }
    match dim {
        0 => unreachable!("no hyperplanes exist in dimension zero"),
        1 => vec![-m, 1], // t - m with m = 1 after dedupe
        2 => vec![m - 1, -m, 1],
        _ => {
            let mut rest = normals.clone();
            let h = rest.pop().unwrap();
            let deleted = characteristic_polynomial(dim, rest.clone());
            let restricted = characteristic_polynomial(dim - 1, restrict_to(&h, &rest));
            let mut chi = deleted;
            for (k, c) in restricted.iter().enumerate() {
                chi[k] -= c;
            }
            chi
        }
    }
}

fn dedupe_normals(normals: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut seen = std::collections::BTreeSet::new();
    for n in normals {
        let r: Vec<Rat> = n.iter().map(|&x| rat_int(x)).collect();
        seen.insert(primitive_integer(&r));
    }
    seen.into_iter().collect()
}

/// Images of the other normals inside the hyperplane of `h`, expressed in
/// kernel-basis coordinates.
fn restrict_to(h: &[i64], others: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = h.len();
    let row: Vec<Rat> = h.iter().map(|&x| rat_int(x)).collect();
    let kernel = RatMatrix::from_rows(vec![row]).unwrap().nullspace();
    debug_assert_eq!(kernel.len(), d - 1);
    let mut out = Vec::new();
    for eta in others {
        let v: Vec<Rat> = kernel
            .iter()
            .map(|k| {
                k.iter()
                    .zip(eta)
                    .map(|(a, &b)| a * rat_int(b))
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect();
        if v.iter().all(|x| x.is_zero()) {
            continue; // parallel to h, same hyperplane
        }
        out.push(primitive_integer(&v));
    }
    out
}
