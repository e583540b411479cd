//! Zonotopes of vector lists: half-space representation, interior
//! lattice-point enumeration, and the deletion-contraction bijection on
//! interior points.

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rat};
use crate::vectorlist::VectorList;
use num_traits::Zero;
use std::collections::BTreeSet;

/// One slab `lower <= normal . u <= upper` of the half-space description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<i64>,
    pub lower: i64,
    pub upper: i64,
}

/// Half-space representation of the zonotope: the Minkowski sum of the
/// segments `[0, x_i]` over the list.
#[derive(Debug, Clone)]
pub struct Zonotope {
    source: VectorList,
    halfspaces: Vec<Halfspace>,
}

/// Lexicographically sorted, duplicate-free set of lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePointSet {
    points: Vec<Vec<i64>>,
}

impl LatticePointSet {
    pub fn from_points(mut points: Vec<Vec<i64>>) -> Self {
        points.sort();
        points.dedup();
        LatticePointSet { points }
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.points.iter()
    }
}

impl Zonotope {
    /// Half-space representation from facet-normal enumeration. Normals are
    /// primitive kernels of rank-(d-1) sublists; redundant (non-facet)
    /// normals yield valid inequalities and are harmless.
    pub fn hrep(list: &VectorList) -> Result<Zonotope> {
        list.require_spanning()?;
        let halfspaces = list
            .hyperplane_normals()
            .into_iter()
            .map(|normal| {
                let (mut lower, mut upper) = (0i64, 0i64);
                for v in list.vectors() {
                    let dot: i64 = normal.iter().zip(v).map(|(&a, &b)| a * b).sum();
                    if dot > 0 {
                        upper += dot;
                    } else {
                        lower += dot;
                    }
                }
                Halfspace {
                    normal,
                    lower,
                    upper,
                }
            })
            .collect();
        Ok(Zonotope {
            source: list.clone(),
            halfspaces,
        })
    }

    pub fn source(&self) -> &VectorList {
        &self.source
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, u: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| {
            let dot = dot_rat(&h.normal, u);
            rat_int(h.lower) <= dot && dot <= rat_int(h.upper)
        })
    }

    pub fn strictly_contains(&self, u: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| {
            let dot = dot_rat(&h.normal, u);
            rat_int(h.lower) < dot && dot < rat_int(h.upper)
        })
    }

    /// Coordinate-aligned bounding box `[sum of negative parts, sum of
    /// positive parts]` per coordinate.
    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        let d = self.source.dim();
        (0..d)
            .map(|j| {
                let mut lo = 0i64;
                let mut hi = 0i64;
                for v in self.source.vectors() {
                    if v[j] > 0 {
                        hi += v[j];
                    } else {
                        lo += v[j];
                    }
                }
                (lo, hi)
            })
            .collect()
    }
}

fn dot_rat(normal: &[i64], u: &[Rat]) -> Rat {
    normal
        .iter()
        .zip(u)
        .map(|(&a, b)| rat_int(a) * b)
        .fold(Rat::zero(), |acc, t| acc + t)
}

fn dot_int(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// All lattice points in the topological interior of the zonotope, found by
/// a bounding-box scan filtered through strict half-space inequalities.
pub fn interior_lattice_points(list: &VectorList) -> Result<LatticePointSet> {
    let z = Zonotope::hrep(list)?;
    let boxes = z.bounding_box();
    let mut points = Vec::new();
    let mut current = vec![0i64; list.dim()];
    scan(&boxes, 0, &mut current, &mut |p| {
        let strict = z
            .halfspaces()
            .iter()
            .all(|h| h.lower < dot_int(&h.normal, p) && dot_int(&h.normal, p) < h.upper);
        if strict {
            points.push(p.to_vec());
        }
    });
    Ok(LatticePointSet::from_points(points))
}

fn scan(boxes: &[(i64, i64)], idx: usize, current: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if idx == boxes.len() {
        f(current);
        return;
    }
    for v in boxes[idx].0..=boxes[idx].1 {
        current[idx] = v;
        scan(boxes, idx + 1, current, f);
    }
}

/// The deletion-contraction bijection on interior lattice points: pairs
/// each `z` in `Z_-(X) \ Z_-(X \ x_i)` with its class in the quotient
/// lattice, and checks by enumeration that the pairing is a bijection onto
/// `Z_-(X / x_i)`.
pub fn lemma_bijection(list: &VectorList, i: usize) -> Result<Vec<(Vec<i64>, Vec<i64>)>> {
    list.require_totally_unimodular()?;
    if list.is_zero_vector(i)? {
        return Err(Error::ZeroVector(i));
    }
    if list.is_coloop(i)? {
        return Err(Error::ColoopPivot(i));
    }
    let contraction = list.contract(i)?;
    let inner = interior_lattice_points(list)?;
    let deleted = interior_lattice_points(&list.delete(i)?)?;
    let quotient = interior_lattice_points(contraction.child())?;

    let mut pairs = Vec::new();
    let mut images = BTreeSet::new();
    for z in inner.iter() {
        if deleted.contains(z) {
            continue;
        }
        let zbar = contraction.project_point(z);
        if !images.insert(zbar.clone()) {
            return Err(Error::BijectionFailure);
        }
        if !quotient.contains(&zbar) {
            return Err(Error::BijectionFailure);
        }
        pairs.push((z.clone(), zbar));
    }
    if images.len() != quotient.len() {
        return Err(Error::BijectionFailure);
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn vl(dim: usize, vs: &[&[i64]]) -> VectorList {
        VectorList::new(dim, vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    fn fig1() -> VectorList {
        vl(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn hrep_examples() {
        let square = Zonotope::hrep(&vl(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(
            square.halfspaces(),
            &[
                Halfspace {
                    normal: vec![0, 1],
                    lower: 0,
                    upper: 1
                },
                Halfspace {
                    normal: vec![1, 0],
                    lower: 0,
                    upper: 1
                },
            ]
        );

        let hex = Zonotope::hrep(&fig1()).unwrap();
        assert_eq!(
            hex.halfspaces(),
            &[
                Halfspace {
                    normal: vec![0, 1],
                    lower: 0,
                    upper: 2
                },
                Halfspace {
                    normal: vec![1, -1],
                    lower: -1,
                    upper: 1
                },
                Halfspace {
                    normal: vec![1, 0],
                    lower: 0,
                    upper: 2
                },
            ]
        );

        let interval = Zonotope::hrep(&vl(1, &[&[1], &[1], &[1]])).unwrap();
        assert_eq!(
            interval.halfspaces(),
            &[Halfspace {
                normal: vec![1],
                lower: 0,
                upper: 3
            }]
        );
    }

    #[test]
    fn interior_points_examples() {
        // one-dimensional list of N+1 ones: interior points 1..N
        let pts = interior_lattice_points(&vl(1, &[&[1], &[1], &[1], &[1]])).unwrap();
        assert_eq!(pts.points(), &[vec![1], vec![2], vec![3]]);

        let pts = interior_lattice_points(&fig1()).unwrap();
        assert_eq!(pts.points(), &[vec![1, 1]]);

        let pts = interior_lattice_points(&vl(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn interior_point_count_matches_tutte() {
        for list in [
            fig1(),
            vl(1, &[&[1], &[1], &[1]]),
            vl(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 1]]),
            vl(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
        ] {
            let t = list.tutte();
            let pts = interior_lattice_points(&list).unwrap();
            assert_eq!(pts.len() as i64, t.eval(0, 1), "list {list:?}");
        }
    }

    #[test]
    fn bijection_examples() {
        // deleting the diagonal leaves the unit square with no interior points
        let pairs = lemma_bijection(&fig1(), 2).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0, vec![1, 1]);

        // 1D list (1,1): interior point 1 maps to the unique class downstairs
        let pairs = lemma_bijection(&vl(1, &[&[1], &[1]]), 1).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0, vec![1]);
        assert_eq!(pairs[0].1, Vec::<i64>::new());

        // coloop pivots are rejected
        assert!(matches!(
            lemma_bijection(&vl(2, &[&[1, 0], &[0, 1], &[0, 1]]), 0),
            Err(Error::ColoopPivot(0))
        ));
    }

    #[test]
    fn shift_characterizes_deletion_membership() {
        // z in Z_-(X \ x) iff z + x in Z_-(X)
        for (list, i) in [
            (fig1(), 2usize),
            (fig1(), 0),
            (vl(1, &[&[1], &[1], &[1]]), 0),
            (vl(2, &[&[1, 0], &[0, 1], &[1, 1], &[0, 1]]), 1),
        ] {
            let x = list.get(i).unwrap().clone();
            let inner = interior_lattice_points(&list).unwrap();
            let deleted = interior_lattice_points(&list.delete(i).unwrap()).unwrap();
            for z in inner.iter() {
                let shifted: Vec<i64> = z.iter().zip(&x).map(|(&a, &b)| a + b).collect();
                assert_eq!(deleted.contains(z), inner.contains(&shifted));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn hrep_matches_fiber_lp(nx in -2i64..=4, ny in -2i64..=4, dx in 1i64..=3, dy in 1i64..=3) {
            let list = fig1();
            let z = Zonotope::hrep(&list).unwrap();
            let u = vec![rat(nx, dx), rat(ny, dy)];
            let by_hrep = z.contains(&u);
            let by_lp = lp::box_fiber_feasible(2, list.vectors(), &u);
            prop_assert_eq!(by_hrep, by_lp);
        }
    }
}
