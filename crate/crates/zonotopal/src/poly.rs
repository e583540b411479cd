//! Multivariate polynomials over the rationals in a fixed number of
//! variables `s1..sd`. A polynomial doubles as a constant-coefficient
//! differential operator: `apply_diff` substitutes `d/ds_i` for `s_i`.
//!
//! Terms are kept in graded-lexicographic order (degree first, then `s1`
//! before `s2` within a degree), which makes serialization canonical.

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with graded-lex ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Exponent(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coef: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = MultiPoly::zero(nvars);
        if !coef.is_zero() {
            p.terms.insert(Exponent(exps), coef);
        }
        p
    }

    /// The linear form `v . s` of an integer vector.
    pub fn linear_form(v: &[i64]) -> Self {
        let n = v.len();
        let mut p = MultiPoly::zero(n);
        for (i, &vi) in v.iter().enumerate() {
            if vi != 0 {
                let mut e = vec![0u32; n];
                e[i] = 1;
                p.terms.insert(Exponent(e), rat_int(vi));
            }
        }
        p
    }

    /// Product of the linear forms of a list of vectors; the empty list
    /// gives the constant 1.
    pub fn product_form<'a, I>(nvars: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<i64>>,
    {
        let mut p = MultiPoly::one(nvars);
        for v in vectors {
            p = p.mul(&MultiPoly::linear_form(v));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Exponent(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = Exponent(
                    ea.0.iter()
                        .zip(&eb.0)
                        .map(|(x, y)| x + y)
                        .collect::<Vec<_>>(),
                );
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn is_homogeneous_of(&self, deg: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == deg)
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.degree())
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .insert(e.clone(), c.clone());
        }
        out
    }

    /// Applies `self` as a differential operator to `target`.
    pub fn apply_diff(&self, target: &Self) -> Result<Self> {
        if self.nvars != target.nvars {
            return Err(Error::DimensionMismatch(format!(
                "operator in {} variables applied to polynomial in {}",
                self.nvars, target.nvars
            )));
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (alpha, ca) in &self.terms {
            for (beta, cb) in &target.terms {
                if alpha.0.iter().zip(&beta.0).any(|(a, b)| a > b) {
                    continue;
                }
                // falling factorial per variable
                let mut factor = BigInt::one();
                let mut e = Vec::with_capacity(self.nvars);
                for (a, b) in alpha.0.iter().zip(&beta.0) {
                    for k in 0..*a {
                        factor *= BigInt::from(b - k);
                    }
                    e.push(b - a);
                }
                out.insert(Exponent(e), ca * cb * Rat::from_integer(factor));
            }
        }
        Ok(out)
    }

    /// Image under the algebra map that substitutes the linear form given by
    /// column `i` of `map` for the variable `s_i`. `map` has one row per
    /// target variable.
    pub fn project_vars(&self, map: &[Vec<i64>]) -> Result<Self> {
        let target_vars = map.len();
        for row in map {
            if row.len() != self.nvars {
                return Err(Error::DimensionMismatch(format!(
                    "projection row has {} entries, expected {}",
                    row.len(),
                    self.nvars
                )));
            }
        }
        // images of the source variables
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                let col: Vec<i64> = map.iter().map(|row| row[i]).collect();
                MultiPoly::linear_form(&col)
            })
            .collect();
        let mut out = MultiPoly::zero(target_vars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target_vars, c.clone());
            for (i, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&images[i].pow(exp));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.0.iter().enumerate() {
                for _ in 0..exp {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Coefficients (ascending in `t`) of `p(base + t * dir)`.
    pub fn restrict_line(&self, base: &[Rat], dir: &[Rat]) -> Result<Vec<Rat>> {
        if base.len() != self.nvars || dir.len() != self.nvars {
            return Err(Error::DimensionMismatch(
                "line parameters do not match variable count".into(),
            ));
        }
        let mut acc = vec![Rat::zero()];
        for (e, c) in &self.terms {
            let mut term = vec![c.clone()];
            for (i, &exp) in e.0.iter().enumerate() {
                for _ in 0..exp {
                    term = uni_mul_linear(&term, &base[i], &dir[i]);
                }
            }
            acc = uni_add(&acc, &term);
        }
        Ok(acc)
    }
}

fn uni_mul_linear(p: &[Rat], a: &Rat, b: &Rat) -> Vec<Rat> {
    // p(t) * (a + b t)
    let mut out = vec![Rat::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k] += c * a;
        out[k + 1] += c * b;
    }
    out
}

fn uni_add(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    let n = p.len().max(q.len());
    (0..n)
        .map(|k| {
            let a = p.get(k).cloned().unwrap_or_else(Rat::zero);
            let b = q.get(k).cloned().unwrap_or_else(Rat::zero);
            a + b
        })
        .collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &exp)| exp > 0)
                .map(|(i, &exp)| {
                    if exp == 1 {
                        format!("s{}", i + 1)
                    } else {
                        format!("s{}^{}", i + 1, exp)
                    }
                })
                .collect();
            let coef_str = crate::rational::format_rat(&mag);
            if vars.is_empty() {
                write!(f, "{coef_str}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", coef_str, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn linear_forms() {
        assert_eq!(MultiPoly::linear_form(&[1, 0]).to_string(), "s1");
        assert_eq!(MultiPoly::linear_form(&[1, 2]).to_string(), "s1 + 2*s2");
        assert!(MultiPoly::linear_form(&[0, 0]).is_zero());
    }

    #[test]
    fn product_forms() {
        // ((1,0),(1,2)) -> s1^2 + 2 s1 s2
        let p = MultiPoly::product_form(2, &[vec![1, 0], vec![1, 2]]);
        assert_eq!(p.to_string(), "s1^2 + 2*s1*s2");
        assert_eq!(MultiPoly::product_form(2, &[]), MultiPoly::one(2));
        let sq = MultiPoly::product_form(2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(sq.to_string(), "s1^2 + 2*s1*s2 + s2^2");
    }

    #[test]
    fn diff_examples() {
        let s1 = MultiPoly::linear_form(&[1, 0]);
        let s1sq = s1.mul(&s1);
        assert_eq!(s1.apply_diff(&s1sq).unwrap().to_string(), "2*s1");
        let q = MultiPoly::product_form(2, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(MultiPoly::one(2).apply_diff(&q).unwrap(), q);
        let s1s2 = MultiPoly::monomial(2, vec![1, 1], Rat::one());
        assert_eq!(s1s2.apply_diff(&s1s2).unwrap(), MultiPoly::one(2));
    }

    #[test]
    fn projection_examples() {
        // drop the second variable: map with single row (1, 0)
        let map = vec![vec![1, 0]];
        let s2 = MultiPoly::linear_form(&[0, 1]);
        assert!(s2.project_vars(&map).unwrap().is_zero());
        let s1ps2 = MultiPoly::linear_form(&[1, 1]);
        assert_eq!(s1ps2.project_vars(&map).unwrap().to_string(), "s1");
        assert_eq!(
            MultiPoly::one(2).project_vars(&map).unwrap(),
            MultiPoly::one(1)
        );
    }

    #[test]
    fn eval_examples() {
        let p = MultiPoly::linear_form(&[1, 2]);
        assert_eq!(p.eval(&[rat(1, 1), rat(1, 1)]).unwrap(), rat(3, 1));
        assert_eq!(
            MultiPoly::zero(2).eval(&[rat(5, 1), rat(7, 1)]).unwrap(),
            rat(0, 1)
        );
        let s1sq = MultiPoly::monomial(2, vec![2, 0], Rat::one());
        assert_eq!(s1sq.eval(&[rat(3, 2), rat(0, 1)]).unwrap(), rat(9, 4));
    }

    #[test]
    fn restrict_line_matches_eval() {
        let p = MultiPoly::product_form(2, &[vec![1, 0], vec![1, 2], vec![0, 1]]);
        let base = vec![rat(1, 2), rat(-1, 3)];
        let dir = vec![rat(2, 1), rat(1, 5)];
        let coeffs = p.restrict_line(&base, &dir).unwrap();
        for t in [rat(0, 1), rat(1, 1), rat(-3, 7)] {
            let pt: Vec<Rat> = base
                .iter()
                .zip(&dir)
                .map(|(b, d)| b + d * &t)
                .collect();
            let direct = p.eval(&pt).unwrap();
            let mut horner = Rat::zero();
            for c in coeffs.iter().rev() {
                horner = horner * &t + c;
            }
            assert_eq!(direct, horner);
        }
    }

    fn small_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..3, nvars),
                (-4i64..=4, 1i64..=3),
            ),
            0..5,
        )
        .prop_map(move |terms| {
            let mut p = MultiPoly::zero(nvars);
            for (e, (n, d)) in terms {
                p = p.add(&MultiPoly::monomial(nvars, e, rat(n, d)));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn operators_compose(p in small_poly(2), q in small_poly(2), f in small_poly(2)) {
            let lhs = p.mul(&q).apply_diff(&f).unwrap();
            let rhs = p.apply_diff(&q.apply_diff(&f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn projection_is_algebra_map(p in small_poly(2), q in small_poly(2)) {
            let map = vec![vec![2, -1]];
            let lhs = p.mul(&q).project_vars(&map).unwrap();
            let rhs = p.project_vars(&map).unwrap().mul(&q.project_vars(&map).unwrap());
            prop_assert_eq!(lhs, rhs);
            let lhs_add = p.add(&q).project_vars(&map).unwrap();
            let rhs_add = p.project_vars(&map).unwrap().add(&q.project_vars(&map).unwrap());
            prop_assert_eq!(lhs_add, rhs_add);
        }

        #[test]
        fn product_form_degree(vs in proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, 2).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0)),
            0..5))
        {
            let p = MultiPoly::product_form(2, &vs);
            prop_assert_eq!(p.total_degree(), Some(vs.len() as u32));
        }
    }
}
