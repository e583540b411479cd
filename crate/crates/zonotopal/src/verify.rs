//! The per-list invariant suite behind the `verify` command: dimension
//! identities, Tutte cross-checks, deletion-contraction structure, solver
//! round trips, smoothness, support, and the Monte Carlo volume oracle.

use crate::arrangement;
use crate::error::{Error, Result};
use crate::interpolate::{nabla, sigma, Analyzer, GridFunction, PivotRule};
use crate::oracle;
use crate::poly::MultiPoly;
use crate::pspace::{central_space, project_section};
use crate::rational::{format_rat, rat_int, Rat};
use crate::spline::{build_multivariate, check_convolution_identity, wall_sample_points};
use crate::vectorlist::VectorList;
use crate::zonotope::{interior_lattice_points, lemma_bijection, Zonotope};
use num_traits::ToPrimitive;

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.lines.push(CheckLine {
            name: name.to_string(),
            pass,
            detail,
        });
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<String>) {
        match f() {
            Ok(detail) => self.push(name, true, detail),
            Err(e) => self.push(name, false, e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Skip the exponential cross-checks above this list length.
    pub max_n: usize,
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 10,
            mc_samples: 100_000,
            seed: 20_240_901,
        }
    }
}

fn expect(cond: bool, message: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(message.to_string()))
    }
}

/// Runs every invariant on one list. A non-TU or non-spanning list fails
/// the corresponding precondition lines and skips the theorem checks.
pub fn run_invariant_suite(list: &VectorList, opts: VerifyOptions) -> CheckReport {
    let mut report = CheckReport { lines: Vec::new() };

    let spanning = list.is_spanning();
    report.push(
        "spanning",
        spanning,
        format!("rank {} in dimension {}", list.rank(), list.dim()),
    );
    let tu_witness = list.tu_witness();
    match &tu_witness {
        None => report.push("totally-unimodular", true, "all submatrix determinants in {-1,0,1}".into()),
        Some((rows, cols, det)) => report.push(
            "totally-unimodular",
            false,
            format!(
                "submatrix rows {rows:?} cols {cols:?} has determinant {}",
                format_rat(det)
            ),
        ),
    }
    if !spanning || tu_witness.is_some() {
        return report;
    }

    let mut analyzer = Analyzer::new();

    if list.len() <= opts.max_n {
        report.run("tutte-recursion-vs-oracle", || {
            expect(
                list.tutte() == list.tutte_corank_nullity(),
                "deletion-contraction disagrees with the corank-nullity sum",
            )?;
            Ok(format!("T = {}", list.tutte().to_display()))
        });
    }

    report.run("dimension-identities", || {
        let t = list.tutte();
        let internal = analyzer.internal_basis(list)?;
        let central = central_space(list)?;
        let points = analyzer.interior_points(list)?;
        let (bases, volume) = list.basis_count_and_volume();
        expect(
            internal.dimension() as i64 == t.eval(0, 1),
            "internal dimension differs from T(0,1)",
        )?;
        expect(
            points.len() as i64 == t.eval(0, 1),
            "interior point count differs from T(0,1)",
        )?;
        expect(
            central.dimension() as i64 == t.eval(1, 1),
            "central dimension differs from T(1,1)",
        )?;
        expect(
            bases as i64 == t.eval(1, 1),
            "basis count differs from T(1,1)",
        )?;
        expect(
            volume == rat_int(t.eval(1, 1)),
            "zonotope volume differs from T(1,1)",
        )?;
        Ok(format!(
            "dim internal = |interior| = {}, dim central = #bases = {}",
            points.len(),
            bases
        ))
    });

    report.run("hrep-vs-lp-membership", || {
        let z = Zonotope::hrep(list)?;
        let mut sampler = oracle::RatPointSampler::new(opts.seed);
        let boxes: Vec<(i64, i64)> = z.bounding_box().iter().map(|&(lo, hi)| (lo - 1, hi + 1)).collect();
        for _ in 0..12 {
            let u = sampler.point_in_box(&boxes);
            expect(
                z.contains(&u) == oracle::zonotope_member_lp(list, &u),
                "half-space membership disagrees with LP feasibility",
            )?;
        }
        Ok("12 sampled points agree".into())
    });

    let pivots: Vec<usize> = (0..list.len())
        .filter(|&i| {
            !list.is_zero_vector(i).unwrap_or(true) && !list.is_coloop(i).unwrap_or(true)
        })
        .take(2)
        .collect();

    for &i in &pivots {
        report.run(&format!("lattice-bijection-pivot-{i}"), || {
            let pairs = lemma_bijection(list, i)?;
            Ok(format!("{} interior points paired", pairs.len()))
        });

        report.run(&format!("convolution-identity-pivot-{i}"), || {
            let candidates = off_wall_samples(list, 40, opts.seed)?;
            let mut verified = 0usize;
            for u in &candidates {
                match check_convolution_identity(list, i, std::slice::from_ref(u)) {
                    Ok(_) => verified += 1,
                    Err(Error::WallSample) => continue,
                    Err(e) => return Err(e),
                }
                if verified == 3 {
                    break;
                }
            }
            expect(verified == 3, "could not verify three off-wall samples")?;
            Ok("3 samples verified".into())
        });

        report.run(&format!("diagram-commutes-pivot-{i}"), || {
            diagram_commutativity(&mut analyzer, list, i)?;
            Ok("both squares commute".into())
        });
    }

    report.run("solver-round-trip", || {
        let points = analyzer.interior_points(list)?;
        let mut sampler = oracle::RatPointSampler::new(opts.seed ^ 0x5eed);
        for round in 0..2 {
            let pairs: Vec<(Vec<i64>, Rat)> = points
                .iter()
                .map(|z| (z.clone(), sampler.rational(6)))
                .collect();
            let f = GridFunction::from_pairs(list.dim(), pairs)?;
            let direct = analyzer.solve_direct(list, &f)?;
            let back = analyzer.gamma(list, &direct.poly)?;
            expect(back == f, "direct solution does not reproduce the data")?;
            let rec = analyzer.solve_recursive(list, &f)?;
            expect(rec.poly == direct.poly, "recursive solver disagrees")?;
            let rec2 = analyzer.solve_recursive_with_rule(list, &f, PivotRule::LastNonColoop)?;
            expect(
                rec2.poly == direct.poly,
                "pivot choice changed the recursive solution",
            )?;
            let _ = round;
        }
        Ok(format!("2 random data sets on {} points", points.len()))
    });

    report.run("homogeneity-and-support", || {
        let t = build_multivariate(list)?;
        expect(t.homogeneity_ok(), "a piece has the wrong degree")?;
        // pieces vanish on topes outside the cone of the list
        let normalized = t.normalized().clone();
        for (tope, piece) in t.arrangement().topes().iter().zip(t.pieces()) {
            let inside = crate::lp::cone_member(
                normalized.dim(),
                normalized.vectors(),
                &tope.witness,
            );
            if !inside {
                expect(piece.is_zero(), "nonzero piece outside the support cone")?;
            }
        }
        // box spline vanishes outside the zonotope
        let b = analyzer.box_spline(list)?;
        let z = Zonotope::hrep(list)?;
        let mut sampler = oracle::RatPointSampler::new(opts.seed ^ 0xb0);
        let boxes: Vec<(i64, i64)> = z
            .bounding_box()
            .iter()
            .map(|&(lo, hi)| (lo - 2, hi + 2))
            .collect();
        let mut outside = 0;
        let mut attempts = 0;
        while outside < 10 && attempts < 500 {
            attempts += 1;
            let u = sampler.point_in_box(&boxes);
            if z.contains(&u) {
                continue;
            }
            outside += 1;
            match b.eval(&u) {
                Ok(v) => expect(v == Rat::from_integer(0.into()), "nonzero value outside the zonotope")?,
                Err(Error::Discontinuity { .. }) => {
                    return Err(Error::Invariant(
                        "discontinuity outside the support".into(),
                    ))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(format!("{} pieces homogeneous of degree {}", t.pieces().len(), t.degree()))
    });

    report.run("smoothness-on-walls", || {
        let internal = analyzer.internal_basis(list)?;
        let b = analyzer.box_spline(list)?;
        let points = wall_sample_points(&b, 2);
        let mut checked = 0usize;
        for p in internal.basis() {
            let applied = b.apply(&p)?;
            for u in &points {
                // evaluation itself compares the one-sided limits
                applied.eval(u)?;
                checked += 1;
            }
        }
        Ok(format!("{checked} wall evaluations with matching limits"))
    });

    report.run("monte-carlo-volume", || {
        let t = build_multivariate(list)?;
        let normalized = t.normalized().clone();
        let mut sampler = oracle::RatPointSampler::new(opts.seed ^ 0xca11);
        let mut done = 0usize;
        let mut attempts = 0usize;
        while done < 3 && attempts < 60 {
            attempts += 1;
            // random positive combination lands inside the cone
            let mut u = vec![Rat::from_integer(0.into()); normalized.dim()];
            for v in normalized.vectors() {
                let c = sampler.rational(2);
                let c = if c <= Rat::from_integer(0.into()) {
                    c + rat_int(3)
                } else {
                    c
                };
                for (uj, &vj) in u.iter_mut().zip(v) {
                    *uj += c.clone() * rat_int(vj);
                }
            }
            let exact = match t.eval(&u) {
                Ok(v) => v,
                Err(Error::Discontinuity { .. }) => continue,
                Err(e) => return Err(e),
            };
            let est =
                oracle::monte_carlo_truncated_power(&normalized, &u, opts.mc_samples, opts.seed);
            let exact_f = exact.to_f64().expect("finite");
            let tolerance = 3.0 * est.std_err.max(1e-12);
            expect(
                (est.value - exact_f).abs() <= tolerance,
                "Monte Carlo estimate outside three standard errors",
            )?;
            done += 1;
        }
        expect(done == 3, "could not find three generic sample points")?;
        Ok(format!("3 points within 3 standard errors ({} samples)", opts.mc_samples))
    });

    report
}

/// Deterministic rational samples in the bounding box of the zonotope,
/// filtered away from the integer-offset wall translates of the central
/// arrangement (a necessary condition for every fiber translate of the
/// point to stay off the walls).
pub fn off_wall_samples(list: &VectorList, count: usize, seed: u64) -> Result<Vec<Vec<Rat>>> {
    use num_traits::One;
    let z = Zonotope::hrep(list)?;
    let normals = list.hyperplane_normals();
    let boxes = z.bounding_box();
    let mut sampler = oracle::RatPointSampler::new(seed ^ 0x0ff);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 800 {
        attempts += 1;
        let u = sampler.point_in_box(&boxes);
        let off = normals.iter().all(|eta| {
            let dot = eta
                .iter()
                .zip(&u)
                .map(|(&a, b)| rat_int(a) * b)
                .fold(Rat::from_integer(0.into()), |acc, t| acc + t);
            !dot.denom().is_one()
        });
        if off {
            out.push(u);
        }
    }
    Ok(out)
}

/// Both commuting squares of the deletion-contraction diagram, checked by
/// exact evaluation on grid functions.
fn diagram_commutativity(analyzer: &mut Analyzer, list: &VectorList, pivot: usize) -> Result<()> {
    let contraction = list.contract(pivot)?;
    let x = contraction.pivot().clone();
    let deleted = list.delete(pivot)?;

    // left square: multiplying by the pivot form matches the backward
    // difference of the deleted-list grid function
    let deleted_internal = analyzer.internal_basis(&deleted)?;
    let px = MultiPoly::linear_form(&x);
    for p in deleted_internal.basis() {
        let lhs = analyzer.gamma(list, &p.mul(&px))?;
        let rhs = nabla(&analyzer.gamma(&deleted, &p)?, &x);
        expect(lhs == rhs, "left square of the diagram fails")?;
    }

    // right square: fiber sums match the projected operator downstairs
    let internal = analyzer.internal_basis(list)?;
    let section = project_section(&internal, &contraction)?;
    for (p, image) in internal.basis().iter().zip(&section.images) {
        let lhs = sigma(&analyzer.gamma(list, p)?, &contraction);
        let rhs = analyzer.gamma(contraction.child(), image)?;
        expect(lhs == rhs, "right square of the diagram fails")?;
    }
    let _ = arrangement::chamber_count(list.dim(), &list.hyperplane_normals());
    Ok(())
}
