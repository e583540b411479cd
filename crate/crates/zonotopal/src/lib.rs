//! Exact-arithmetic toolkit for box splines on totally unimodular vector
//! lists: zonotope lattice-point enumeration, central/internal P-spaces,
//! Tutte polynomials, symbolic piecewise-polynomial spline construction,
//! and the interpolation solver that reconstructs a differential operator
//! from values on the interior lattice points of the zonotope.
//!
//! All arithmetic is over arbitrary-precision rationals; the only
//! non-exact component is the Monte Carlo volume oracle in [`oracle`],
//! which exists to cross-check the symbolic spline engine.

pub mod arrangement;
pub mod error;
pub mod interpolate;
pub mod jsonio;
pub mod lp;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod pspace;
pub mod rational;
pub mod spline;
pub mod vectorlist;
pub mod verify;
pub mod zonotope;

pub use error::Error;
pub use interpolate::{
    cardinal_matrix, gamma, nabla, sigma, solve_direct, solve_recursive, Analyzer, CardinalMatrix,
    GridFunction, Interpolant, PivotRule,
};
pub use matrix::{RatMatrix, SolveOutcome};
pub use poly::MultiPoly;
pub use pspace::{central_space, internal_space, PSpaceBasis, SpaceKind};
pub use rational::{format_rat, parse_rat, rat, Rat};
pub use spline::{build_box, build_multivariate, cardinal_bspline, PiecewiseSpline};
pub use vectorlist::{Contraction, TuttePoly, VectorList};
pub use zonotope::{interior_lattice_points, Zonotope};
