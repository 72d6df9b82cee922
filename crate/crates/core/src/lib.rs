//! Barriers ("opaque sets") of convex bodies in the plane and in space.
//!
//! The crate works with finite piecewise-linear barriers (segments in 2D,
//! triangles in 3D) and convex polytopes. It builds the convexification of a
//! barrier, projection bodies and Blaschke bodies, decides whether a barrier
//! is a weak barrier (its multiplicity-counted projections dominate those of
//! the body), and evaluates the Jones-deficit stability quantities with exact
//! discrete-measure metrics.
//!
//! Module map:
//! - [`geometry`]: directions, polytopes, hulls, zonotopes, icospheres, ball bounds.
//! - [`measures`]: barriers and discrete measures on the sphere.
//! - [`convexify`]: convexification in 2D and the 3D Minkowski solver.
//! - [`analysis`]: weak/strong barrier decisions and Jones deficits.
//! - [`stability`]: bounded-Lipschitz metric, `J_β` masses, stability reports.
//! - [`io`], [`svg`], [`scenarios`]: file formats, rendering and built-in inputs.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod convexify;
pub mod error;
pub mod geometry;
pub mod io;
pub mod measures;
pub mod samples;
pub mod scenarios;
pub mod stability;
pub mod svg;

pub use analysis::{CertifiedBool, Verdict};
pub use convexify::{convexify, convexify_2d, solve_minkowski, MinkowskiSolution, SolverOptions};
pub use error::{Error, Result};
pub use geometry::{Dim, Direction, Polytope, Vec3};
pub use measures::{Barrier, DirectionalMeasure, Piece};
pub use stability::StabilityReport;
