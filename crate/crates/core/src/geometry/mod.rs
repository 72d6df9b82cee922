//! Polytope geometry in ℝ² and ℝ³.
//!
//! Points and vectors are stored as [`Vec3`]; planar data lives in the
//! `z = 0` plane and carries [`Dim::Two`]. Incidence tests use the absolute
//! tolerance [`TOL`], which assumes bodies of roughly unit scale.

mod bounds;
mod hull;
mod icosphere;
mod polytope;
mod zonotope;

use serde::{Deserialize, Serialize};

pub use bounds::{ball_bounds, sandwich, BallBoundInput, BallBounds};
pub use hull::{affine_dimension, convex_hull_2d, convex_hull_3d, Hull3};
pub use icosphere::Icosphere;
pub(crate) use polytope::clip_facets;
pub use polytope::{minkowski_sum_2d, Ball, Edge, Facet, Polytope};
pub use zonotope::{zonotope, Zonotope};

use crate::error::{Error, Result};

pub type Vec3 = nalgebra::Vector3<f64>;

/// Absolute tolerance for incidence and containment tests.
pub const TOL: f64 = 1e-9;

/// Ambient dimension. Only the plane and space are supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn n(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    pub fn from_n(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            _ => Err(Error::InvalidData(format!("dimension {n} not supported (2 or 3)"))),
        }
    }
}

impl TryFrom<usize> for Dim {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Dim::from_n(n)
    }
}

impl From<Dim> for usize {
    fn from(d: Dim) -> usize {
        d.n()
    }
}

/// Volume `κ_n` of the unit ball in ℝⁿ.
pub fn kappa(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / n as f64 * kappa(n - 2),
    }
}

/// Surface area `ω_n = n κ_n` of the unit sphere in ℝⁿ.
pub fn omega(n: usize) -> f64 {
    n as f64 * kappa(n)
}

/// A unit vector on `S^{n-1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    v: Vec3,
    dim: Dim,
}

impl Direction {
    /// Builds a direction from 2 or 3 coordinates, renormalizing.
    pub fn new(coords: &[f64]) -> Result<Self> {
        let dim = Dim::from_n(coords.len())?;
        let v = Vec3::new(coords[0], coords[1], coords.get(2).copied().unwrap_or(0.0));
        Self::from_vec(dim, v)
    }

    pub fn from_vec(dim: Dim, mut v: Vec3) -> Result<Self> {
        if dim == Dim::Two {
            v.z = 0.0;
        }
        let norm = v.norm();
        if !(norm > 1e-300) || !norm.is_finite() {
            return Err(Error::InvalidData("direction must be a non-zero finite vector".into()));
        }
        Ok(Self { v: v / norm, dim })
    }

    /// Planar direction `(cos θ, sin θ)`.
    pub fn from_angle(theta: f64) -> Self {
        Self { v: Vec3::new(theta.cos(), theta.sin(), 0.0), dim: Dim::Two }
    }

    pub fn vec(&self) -> Vec3 {
        self.v
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn coords(&self) -> Vec<f64> {
        self.v.as_slice()[..self.dim.n()].to_vec()
    }

    pub fn dot(&self, x: &Vec3) -> f64 {
        self.v.dot(x)
    }

    /// Angle in `[0, π]` to another direction.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        self.v.dot(&other.v).clamp(-1.0, 1.0).acos()
    }
}

impl std::ops::Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction { v: -self.v, dim: self.dim }
    }
}

/// Counter-clockwise rotation by π/2 in the plane.
pub fn rot90(v: &Vec3) -> Vec3 {
    Vec3::new(-v.y, v.x, 0.0)
}

/// Two unit vectors completing `u` to an orthonormal basis of ℝ³.
pub fn orthonormal_complement(u: &Vec3) -> (Vec3, Vec3) {
    let helper = if u.x.abs() < 0.6 {
        Vec3::x()
    } else if u.y.abs() < 0.6 {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let e1 = u.cross(&helper).normalize();
    let e2 = u.cross(&e1);
    (e1, e2)
}

/// Embeds 2 or 3 coordinates into a [`Vec3`].
pub fn point_from_slice(dim: Dim, c: &[f64]) -> Result<Vec3> {
    if c.len() != dim.n() {
        return Err(Error::Parse(format!("expected {} coordinates, got {}", dim.n(), c.len())));
    }
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Parse("non-finite coordinate".into()));
    }
    Ok(Vec3::new(c[0], c[1], if dim == Dim::Three { c[2] } else { 0.0 }))
}

pub fn point_to_vec(dim: Dim, p: &Vec3) -> Vec<f64> {
    p.as_slice()[..dim.n()].to_vec()
}
