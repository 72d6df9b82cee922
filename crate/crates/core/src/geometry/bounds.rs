//! Enclosing and enclosed ball radii from mean width, surface area or a
//! ball sandwich of the projection body.

use super::{kappa, omega, Dim, Polytope, Vec3, TOL};
use crate::error::{Error, Result};

/// Input for one of the three ball-bound clauses.
#[derive(Clone, Debug)]
pub enum BallBoundInput<'a> {
    /// A body containing the origin: `K ⊂ R₀Bⁿ`, `R₀ = (ω_n/(2κ_{n-1})) w(K)`.
    MeanWidth(&'a Polytope),
    /// A body with `rBⁿ ⊂ K`: `R₀ = 2^{n-1} κ_{n-2}^{-1} r^{-(n-2)} S(∂K)`.
    SurfaceArea { body: &'a Polytope, r: f64 },
    /// Raw data of the previous clause.
    SurfaceAreaValue { n: usize, r: f64, surface: f64 },
    /// An origin-symmetric body with `rBⁿ ⊂ ΠK ⊂ RBⁿ`:
    /// `R₀ = (ω_n/r)(R/κ_{n-1})^{n/(n-1)}` and `r₀ = r/(2^{n-1} R₀^{n-2})`.
    ProjectionSandwich { n: usize, r: f64, big_r: f64 },
}

/// Radii with `r₀Bⁿ ⊂ K ⊂ R₀Bⁿ`; `inner` is only produced by the sandwich clause
/// (the surface-area clause echoes its given `r`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallBounds {
    pub inner: Option<f64>,
    pub outer: f64,
}

pub fn ball_bounds(input: &BallBoundInput) -> Result<BallBounds> {
    match input {
        BallBoundInput::MeanWidth(k) => {
            if !k.contains_point(&Vec3::zeros()) && k.is_full_dimensional() {
                return Err(Error::InvalidData("body must contain the origin".into()));
            }
            let n = k.dim().n();
            Ok(BallBounds { inner: None, outer: omega(n) / (2.0 * kappa(n - 1)) * k.mean_width() })
        }
        BallBoundInput::SurfaceArea { body, r } => {
            if !(*r > 0.0) {
                return Err(Error::InvalidData("r must be positive".into()));
            }
            if body.facets().iter().any(|f| *r > f.offset + TOL) {
                return Err(Error::InvalidData(format!("ball of radius {r} is not inside the body")));
            }
            ball_bounds(&BallBoundInput::SurfaceAreaValue { n: body.dim().n(), r: *r, surface: body.surface_area() })
        }
        BallBoundInput::SurfaceAreaValue { n, r, surface } => {
            if *n < 2 || !(*r > 0.0) {
                return Err(Error::InvalidData("need n ≥ 2 and r > 0".into()));
            }
            let n = *n;
            let outer = 2f64.powi(n as i32 - 1) / kappa(n - 2) * r.powi(-(n as i32 - 2)) * surface;
            Ok(BallBounds { inner: Some(*r), outer })
        }
        BallBoundInput::ProjectionSandwich { n, r, big_r } => {
            if *n < 2 || !(*r > 0.0) || big_r < r {
                return Err(Error::InvalidData("need n ≥ 2 and R ≥ r > 0".into()));
            }
            let n = *n;
            let nf = n as f64;
            let outer = omega(n) / r * (big_r / kappa(n - 1)).powf(nf / (nf - 1.0));
            let inner = r / (2f64.powi(n as i32 - 1) * outer.powi(n as i32 - 2));
            Ok(BallBounds { inner: Some(inner), outer })
        }
    }
}

/// Sandwich clause for a given dimension.
pub fn sandwich(dim: Dim, r: f64, big_r: f64) -> BallBoundInput<'static> {
    BallBoundInput::ProjectionSandwich { n: dim.n(), r, big_r }
}
