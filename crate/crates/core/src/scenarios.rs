//! Built-in inputs and the end-to-end demo scenarios.

use serde::{Deserialize, Serialize};

use crate::analysis::{cylinder_counterexample, is_weak_barrier, jones_deficit};
use crate::convexify::convexify_2d;
use crate::error::Result;
use crate::geometry::{Dim, Polytope, Vec3};
use crate::measures::{blaschke_measure, orientation_measure, Barrier};
use crate::stability::{dbl, stability_report};

/// Demo names accepted by [`run_demo`].
pub const DEMOS: [&str; 3] = ["square-steiner", "half-boundary", "cylinder-3d"];

/// The centered unit square `[-½,½]²`.
pub fn unit_square() -> Polytope {
    Polytope::unit_cube(Dim::Two)
}

/// The Steiner point `(a,a)`, `a = (3−√3)/6`, of the corner triangle of `[0,1]²`.
pub fn steiner_point() -> Vec3 {
    let a = (3.0 - 3f64.sqrt()) / 6.0;
    Vec3::new(a, a, 0.0)
}

/// The best known barrier of the unit square: the Steiner tree of three
/// corners plus half of the remaining diagonal, moved onto the centered square.
pub fn steiner_barrier() -> Barrier {
    let s = steiner_point();
    let p = |x: f64, y: f64| Vec3::new(x, y, 0.0);
    let shift = p(0.5, 0.5);
    let segs = [[p(0.0, 1.0), s], [p(0.0, 0.0), s], [p(1.0, 0.0), s], [p(1.0, 1.0), p(0.5, 0.5)]];
    let centered: Vec<[Vec3; 2]> = segs.iter().map(|[a, b]| [a - shift, b - shift]).collect();
    Barrier::from_segments(&centered).expect("fixed segments are valid")
}

/// Half of the boundary of a full-dimensional polytope.
pub fn half_boundary(k: &Polytope) -> Result<Barrier> {
    Barrier::boundary_of(k)?.scaled(0.5)
}

/// A named assertion with its measured value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: String,
    pub passed: bool,
}

impl Check {
    fn near(name: &str, value: f64, target: f64, tol: f64) -> Self {
        Check {
            name: name.into(), value, expected: format!("{target} ± {tol}"), passed: (value - target).abs() <= tol
        }
    }

    fn holds(name: &str, value: f64, expected: &str, passed: bool) -> Self {
        Check { name: name.into(), value, expected: expected.into(), passed }
    }
}

/// Outcome of a demo: its checks and a free-form report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DemoOutcome {
    pub name: String,
    pub checks: Vec<Check>,
    pub report: serde_json::Value,
}

impl DemoOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs one of [`DEMOS`]; `None` for an unknown name.
pub fn run_demo(name: &str) -> Option<Result<DemoOutcome>> {
    match name {
        "square-steiner" => Some(square_steiner()),
        "half-boundary" => Some(half_boundary_demo()),
        "cylinder-3d" => Some(cylinder_demo()),
        _ => None,
    }
}

fn square_steiner() -> Result<DemoOutcome> {
    let q = unit_square();
    let b = steiner_barrier();
    let weak = is_weak_barrier(&b, &q)?;
    let co = convexify_2d(&b)?;
    let deficit = jones_deficit(&b, &q);
    let report = stability_report(&b, &q, 0.0)?;
    let checks = vec![
        Check::near("length", b.surface_area(), 2.639, 0.001),
        Check::holds("weak barrier", weak.margin, "True", weak.is_true()),
        Check::near("deficit", deficit, 0.639, 0.001),
        Check::near("perimeter of co(B)", co.perimeter(), 2.0 * b.surface_area(), 1e-9),
        Check::holds("Q inside co(B)", co.max_violation(&q).0, "≤ 1e-9", co.contains(&q)),
        Check::holds("exponent", report.exponent, "0.25", report.exponent == 0.25),
    ];
    Ok(DemoOutcome {
        name: "square-steiner".into(),
        checks,
        report: serde_json::json!({ "weak": weak, "stability": report, "co_b_vertices": co.vertices().len() }),
    })
}

fn half_boundary_demo() -> Result<DemoOutcome> {
    let q = unit_square();
    let b = half_boundary(&q)?;
    let weak = is_weak_barrier(&b, &q)?;
    let deficit = jones_deficit(&b, &q);
    let d = dbl(&blaschke_measure(&q)?, &orientation_measure(&b))?;
    let equal = blaschke_measure(&q)?.approx_eq(&orientation_measure(&b), 1e-9, 1e-9);
    let checks = vec![
        Check::holds("weak barrier", weak.margin, "True", weak.is_true()),
        Check::near("deficit", deficit, 0.0, 1e-9),
        Check::near("dbl", d, 0.0, 1e-9),
        Check::holds("measures equal", d, "S(∇Q) = S*(B)", equal),
    ];
    Ok(DemoOutcome {
        name: "half-boundary".into(),
        checks,
        report: serde_json::json!({ "weak": weak, "deficit": deficit, "dbl": d }),
    })
}

fn cylinder_demo() -> Result<DemoOutcome> {
    let r = cylinder_counterexample(3.0, 3)?;
    let checks = vec![
        Check::holds("ΠK ⊂ Π(co B)", r.weak_barrier.margin, "True", r.weak_barrier.is_true()),
        Check::holds("∇K ⊄ co(B)", r.containment_violation, "> 0", !r.nabla_inside),
        Check::holds(
            "projection areas of K",
            r.max_projection_area,
            &format!("≤ {}", r.projection_bound),
            r.max_projection_area <= r.projection_bound,
        ),
    ];
    Ok(DemoOutcome { name: "cylinder-3d".into(), checks, report: serde_json::to_value(&r)? })
}
