//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes and returns JSON strings. The plain functions in
//! [`ops`] do the work and run natively too, which keeps them testable.

use wasm_bindgen::prelude::*;

pub mod ops {
    use opaque_core::analysis::{is_weak_barrier, jones_deficit};
    use opaque_core::convexify::convexify_2d;
    use opaque_core::geometry::{Polytope, Vec3};
    use opaque_core::io::{parse_barrier, parse_polytope};
    use opaque_core::measures::Barrier;
    use opaque_core::scenarios::unit_square;
    use opaque_core::svg::{render, Scene};
    use opaque_core::Dim;
    use serde_json::{json, Value};

    const SVG_WIDTH: u32 = 480;

    fn planar(b: &Barrier) -> Result<(), String> {
        if b.dim() == Dim::Two {
            Ok(())
        } else {
            Err("the demo draws planar barriers only".into())
        }
    }

    fn summary(b: &Barrier, k: Option<&Polytope>) -> Result<Value, String> {
        planar(b)?;
        let co = convexify_2d(b).map_err(|e| e.to_string())?;
        let svg = render(&Scene { body: k, barrier: Some(b), convexification: Some(&co) }, SVG_WIDTH);
        let mut out = json!({
            "svg": svg,
            "length": b.surface_area(),
            "co_perimeter": co.perimeter(),
            "co_vertices": co.vertices().len(),
        });
        if let Some(k) = k {
            let weak = is_weak_barrier(b, k).map_err(|e| e.to_string())?;
            out["weak"] = serde_json::to_value(&weak).map_err(|e| e.to_string())?;
            out["deficit"] = json!(jones_deficit(b, k));
            out["body_inside_co"] = json!(co.contains(k));
        }
        Ok(out)
    }

    /// Convexification of a barrier, drawn over an optional body (empty string for none).
    pub fn convexify(barrier_json: &str, body_json: &str) -> Result<String, String> {
        let b = parse_barrier(barrier_json).map_err(|e| e.to_string())?;
        let k = if body_json.trim().is_empty() {
            None
        } else {
            Some(parse_polytope(body_json).map_err(|e| e.to_string())?)
        };
        Ok(summary(&b, k.as_ref())?.to_string())
    }

    /// Weak-barrier verdict with its witness direction and the deficit.
    pub fn check_weak(barrier_json: &str, body_json: &str) -> Result<String, String> {
        let b = parse_barrier(barrier_json).map_err(|e| e.to_string())?;
        let k = parse_polytope(body_json).map_err(|e| e.to_string())?;
        let weak = is_weak_barrier(&b, &k).map_err(|e| e.to_string())?;
        Ok(json!({ "weak": weak, "deficit": jones_deficit(&b, &k), "length": b.surface_area() }).to_string())
    }

    /// The centered unit square's barrier made of three corners joined to
    /// `(x, y)` plus half of the remaining diagonal.
    pub fn steiner(x: f64, y: f64) -> Result<String, String> {
        let p = Vec3::new(x, y, 0.0);
        let c = |x: f64, y: f64| Vec3::new(x, y, 0.0);
        let mut segs: Vec<[Vec3; 2]> = [c(-0.5, 0.5), c(-0.5, -0.5), c(0.5, -0.5)]
            .into_iter()
            .filter(|q| (q - p).norm() > 1e-12)
            .map(|q| [q, p])
            .collect();
        segs.push([c(0.5, 0.5), Vec3::zeros()]);
        let b = Barrier::from_segments(&segs).map_err(|e| e.to_string())?;
        let q = unit_square();
        let mut out = summary(&b, Some(&q))?;
        out["barrier"] = serde_json::from_str(&opaque_core::io::barrier_json(&b)).map_err(|e| e.to_string())?;
        Ok(out.to_string())
    }
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn convexify(barrier_json: &str, body_json: &str) -> Result<String, JsError> {
    js(ops::convexify(barrier_json, body_json))
}

#[wasm_bindgen]
pub fn check_weak(barrier_json: &str, body_json: &str) -> Result<String, JsError> {
    js(ops::check_weak(barrier_json, body_json))
}

#[wasm_bindgen]
pub fn steiner(x: f64, y: f64) -> Result<String, JsError> {
    js(ops::steiner(x, y))
}
