//! Seeded random inputs for property checks and demos.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Dim, Polytope, Vec3};
use crate::measures::{orientation_measure, projection_function, surface_area_measure, Barrier, Piece};

pub use rand::SeedableRng;
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform direction on `S^{n-1}`.
pub fn direction(rng: &mut SampleRng, dim: Dim) -> Vec3 {
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    match dim {
        Dim::Two => Vec3::new(phi.cos(), phi.sin(), 0.0),
        Dim::Three => {
            let z = rng.random_range(-1.0..1.0);
            let r = f64::sqrt(1.0 - z * z);
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        }
    }
}

/// Point uniform in the unit ball.
pub fn point_in_ball(rng: &mut SampleRng, dim: Dim) -> Vec3 {
    let r: f64 = rng.random::<f64>().powf(1.0 / dim.n() as f64);
    direction(rng, dim) * r
}

fn hull_of(dim: Dim, pts: &[Vec3]) -> Option<Polytope> {
    let p = Polytope::from_vertices(dim, pts).ok()?;
    (p.is_full_dimensional() && p.inradius().map(|r| r > 1e-3).unwrap_or(false)).then_some(p)
}

/// Convex hull of `m` random points, shifted so its vertex centroid is at the origin.
pub fn polytope(rng: &mut SampleRng, dim: Dim, m: usize) -> Polytope {
    loop {
        let pts: Vec<Vec3> = (0..m.max(dim.n() + 1)).map(|_| point_in_ball(rng, dim)).collect();
        if let Some(p) = hull_of(dim, &pts) {
            return p.translate(&-p.vertex_centroid());
        }
    }
}

/// Hull of `m` random points and their reflections.
pub fn symmetric_polytope(rng: &mut SampleRng, dim: Dim, m: usize) -> Polytope {
    loop {
        let pts: Vec<Vec3> = (0..m.max(dim.n()))
            .flat_map(|_| {
                let p = point_in_ball(rng, dim);
                [p, -p]
            })
            .collect();
        if let Some(p) = hull_of(dim, &pts) {
            return p;
        }
    }
}

/// A symmetric body `K` and a symmetric `K' ⊂ K`, obtained by pulling each
/// antipodal vertex pair of `K` inward by a random factor (sometimes all by one).
pub fn nested_symmetric_pair(rng: &mut SampleRng, dim: Dim, m: usize) -> (Polytope, Polytope) {
    let k = symmetric_polytope(rng, dim, m);
    loop {
        let inner = if rng.random_bool(0.25) {
            k.scale(rng.random_range(0.2..1.0))
        } else {
            let mut pts = Vec::new();
            let mut seen: Vec<Vec3> = Vec::new();
            for v in k.vertices() {
                if seen.iter().any(|s| (s + v).norm() < 1e-9) {
                    continue;
                }
                seen.push(*v);
                let t = rng.random_range(0.3..1.0);
                pts.push(v * t);
                pts.push(-v * t);
            }
            match hull_of(dim, &pts) {
                Some(p) => p,
                None => continue,
            }
        };
        return (inner, k);
    }
}

/// `count` random segments in the unit disc with lengths in `[0.05, 1]`.
pub fn segments(rng: &mut SampleRng, count: usize) -> Vec<[Vec3; 2]> {
    (0..count)
        .map(|_| {
            let c = point_in_ball(rng, Dim::Two);
            let d = direction(rng, Dim::Two) * rng.random_range(0.05..1.0) / 2.0;
            [c - d, c + d]
        })
        .collect()
}

/// A random planar barrier whose segments are not all parallel.
pub fn segment_barrier(rng: &mut SampleRng, count: usize) -> Barrier {
    loop {
        let b = Barrier::from_segments(&segments(rng, count.max(2))).expect("random segments are non-degenerate");
        if crate::convexify::convexify_2d(&b).is_ok() {
            return b;
        }
    }
}

/// A random weak barrier for the planar body `k`: random segments dilated
/// until their multiplicity projections dominate those of `k` (with slack
/// factor `1 + slack`), then randomly translated piece by piece.
pub fn weak_barrier_for(rng: &mut SampleRng, k: &Polytope, count: usize, slack: f64) -> Barrier {
    let b = segment_barrier(rng, count);
    let star = orientation_measure(&b);
    let sk = surface_area_measure(k).expect("body is full-dimensional");
    // Both projection functions are piecewise linear in (cos θ, sin θ) with
    // kinks at the normals' perpendiculars; the worst ratio sits at a kink.
    let mut kinks: Vec<Vec3> = Vec::new();
    for a in star.atoms().iter().chain(sk.atoms()) {
        kinks.push(Vec3::new(-a.u.y, a.u.x, 0.0));
    }
    let lambda = kinks.iter().map(|u| projection_function(&sk, u) / projection_function(&star, u)).fold(0.0, f64::max);
    let scaled = b.scaled(lambda * (1.0 + slack)).expect("positive dilation");
    let pieces = scaled
        .pieces()
        .iter()
        .map(|p| {
            let t = point_in_ball(rng, Dim::Two) * 0.5;
            match p {
                Piece::Segment([a, c]) => Piece::Segment([a + t, c + t]),
                Piece::Triangle(_) => unreachable!("planar barrier"),
            }
        })
        .collect();
    Barrier::new(Dim::Two, pieces).expect("translated pieces stay valid")
}
