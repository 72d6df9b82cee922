//! Convex hulls: monotone chain in the plane, incremental hull in space.

use std::collections::BTreeSet;

use super::Vec3;
use crate::error::{Error, Result};

fn cross2(o: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Counter-clockwise hull of planar points (z ignored), collinear points removed.
///
/// Returns 0, 1 or 2 points for degenerate input (empty set, point, segment).
pub fn convex_hull_2d(points: &[Vec3]) -> Vec<Vec3> {
    let mut pts: Vec<Vec3> = points.iter().map(|p| Vec3::new(p.x, p.y, 0.0)).collect();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let scale = pts.iter().map(|p| p.x.abs().max(p.y.abs())).fold(0.0_f64, f64::max).max(1e-300);
    let same = |a: &Vec3, b: &Vec3| (a - b).norm() <= 1e-14 * scale;
    pts.dedup_by(|a, b| same(a, b));
    if pts.len() <= 2 {
        return pts;
    }
    // A turn counts as strictly left only if it is significant relative to the edge lengths.
    let left = |o: &Vec3, a: &Vec3, b: &Vec3| cross2(o, a, b) > 1e-12 * (a - o).norm() * (b - o).norm();
    let mut lower: Vec<Vec3> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !left(&lower[lower.len() - 2], &lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Vec3> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !left(&upper[upper.len() - 2], &upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && same(&lower[0], &lower[1]) {
        lower.pop();
    }
    lower
}

/// Supporting planes and extreme points of a full-dimensional point set in ℝ³.
#[derive(Clone, Debug)]
pub struct Hull3 {
    /// Outer unit normals and offsets; every input point satisfies `⟨n,p⟩ ≤ d + 1e-9`.
    pub planes: Vec<(Vec3, f64)>,
    /// Indices of input points that are hull vertices.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Face {
    v: [usize; 3],
    n: Vec3,
    d: f64,
    alive: bool,
}

fn make_face(pts: &[Vec3], v: [usize; 3]) -> Face {
    let (a, b, c) = (pts[v[0]], pts[v[1]], pts[v[2]]);
    let n = (b - a).cross(&(c - a));
    let len = n.norm();
    let n = if len > 0.0 { n / len } else { n };
    Face { v, n, d: n.dot(&a), alive: true }
}

/// Affine dimension (0..=3) of a point set at relative tolerance `1e-10`.
pub fn affine_dimension(points: &[Vec3]) -> usize {
    match initial_simplex(points) {
        Ok(_) => 3,
        Err(k) => k,
    }
}

/// Four affinely independent points, or the affine dimension reached.
fn initial_simplex(pts: &[Vec3]) -> std::result::Result<[usize; 4], usize> {
    if pts.is_empty() {
        return Err(0);
    }
    let scale = bbox_diag(pts).max(1e-300);
    let eps = 1e-10 * scale;
    let i0 = (0..pts.len()).min_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x)).unwrap();
    let argmax = |f: &dyn Fn(&Vec3) -> f64| (0..pts.len()).max_by(|&a, &b| f(&pts[a]).total_cmp(&f(&pts[b]))).unwrap();
    let i1 = argmax(&|p| (p - pts[i0]).norm());
    if (pts[i1] - pts[i0]).norm() <= eps {
        return Err(0);
    }
    let dir = (pts[i1] - pts[i0]).normalize();
    let line_dist = |p: &Vec3| {
        let w = p - pts[i0];
        (w - dir * w.dot(&dir)).norm()
    };
    let i2 = argmax(&line_dist);
    if line_dist(&pts[i2]) <= eps {
        return Err(1);
    }
    let n = (pts[i1] - pts[i0]).cross(&(pts[i2] - pts[i0])).normalize();
    let plane_dist = |p: &Vec3| (p - pts[i0]).dot(&n).abs();
    let i3 = argmax(&plane_dist);
    if plane_dist(&pts[i3]) <= eps {
        return Err(2);
    }
    Ok([i0, i1, i2, i3])
}

fn bbox_diag(pts: &[Vec3]) -> f64 {
    let mut lo = Vec3::repeat(f64::INFINITY);
    let mut hi = Vec3::repeat(f64::NEG_INFINITY);
    for p in pts {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (hi - lo).norm()
}

/// Incremental convex hull in ℝ³.
///
/// Faces are triangles; coplanar triangles yield duplicate planes, which are
/// merged. Sliver triangles whose computed plane cuts off an input point by
/// more than `1e-9` are discarded; the remaining planes still describe the
/// hull up to that tolerance.
pub fn convex_hull_3d(pts: &[Vec3]) -> Result<Hull3> {
    let simplex =
        initial_simplex(pts).map_err(|k| Error::Degenerate(format!("point set has affine dimension {k} < 3")))?;
    let scale = bbox_diag(pts);
    let eps = 1e-11 * scale;

    let centroid = simplex.iter().map(|&i| pts[i]).sum::<Vec3>() / 4.0;
    let mut faces: Vec<Face> = Vec::new();
    for skip in 0..4 {
        let tri: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| simplex[k]).collect();
        let mut f = make_face(pts, [tri[0], tri[1], tri[2]]);
        if f.n.dot(&centroid) - f.d > 0.0 {
            f = make_face(pts, [tri[0], tri[2], tri[1]]);
        }
        faces.push(f);
    }

    let mut order: Vec<usize> = (0..pts.len()).filter(|i| !simplex.contains(i)).collect();
    order.sort_by(|&a, &b| (pts[b] - centroid).norm().total_cmp(&(pts[a] - centroid).norm()));

    let mut visible_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &pi in &order {
        let p = pts[pi];
        let visible: Vec<usize> =
            faces.iter().enumerate().filter(|(_, f)| f.alive && f.n.dot(&p) - f.d > eps).map(|(k, _)| k).collect();
        if visible.is_empty() {
            continue;
        }
        visible_edges.clear();
        for &k in &visible {
            let v = faces[k].v;
            for e in 0..3 {
                visible_edges.insert((v[e], v[(e + 1) % 3]));
            }
            faces[k].alive = false;
        }
        let horizon: Vec<(usize, usize)> =
            visible_edges.iter().filter(|(a, b)| !visible_edges.contains(&(*b, *a))).copied().collect();
        for (a, b) in horizon {
            faces.push(make_face(pts, [a, b, pi]));
        }
        if faces.len() > 4 * pts.len() + 64 {
            faces.retain(|f| f.alive);
        }
    }

    let live: Vec<&Face> = faces.iter().filter(|f| f.alive).collect();
    let mut vertex_set: Vec<usize> = live.iter().flat_map(|f| f.v).collect();
    vertex_set.sort_unstable();
    vertex_set.dedup();

    let mut planes: Vec<(Vec3, f64)> = Vec::new();
    for f in live {
        if f.n.norm() < 0.5 {
            continue;
        }
        let violation = vertex_set.iter().map(|&i| f.n.dot(&pts[i]) - f.d).fold(f64::MIN, f64::max);
        if violation > 1e-9 {
            continue;
        }
        // Offset at the farthest vertex keeps the plane supporting.
        let d = f.d + violation.max(0.0);
        if let Some(existing) = planes.iter_mut().find(|(n, e)| (n - f.n).norm() < 1e-9 && (e - d).abs() < 1e-9) {
            existing.1 = existing.1.max(d);
        } else {
            planes.push((f.n, d));
        }
    }
    Ok(Hull3 { planes, vertices: vertex_set })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_hull_drops_interior_and_collinear() {
        let pts = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.5, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.3, 0.4, 0.0),
        ];
        let h = convex_hull_2d(&pts);
        assert_eq!(h.len(), 4);
        let area: f64 = (0..4).map(|i| cross2(&Vec3::zeros(), &h[i], &h[(i + 1) % 4])).sum::<f64>() / 2.0;
        assert!((area - 1.0).abs() < 1e-15, "counter-clockwise with area 1");
    }

    #[test]
    fn degenerate_planar_hulls() {
        let seg = convex_hull_2d(&[Vec3::zeros(), Vec3::new(1.0, 1.0, 0.0), Vec3::new(0.5, 0.5, 0.0)]);
        assert_eq!(seg.len(), 2);
        assert_eq!(convex_hull_2d(&[Vec3::zeros(), Vec3::zeros()]).len(), 1);
    }

    #[test]
    fn cube_hull_has_six_planes() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Vec3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64));
        }
        pts.push(Vec3::new(0.5, 0.5, 0.5));
        pts.push(Vec3::new(0.5, 0.5, 1.0));
        let h = convex_hull_3d(&pts).unwrap();
        assert_eq!(h.planes.len(), 6);
        assert!(h.vertices.iter().all(|&i| i < 8 || i == 9));
    }

    #[test]
    fn affine_dimensions() {
        assert_eq!(affine_dimension(&[]), 0);
        assert_eq!(affine_dimension(&[Vec3::x(), Vec3::x()]), 0);
        assert_eq!(affine_dimension(&[Vec3::zeros(), Vec3::x(), Vec3::x() * 2.0]), 1);
        assert_eq!(affine_dimension(&[Vec3::zeros(), Vec3::x(), Vec3::y()]), 2);
        assert!(convex_hull_3d(&[Vec3::zeros(), Vec3::x(), Vec3::y(), Vec3::x() + Vec3::y()]).is_err());
    }
}
