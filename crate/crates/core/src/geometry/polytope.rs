use std::f64::consts::PI;

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use super::hull::{affine_dimension, convex_hull_2d, convex_hull_3d};
use super::{orthonormal_complement, Dim, Direction, Vec3, TOL};
use crate::error::{Error, Result};

/// A facet: outer unit normal `u`, support offset `h = h(P,u)` and `(n-1)`-volume.
///
/// In the plane a facet is an edge and `area` is its length.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub normal: Vec3,
    pub offset: f64,
    pub area: f64,
}

/// An edge of a 3D polytope between two facets (indices into `facets`).
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub facets: (usize, usize),
    pub length: f64,
}

/// A convex polytope in ℝ² or ℝ³, kept in both vertex and facet form.
///
/// Lower-dimensional polytopes (segments, flat polygons, points) are
/// representable; for them only [`Polytope::support`] and
/// [`Polytope::mean_width`] are meaningful.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: Dim,
    affine_dim: usize,
    vertices: Vec<Vec3>,
    facets: Vec<Facet>,
    edges: Vec<Edge>,
    facet_polygons: Vec<Vec<Vec3>>,
}

/// A facet polygon produced by clipping its supporting plane with all other
/// half-spaces. `labels[k]` names the half-space that bounds the edge from
/// `verts[k]` to `verts[k+1]`.
#[derive(Clone, Debug)]
pub(crate) struct ClippedFacet {
    pub verts: Vec<Vec3>,
    pub labels: Vec<usize>,
    pub area: f64,
}

/// Clips every supporting plane of `{x : ⟨x,u_i⟩ ≤ h_i}` against the others.
///
/// Facets that are empty (redundant half-spaces) come back with no vertices
/// and zero area. Fails if the intersection is unbounded.
pub(crate) fn clip_facets(planes: &[(Vec3, f64)]) -> Result<Vec<ClippedFacet>> {
    let hmax = planes.iter().map(|(_, h)| h.abs()).fold(0.0_f64, f64::max);
    let mut radius = 8.0 * hmax + 1.0;
    for _ in 0..4 {
        if let Some(out) = clip_facets_within(planes, radius) {
            return Ok(out);
        }
        radius *= 1e3;
    }
    Err(Error::Degenerate("half-space intersection is unbounded".into()))
}

fn clip_facets_within(planes: &[(Vec3, f64)], radius: f64) -> Option<Vec<ClippedFacet>> {
    const BOX: usize = usize::MAX;
    let mut out = Vec::with_capacity(planes.len());
    for (i, (ui, hi)) in planes.iter().enumerate() {
        let (e1, e2) = orthonormal_complement(ui);
        let mut poly: Vec<(f64, f64)> =
            vec![(-radius, -radius), (radius, -radius), (radius, radius), (-radius, radius)];
        let mut labels: Vec<usize> = vec![BOX; 4];
        for (j, (uj, hj)) in planes.iter().enumerate() {
            if j == i || poly.is_empty() {
                continue;
            }
            let a = e1.dot(uj);
            let b = e2.dot(uj);
            let g = hj - hi * ui.dot(uj);
            if a * a + b * b < 1e-24 {
                if g < -1e-12 * (1.0 + hmax_of(*hi, *hj)) {
                    poly.clear();
                }
                continue;
            }
            clip_polygon(&mut poly, &mut labels, a, b, g, j);
        }
        if poly.len() < 3 {
            out.push(ClippedFacet { verts: Vec::new(), labels: Vec::new(), area: 0.0 });
            continue;
        }
        if labels.contains(&BOX) {
            return None;
        }
        let center = ui * *hi;
        let m = poly.len();
        let mut verts = Vec::with_capacity(m);
        for k in 0..m {
            let plain = center + e1 * poly[k].0 + e2 * poly[k].1;
            let lin = labels[(k + m - 1) % m];
            let lout = labels[k];
            verts.push(refine_vertex(planes, i, lin, lout).unwrap_or(plain));
        }
        let mut twice = Vec3::zeros();
        for k in 0..m {
            twice += verts[k].cross(&verts[(k + 1) % m]);
        }
        let area = 0.5 * twice.dot(ui);
        out.push(ClippedFacet { verts, labels, area: area.max(0.0) });
    }
    Some(out)
}

fn hmax_of(a: f64, b: f64) -> f64 {
    a.abs().max(b.abs())
}

/// Intersection point of three planes, if well conditioned.
fn refine_vertex(planes: &[(Vec3, f64)], i: usize, j: usize, k: usize) -> Option<Vec3> {
    if j == k || j == i || k == i {
        return None;
    }
    let m = nalgebra::Matrix3::from_rows(&[planes[i].0.transpose(), planes[j].0.transpose(), planes[k].0.transpose()]);
    if m.determinant().abs() < 1e-8 {
        return None;
    }
    m.lu().solve(&Vec3::new(planes[i].1, planes[j].1, planes[k].1))
}

/// Sutherland–Hodgman step against `a x + b y ≤ g`, tracking edge labels.
fn clip_polygon(poly: &mut Vec<(f64, f64)>, labels: &mut Vec<usize>, a: f64, b: f64, g: f64, label: usize) {
    let m = poly.len();
    let s: Vec<f64> = poly.iter().map(|(x, y)| a * x + b * y - g).collect();
    if s.iter().all(|&v| v <= 0.0) {
        return;
    }
    let mut np = Vec::with_capacity(m + 1);
    let mut nl = Vec::with_capacity(m + 1);
    for k in 0..m {
        let kn = (k + 1) % m;
        let (p, q) = (poly[k], poly[kn]);
        let (sp, sq) = (s[k], s[kn]);
        let cut = |t: f64| (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1));
        match (sp <= 0.0, sq <= 0.0) {
            (true, true) => {
                np.push(p);
                nl.push(labels[k]);
            }
            (true, false) => {
                np.push(p);
                nl.push(labels[k]);
                np.push(cut(sp / (sp - sq)));
                nl.push(label);
            }
            (false, true) => {
                np.push(cut(sp / (sp - sq)));
                nl.push(labels[k]);
            }
            (false, false) => {}
        }
    }
    // Drop zero-length edges; the surviving label of the previous edge carries on.
    let scale = np.iter().map(|(x, y)| x.abs().max(y.abs())).fold(1e-300, f64::max);
    let mut k = 0;
    while np.len() > 1 && k < np.len() {
        let kn = (k + 1) % np.len();
        let d = ((np[k].0 - np[kn].0).powi(2) + (np[k].1 - np[kn].1).powi(2)).sqrt();
        if d <= 1e-15 * scale {
            np.remove(k);
            nl.remove(k);
        } else {
            k += 1;
        }
    }
    *poly = np;
    *labels = nl;
}

fn dedup_points(points: impl IntoIterator<Item = Vec3>, tol: f64) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for p in points {
        if !out.iter().any(|q| (q - p).norm() <= tol) {
            out.push(p);
        }
    }
    out
}

impl Polytope {
    /// Convex hull of a point set; facets are recomputed.
    pub fn from_vertices(dim: Dim, points: &[Vec3]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Degenerate("empty point set".into()));
        }
        if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidData("non-finite vertex".into()));
        }
        match dim {
            Dim::Two => Ok(Self::polygon_from_hull(convex_hull_2d(points))),
            Dim::Three => Self::from_vertices_3d(points),
        }
    }

    fn polygon_from_hull(hull: Vec<Vec3>) -> Self {
        let m = hull.len();
        let affine_dim = match m {
            0 | 1 => 0,
            2 => 1,
            _ => 2,
        };
        let mut facets = Vec::new();
        let mut facet_polygons = Vec::new();
        if m >= 3 {
            for k in 0..m {
                let (p, q) = (hull[k], hull[(k + 1) % m]);
                let d = q - p;
                let len = d.norm();
                let normal = Vec3::new(d.y, -d.x, 0.0) / len;
                facets.push(Facet { normal, offset: normal.dot(&p), area: len });
                facet_polygons.push(vec![p, q]);
            }
        }
        Polytope { dim: Dim::Two, affine_dim, vertices: hull, facets, edges: Vec::new(), facet_polygons }
    }

    fn from_vertices_3d(points: &[Vec3]) -> Result<Self> {
        let k = affine_dimension(points);
        if k == 3 {
            let hull = convex_hull_3d(points)?;
            let mut p = Self::from_halfspaces(Dim::Three, &hull.planes)?;
            p.snap_vertices(points);
            return Ok(p);
        }
        let vertices = match k {
            0 => vec![points[0]],
            1 => {
                let dir = points.iter().map(|p| p - points[0]).max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
                let dir = dir.normalize();
                let lo = points.iter().min_by(|a, b| a.dot(&dir).total_cmp(&b.dot(&dir))).unwrap();
                let hi = points.iter().max_by(|a, b| a.dot(&dir).total_cmp(&b.dot(&dir))).unwrap();
                vec![*lo, *hi]
            }
            _ => {
                // Planar hull in an in-plane frame.
                let o = points[0];
                let far = points.iter().max_by(|a, b| (*a - o).norm().total_cmp(&(*b - o).norm())).unwrap();
                let e1 = (far - o).normalize();
                let normal = points
                    .iter()
                    .map(|p| e1.cross(&(p - o)))
                    .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                    .unwrap()
                    .normalize();
                let e2 = normal.cross(&e1);
                let flat: Vec<Vec3> =
                    points.iter().map(|p| Vec3::new((p - o).dot(&e1), (p - o).dot(&e2), 0.0)).collect();
                convex_hull_2d(&flat).into_iter().map(|q| o + e1 * q.x + e2 * q.y).collect()
            }
        };
        Ok(Polytope {
            dim: Dim::Three,
            affine_dim: k,
            vertices,
            facets: Vec::new(),
            edges: Vec::new(),
            facet_polygons: Vec::new(),
        })
    }

    /// Replaces vertices recomputed from planes by the input points they came from.
    fn snap_vertices(&mut self, points: &[Vec3]) {
        let tol = 1e-9 * self.max_vertex_norm().max(1.0);
        let snap = |v: &mut Vec3| {
            if let Some(p) = points.iter().min_by(|a, b| (*a - *v).norm().total_cmp(&(*b - *v).norm())) {
                if (p - *v).norm() <= tol {
                    *v = *p;
                }
            }
        };
        self.vertices.iter_mut().for_each(snap);
        self.facet_polygons.iter_mut().flatten().for_each(snap);
    }

    /// The polytope `{x : ⟨x,u_i⟩ ≤ h_i}`; must be bounded with interior points.
    ///
    /// Normals need not be unit length; redundant half-spaces are dropped.
    pub fn from_halfspaces(dim: Dim, planes: &[(Vec3, f64)]) -> Result<Self> {
        let mut uniq: Vec<(Vec3, f64)> = Vec::new();
        for (n, h) in planes {
            let mut n = *n;
            if dim == Dim::Two {
                n.z = 0.0;
            }
            let len = n.norm();
            if !(len > 1e-300) || !h.is_finite() {
                return Err(Error::InvalidData("half-space with zero or non-finite data".into()));
            }
            let (n, h) = (n / len, h / len);
            match uniq.iter_mut().find(|(m, _)| (m - n).norm() < 1e-12) {
                Some(existing) => existing.1 = existing.1.min(h),
                None => uniq.push((n, h)),
            }
        }
        match dim {
            Dim::Two => Self::polygon_from_halfplanes(&uniq),
            Dim::Three => Self::polytope_from_halfspaces(&uniq),
        }
    }

    fn polygon_from_halfplanes(planes: &[(Vec3, f64)]) -> Result<Self> {
        let hmax = planes.iter().map(|(_, h)| h.abs()).fold(0.0_f64, f64::max);
        let r = 1e3 * (hmax + 1.0);
        let mut poly = vec![(-r, -r), (r, -r), (r, r), (-r, r)];
        let mut labels = vec![usize::MAX; 4];
        for (j, (n, h)) in planes.iter().enumerate() {
            clip_polygon(&mut poly, &mut labels, n.x, n.y, *h, j);
        }
        if poly.len() < 3 || labels.contains(&usize::MAX) {
            return Err(Error::Degenerate("half-plane intersection is empty, flat or unbounded".into()));
        }
        let pts: Vec<Vec3> = poly.iter().map(|(x, y)| Vec3::new(*x, *y, 0.0)).collect();
        let p = Self::polygon_from_hull(convex_hull_2d(&pts));
        if p.affine_dim < 2 {
            return Err(Error::Degenerate("half-plane intersection has no interior".into()));
        }
        Ok(p)
    }

    fn polytope_from_halfspaces(planes: &[(Vec3, f64)]) -> Result<Self> {
        let first = clip_facets(planes)?;
        let total: f64 = first.iter().map(|f| f.area).sum();
        if !(total > 0.0) {
            return Err(Error::Degenerate("half-space intersection has no interior".into()));
        }
        let active: Vec<(Vec3, f64)> =
            planes.iter().zip(&first).filter(|(_, f)| f.area > 1e-13 * total).map(|(p, _)| *p).collect();
        let clipped = clip_facets(&active)?;
        let mut facets = Vec::new();
        let mut polys = Vec::new();
        let mut index = vec![usize::MAX; active.len()];
        for (i, (c, (n, h))) in clipped.iter().zip(&active).enumerate() {
            if c.area > 1e-13 * total {
                index[i] = facets.len();
                facets.push(Facet { normal: *n, offset: *h, area: c.area });
                polys.push(c.verts.clone());
            }
        }
        let mut edges = Vec::new();
        for (i, c) in clipped.iter().enumerate() {
            if index[i] == usize::MAX {
                continue;
            }
            let m = c.verts.len();
            for k in 0..m {
                let j = c.labels[k];
                if j > i && j < index.len() && index[j] != usize::MAX {
                    let length = (c.verts[(k + 1) % m] - c.verts[k]).norm();
                    if length > 0.0 {
                        edges.push(Edge { facets: (index[i], index[j]), length });
                    }
                }
            }
        }
        let vertices = dedup_points(polys.iter().flatten().copied(), TOL);
        let vol: f64 = facets.iter().map(|f| f.offset * f.area).sum::<f64>() / 3.0;
        if !(vol > 0.0) {
            return Err(Error::Degenerate("half-space intersection has no interior".into()));
        }
        Ok(Polytope { dim: Dim::Three, affine_dim: 3, vertices, facets, edges, facet_polygons: polys })
    }

    /// Axis-parallel box `[-a₁/2, a₁/2] × …` centered at the origin.
    pub fn centered_box(dim: Dim, sides: &[f64]) -> Result<Self> {
        if sides.len() != dim.n() || sides.iter().any(|s| !(*s > 0.0)) {
            return Err(Error::InvalidData("box needs one positive side length per axis".into()));
        }
        let mut pts = Vec::new();
        for mask in 0..(1usize << dim.n()) {
            let mut p = Vec3::zeros();
            for k in 0..dim.n() {
                p[k] = if mask >> k & 1 == 1 { sides[k] / 2.0 } else { -sides[k] / 2.0 };
            }
            pts.push(p);
        }
        Self::from_vertices(dim, &pts)
    }

    /// The centered unit square or cube.
    pub fn unit_cube(dim: Dim) -> Self {
        Self::centered_box(dim, &vec![1.0; dim.n()]).expect("unit cube is valid")
    }

    /// Regular `m`-gon inscribed in the circle of radius `r` about the origin.
    pub fn regular_polygon(m: usize, r: f64, phase: f64) -> Result<Self> {
        if m < 3 || !(r > 0.0) {
            return Err(Error::InvalidData("regular polygon needs m ≥ 3 and r > 0".into()));
        }
        let pts: Vec<Vec3> = (0..m)
            .map(|k| {
                let t = phase + 2.0 * PI * k as f64 / m as f64;
                Vec3::new(r * t.cos(), r * t.sin(), 0.0)
            })
            .collect();
        Self::from_vertices(Dim::Two, &pts)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim.n()
    }

    /// Vertices; counter-clockwise for full-dimensional polygons.
    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Edges with their adjacent facets (3D only).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Vertex cycles of the facets, oriented counter-clockwise seen from outside.
    pub fn facet_polygons(&self) -> &[Vec<Vec3>] {
        &self.facet_polygons
    }

    fn require_full(&self, what: &str) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::Degenerate(format!("{what} needs a full-dimensional polytope")))
        }
    }

    /// Support function `h(P,u) = max_x ⟨u,x⟩`.
    pub fn support(&self, u: &Direction) -> f64 {
        self.support_vec(&u.vec())
    }

    pub fn support_vec(&self, u: &Vec3) -> f64 {
        self.vertices.iter().map(|x| u.dot(x)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Width `h(P,u) + h(P,-u)`.
    pub fn width(&self, u: &Vec3) -> f64 {
        self.support_vec(u) + self.support_vec(&-u)
    }

    /// Area (2D) or volume (3D); zero for lower-dimensional polytopes.
    pub fn volume(&self) -> f64 {
        if !self.is_full_dimensional() {
            return 0.0;
        }
        match self.dim {
            Dim::Two => {
                let v = &self.vertices;
                let m = v.len();
                (0..m).map(|k| v[k].x * v[(k + 1) % m].y - v[(k + 1) % m].x * v[k].y).sum::<f64>() / 2.0
            }
            Dim::Three => self.facets.iter().map(|f| f.offset * f.area).sum::<f64>() / 3.0,
        }
    }

    /// Boundary measure `S(∂P) = Σ F_i` (perimeter in the plane).
    pub fn surface_area(&self) -> f64 {
        self.facets.iter().map(|f| f.area).sum()
    }

    /// Boundary length of a planar polytope; `2L` for a segment of length `L`.
    pub fn perimeter(&self) -> f64 {
        match (self.dim, self.affine_dim) {
            (Dim::Two, 2) => self.surface_area(),
            (_, 1) => 2.0 * (self.vertices[1] - self.vertices[0]).norm(),
            (Dim::Three, 2) => {
                let v = &self.vertices;
                (0..v.len()).map(|k| (v[(k + 1) % v.len()] - v[k]).norm()).sum()
            }
            _ => 0.0,
        }
    }

    /// Mean width `w(P)`.
    ///
    /// In the plane this is `perimeter/π`. In space it uses the edge formula
    /// `w = (1/4π) Σ_e ℓ_e θ_e` with `θ_e` the exterior dihedral angle; flat
    /// polygons and segments get `perimeter/4` and `length/2`.
    pub fn mean_width(&self) -> f64 {
        match (self.dim, self.affine_dim) {
            (Dim::Two, _) => self.perimeter() / PI,
            (Dim::Three, 3) => {
                self.edges
                    .iter()
                    .map(|e| {
                        let (a, b) = e.facets;
                        let c = self.facets[a].normal.dot(&self.facets[b].normal).clamp(-1.0, 1.0);
                        e.length * c.acos()
                    })
                    .sum::<f64>()
                    / (4.0 * PI)
            }
            (Dim::Three, _) => self.perimeter() / 4.0,
        }
    }

    /// `‖Σ F_i u_i‖`, zero for a closed polytope.
    pub fn facet_closedness(&self) -> f64 {
        self.facets.iter().map(|f| f.normal * f.area).sum::<Vec3>().norm()
    }

    pub fn contains_point(&self, x: &Vec3) -> bool {
        self.facets.iter().all(|f| f.normal.dot(x) <= f.offset + TOL)
    }

    /// Largest facet-inequality violation by a vertex of `other`, with the facet normal.
    ///
    /// Non-positive means `other ⊂ self` up to the vertex test.
    pub fn max_violation(&self, other: &Polytope) -> (f64, Vec3) {
        let mut best = (f64::NEG_INFINITY, Vec3::zeros());
        for f in &self.facets {
            let v = other.support_vec(&f.normal) - f.offset;
            if v > best.0 {
                best = (v, f.normal);
            }
        }
        best
    }

    /// Vertex containment `other ⊂ self` at tolerance [`TOL`].
    pub fn contains(&self, other: &Polytope) -> bool {
        self.is_full_dimensional() && self.max_violation(other).0 <= TOL
    }

    pub fn translate(&self, t: &Vec3) -> Self {
        let mut t = *t;
        if self.dim == Dim::Two {
            t.z = 0.0;
        }
        let mut out = self.clone();
        out.vertices.iter_mut().for_each(|v| *v += t);
        out.facet_polygons.iter_mut().flatten().for_each(|v| *v += t);
        out.facets.iter_mut().for_each(|f| f.offset += f.normal.dot(&t));
        out
    }

    /// Dilation `λP` for `λ > 0`.
    pub fn scale(&self, lambda: f64) -> Self {
        assert!(lambda > 0.0, "dilation factor must be positive");
        let k = (self.dim.n() - 1) as i32;
        let mut out = self.clone();
        out.vertices.iter_mut().for_each(|v| *v *= lambda);
        out.facet_polygons.iter_mut().flatten().for_each(|v| *v *= lambda);
        out.facets.iter_mut().for_each(|f| {
            f.offset *= lambda;
            f.area *= lambda.powi(k);
        });
        out.edges.iter_mut().for_each(|e| e.length *= lambda);
        out
    }

    /// The reflection `-P`.
    pub fn reflect(&self) -> Self {
        let mut out = self.clone();
        out.vertices.iter_mut().for_each(|v| *v = -*v);
        out.facet_polygons.iter_mut().flatten().for_each(|v| *v = -*v);
        out.facets.iter_mut().for_each(|f| f.normal = -f.normal);
        out
    }

    /// Counter-clockwise rotation by π/2 of a planar polytope.
    pub fn rotate90(&self) -> Self {
        assert_eq!(self.dim, Dim::Two, "rotate90 is planar");
        let pts: Vec<Vec3> = self.vertices.iter().map(super::rot90).collect();
        Self::from_vertices(Dim::Two, &pts).expect("rotation of a valid polygon")
    }

    /// Average of the vertices.
    pub fn vertex_centroid(&self) -> Vec3 {
        self.vertices.iter().sum::<Vec3>() / self.vertices.len() as f64
    }

    pub fn is_origin_symmetric(&self, tol: f64) -> bool {
        self.vertices.iter().all(|v| self.vertices.iter().any(|w| (v + w).norm() <= tol))
    }

    /// Symmetric Hausdorff distance between the vertex sets.
    pub fn vertex_hausdorff(&self, other: &Polytope) -> f64 {
        let one_way = |a: &[Vec3], b: &[Vec3]| {
            a.iter().map(|p| b.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min)).fold(0.0_f64, f64::max)
        };
        one_way(&self.vertices, &other.vertices).max(one_way(&other.vertices, &self.vertices))
    }

    /// Inradius and the center of a largest inscribed ball, by linear programming:
    /// maximize `r` subject to `⟨x,u_i⟩ + r ≤ h_i`.
    pub fn inball(&self) -> Result<(f64, Vec3)> {
        self.require_full("inradius")?;
        let n = self.dim.n();
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let x: Vec<_> = (0..n).map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
        let r = lp.add_var(1.0, (0.0, f64::INFINITY));
        for f in &self.facets {
            let mut row: Vec<_> = (0..n).map(|k| (x[k], f.normal[k])).collect();
            row.push((r, 1.0));
            lp.add_constraint(row.as_slice(), ComparisonOp::Le, f.offset);
        }
        let sol = lp
            .solve()
            .map_err(|e| Error::Degenerate(format!("inradius program failed: {e}")))?
            .into_solution()
            .map_err(|_| Error::Lp("inradius program interrupted".into()))?;
        let mut c = Vec3::zeros();
        for k in 0..n {
            c[k] = sol.var_value(x[k]);
        }
        Ok((sol.var_value(r), c))
    }

    pub fn inradius(&self) -> Result<f64> {
        Ok(self.inball()?.0)
    }

    /// Largest vertex distance from the inball center.
    pub fn circumradius(&self) -> Result<f64> {
        let (_, c) = self.inball()?;
        Ok(self.vertices.iter().map(|v| (v - c).norm()).fold(0.0, f64::max))
    }

    /// Largest vertex norm, i.e. the smallest `R` with `P ⊂ R·B^n`.
    pub fn max_vertex_norm(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Minkowski sum of two planar polytopes (points and segments allowed) by
/// merging their edge sequences in angular order.
pub fn minkowski_sum_2d(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.dim != Dim::Two || q.dim != Dim::Two {
        return Err(Error::InvalidData("minkowski_sum_2d needs planar polytopes".into()));
    }
    let lowest =
        |v: &[Vec3]| (0..v.len()).min_by(|&a, &b| v[a].y.total_cmp(&v[b].y).then(v[a].x.total_cmp(&v[b].x))).unwrap();
    let edges = |v: &[Vec3]| -> Vec<Vec3> {
        match v.len() {
            1 => Vec::new(),
            m => (0..m).map(|k| v[(k + 1) % m] - v[k]).collect(),
        }
    };
    let angle = |e: &Vec3| {
        let a = e.y.atan2(e.x);
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    };
    let start = p.vertices[lowest(&p.vertices)] + q.vertices[lowest(&q.vertices)];
    let mut all: Vec<Vec3> = edges(&p.vertices).into_iter().chain(edges(&q.vertices)).collect();
    all.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    let mut pts = vec![start];
    let mut cur = start;
    for e in &all {
        cur += e;
        pts.push(cur);
    }
    Polytope::from_vertices(Dim::Two, &pts)
}

/// A Euclidean ball.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub dim: Dim,
    pub center: Vec3,
    pub radius: f64,
}

impl Ball {
    pub fn new(dim: Dim, center: Vec3, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidData("ball radius must be positive".into()));
        }
        Ok(Ball { dim, center, radius })
    }

    pub fn support(&self, u: &Direction) -> f64 {
        u.dot(&self.center) + self.radius
    }
}
