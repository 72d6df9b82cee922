//! Discrete measures on the sphere and piecewise-linear barriers.

use crate::error::{Error, Result};
use crate::geometry::{kappa, omega, rot90, Dim, Direction, Polytope, Vec3, Zonotope};

/// Directions closer than this are merged into one atom.
pub const ATOM_MERGE_TOL: f64 = 1e-9;

/// A weighted direction.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub u: Vec3,
    pub w: f64,
}

/// A finite measure `Σ w_j δ_{u_j}` on `S^{n-1}` with positive weights.
///
/// Atoms within [`ATOM_MERGE_TOL`] are merged at construction. The measure is
/// flagged even when every atom has an antipodal partner of equal weight.
#[derive(Clone, Debug)]
pub struct DirectionalMeasure {
    dim: Dim,
    atoms: Vec<Atom>,
    even: bool,
}

impl DirectionalMeasure {
    /// Builds a measure from `(direction, weight)` pairs; directions are renormalized.
    pub fn new(dim: Dim, atoms: impl IntoIterator<Item = (Vec3, f64)>) -> Result<Self> {
        let mut merged: Vec<Atom> = Vec::new();
        for (u, w) in atoms {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidData(format!("atom weight must be positive and finite, got {w}")));
            }
            let u = Direction::from_vec(dim, u)?.vec();
            match merged.iter_mut().find(|a| (a.u - u).norm() <= ATOM_MERGE_TOL) {
                Some(a) => a.w += w,
                None => merged.push(Atom { u, w }),
            }
        }
        let even = detect_even(&merged);
        Ok(DirectionalMeasure { dim, atoms: merged, even })
    }

    /// Like [`DirectionalMeasure::new`] but rejects data that is not even.
    pub fn new_even(dim: Dim, atoms: impl IntoIterator<Item = (Vec3, f64)>) -> Result<Self> {
        let m = Self::new(dim, atoms)?;
        if !m.even {
            return Err(Error::InvalidData("measure flagged even has unpaired atoms".into()));
        }
        Ok(m)
    }

    /// The zero measure.
    pub fn empty(dim: Dim) -> Self {
        DirectionalMeasure { dim, atoms: Vec::new(), even: true }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    /// Total mass `μ(S^{n-1})`.
    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum()
    }

    /// The image under `u ↦ -u`.
    pub fn reflect(&self) -> Self {
        let atoms = self.atoms.iter().map(|a| Atom { u: -a.u, w: a.w }).collect();
        DirectionalMeasure { dim: self.dim, atoms, even: self.even }
    }

    /// `λμ` for `λ > 0`.
    pub fn scale(&self, lambda: f64) -> Self {
        assert!(lambda > 0.0, "measure scale must be positive");
        let atoms = self.atoms.iter().map(|a| Atom { u: a.u, w: a.w * lambda }).collect();
        DirectionalMeasure { dim: self.dim, atoms, even: self.even }
    }

    /// `μ + ν`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidData("measures live in different dimensions".into()));
        }
        Self::new(self.dim, self.atoms.iter().chain(&other.atoms).map(|a| (a.u, a.w)))
    }

    /// `½(μ + μ∘(-1))`.
    pub fn symmetrize(&self) -> Self {
        let half = self.atoms.iter().flat_map(|a| [(a.u, a.w / 2.0), (-a.u, a.w / 2.0)]);
        let mut m = Self::new(self.dim, half).expect("halves of valid atoms are valid");
        m.even = true;
        m
    }

    /// One representative per antipodal class with the combined weight `μ({u,-u})`.
    pub fn antipodal_pairs(&self) -> Vec<(Vec3, f64)> {
        let mut out: Vec<(Vec3, f64)> = Vec::new();
        for a in &self.atoms {
            match out.iter_mut().find(|(v, _)| (v + a.u).norm() <= ATOM_MERGE_TOL) {
                Some(p) => p.1 += a.w,
                None => out.push((a.u, a.w)),
            }
        }
        out
    }

    /// Total weight of atoms satisfying a predicate.
    pub fn mass_where(&self, pred: impl Fn(&Vec3) -> bool) -> f64 {
        self.atoms.iter().filter(|a| pred(&a.u)).map(|a| a.w).sum()
    }

    /// Atom lists agree (as sets, after merging) within the given tolerances.
    pub fn approx_eq(&self, other: &Self, dir_tol: f64, weight_tol: f64) -> bool {
        self.atoms.len() == other.atoms.len()
            && self
                .atoms
                .iter()
                .all(|a| other.atoms.iter().any(|b| (a.u - b.u).norm() <= dir_tol && (a.w - b.w).abs() <= weight_tol))
    }
}

fn detect_even(atoms: &[Atom]) -> bool {
    atoms
        .iter()
        .all(|a| atoms.iter().any(|b| (a.u + b.u).norm() <= ATOM_MERGE_TOL && (a.w - b.w).abs() <= 1e-9 * a.w.max(1.0)))
}

/// A flat piece of a barrier.
#[derive(Clone, Debug, PartialEq)]
pub enum Piece {
    Segment([Vec3; 2]),
    Triangle([Vec3; 3]),
}

impl Piece {
    /// Length or area.
    pub fn measure(&self) -> f64 {
        match self {
            Piece::Segment([a, b]) => (b - a).norm(),
            Piece::Triangle([a, b, c]) => (b - a).cross(&(c - a)).norm() / 2.0,
        }
    }

    /// A unit normal (the sign is irrelevant for barriers).
    pub fn normal(&self) -> Vec3 {
        match self {
            Piece::Segment([a, b]) => rot90(&(b - a)).normalize(),
            Piece::Triangle([a, b, c]) => (b - a).cross(&(c - a)).normalize(),
        }
    }

    pub fn points(&self) -> &[Vec3] {
        match self {
            Piece::Segment(p) => p,
            Piece::Triangle(p) => p,
        }
    }

    fn map(&self, f: impl Fn(&Vec3) -> Vec3) -> Piece {
        match self {
            Piece::Segment([a, b]) => Piece::Segment([f(a), f(b)]),
            Piece::Triangle([a, b, c]) => Piece::Triangle([f(a), f(b), f(c)]),
        }
    }
}

/// A finite union of segments (plane) or triangles (space).
#[derive(Clone, Debug)]
pub struct Barrier {
    dim: Dim,
    pieces: Vec<Piece>,
}

impl Barrier {
    /// Rejects pieces of the wrong kind and pieces of measure `≤ 1e-12`.
    pub fn new(dim: Dim, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Degenerate("barrier has no pieces".into()));
        }
        for (k, p) in pieces.iter().enumerate() {
            let kind_ok = matches!((dim, p), (Dim::Two, Piece::Segment(_)) | (Dim::Three, Piece::Triangle(_)));
            if !kind_ok {
                return Err(Error::InvalidData(format!("piece {k} has the wrong kind for dimension {}", dim.n())));
            }
            if p.points().iter().any(|x| !x.iter().all(|c| c.is_finite()) || (dim == Dim::Two && x.z != 0.0)) {
                return Err(Error::InvalidData(format!("piece {k} has invalid coordinates")));
            }
            if !(p.measure() > 1e-12) {
                return Err(Error::Degenerate(format!("piece {k} has measure {:.3e}", p.measure())));
            }
        }
        Ok(Barrier { dim, pieces })
    }

    pub fn from_segments(segments: &[[Vec3; 2]]) -> Result<Self> {
        Self::new(Dim::Two, segments.iter().map(|s| Piece::Segment(*s)).collect())
    }

    pub fn from_triangles(triangles: &[[Vec3; 3]]) -> Result<Self> {
        Self::new(Dim::Three, triangles.iter().map(|t| Piece::Triangle(*t)).collect())
    }

    /// The boundary `∂P`: edges in the plane, fan-triangulated facets in space.
    pub fn boundary_of(p: &Polytope) -> Result<Self> {
        if !p.is_full_dimensional() {
            return Err(Error::Degenerate("boundary of a lower-dimensional polytope".into()));
        }
        match p.dim() {
            Dim::Two => {
                let v = p.vertices();
                Self::from_segments(&(0..v.len()).map(|k| [v[k], v[(k + 1) % v.len()]]).collect::<Vec<_>>())
            }
            Dim::Three => {
                let mut tris = Vec::new();
                for poly in p.facet_polygons() {
                    for k in 1..poly.len() - 1 {
                        let t = [poly[0], poly[k], poly[k + 1]];
                        if Piece::Triangle(t).measure() > 1e-12 {
                            tris.push(t);
                        }
                    }
                }
                Self::from_triangles(&tris)
            }
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// `S(B)`: total length or area.
    pub fn surface_area(&self) -> f64 {
        self.pieces.iter().map(Piece::measure).sum()
    }

    /// Dilation about the origin.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.dim, self.pieces.iter().map(|p| p.map(|x| x * lambda)).collect())
    }

    pub fn translated(&self, t: &Vec3) -> Self {
        Barrier { dim: self.dim, pieces: self.pieces.iter().map(|p| p.map(|x| x + t)).collect() }
    }

    /// Translates a single piece; the orientation measure is unchanged.
    pub fn with_piece_translated(&self, k: usize, t: &Vec3) -> Self {
        let mut out = self.clone();
        out.pieces[k] = out.pieces[k].map(|x| x + t);
        out
    }

    pub fn union(&self, other: &Barrier) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidData("barriers live in different dimensions".into()));
        }
        Ok(Barrier { dim: self.dim, pieces: self.pieces.iter().chain(&other.pieces).cloned().collect() })
    }
}

/// `S*(B,·) = Σ_pieces |piece| (δ_v + δ_{-v})`, an even measure of mass `2S(B)`.
pub fn orientation_measure(b: &Barrier) -> DirectionalMeasure {
    let atoms = b.pieces().iter().flat_map(|p| {
        let (v, m) = (p.normal(), p.measure());
        [(v, m), (-v, m)]
    });
    let mut mu = DirectionalMeasure::new(b.dim(), atoms).expect("barrier pieces are valid");
    mu.even = true;
    mu
}

/// `S(P,·) = Σ F_i δ_{u_i}` over the facets.
pub fn surface_area_measure(p: &Polytope) -> Result<DirectionalMeasure> {
    if !p.is_full_dimensional() {
        return Err(Error::Degenerate("surface area measure of a lower-dimensional polytope".into()));
    }
    DirectionalMeasure::new(p.dim(), p.facets().iter().map(|f| (f.normal, f.area)))
}

/// `S(∇P,·) = ½(S(P,·) + S(-P,·))`.
pub fn blaschke_measure(p: &Polytope) -> Result<DirectionalMeasure> {
    Ok(surface_area_measure(p)?.symmetrize())
}

/// Outcome of checking the Minkowski existence conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct MinkowskiDataReport {
    /// `‖Σ w_j u_j‖ / Σ w_j`.
    pub centroid_defect: f64,
    /// Smallest singular value of the mass-normalized direction set.
    pub min_singular: f64,
    pub centroid_ok: bool,
    pub spans: bool,
}

impl MinkowskiDataReport {
    pub fn ok(&self) -> bool {
        self.centroid_ok && self.spans
    }

    /// The first violated condition, if any.
    pub fn failure(&self) -> Option<String> {
        if !self.spans {
            Some(format!("measure is concentrated on a great subsphere (σ_min = {:.3e})", self.min_singular))
        } else if !self.centroid_ok {
            Some(format!("centroid condition fails (‖Σ w u‖/Σ w = {:.3e})", self.centroid_defect))
        } else {
            None
        }
    }
}

/// Checks `Σ w_j u_j = o` (relative `1e-8`) and that the atoms span ℝⁿ.
pub fn validate_minkowski_data(mu: &DirectionalMeasure) -> MinkowskiDataReport {
    let mass = mu.mass();
    if !(mass > 0.0) {
        return MinkowskiDataReport { centroid_defect: 0.0, min_singular: 0.0, centroid_ok: true, spans: false };
    }
    let centroid_defect = mu.atoms().iter().map(|a| a.u * a.w).sum::<Vec3>().norm() / mass;
    let mut gram = nalgebra::Matrix3::<f64>::zeros();
    for a in mu.atoms() {
        gram += a.u * a.u.transpose() * (a.w / mass);
    }
    let n = mu.dim().n();
    let min_ev = if n == 2 {
        gram.fixed_view::<2, 2>(0, 0).into_owned().symmetric_eigenvalues().min()
    } else {
        gram.symmetric_eigenvalues().min()
    };
    let min_singular = min_ev.max(0.0).sqrt();
    MinkowskiDataReport {
        centroid_defect,
        min_singular,
        centroid_ok: centroid_defect <= 1e-8,
        spans: min_singular > 1e-8,
    }
}

/// `½ Σ_j w_j |⟨u,u_j⟩|`: the projection area of a body with this surface
/// area measure, or the multiplicity projection area of a barrier with this
/// orientation measure (halved kernel counts both sides).
pub fn projection_function(mu: &DirectionalMeasure, u: &Vec3) -> f64 {
    0.5 * mu.atoms().iter().map(|a| a.w * a.u.dot(u).abs()).sum::<f64>()
}

/// The projection body in generator form: one generator `μ({v,-v})·v` per
/// antipodal class, so that `h(Z,u)` equals [`projection_function`].
pub fn projection_zonotope(mu: &DirectionalMeasure) -> Result<Zonotope> {
    let gens: Vec<Vec3> = mu.antipodal_pairs().into_iter().map(|(v, w)| v * w).collect();
    Zonotope::new(mu.dim(), &gens)
}

/// The projection body as a polytope.
pub fn projection_body(mu: &DirectionalMeasure) -> Result<Polytope> {
    projection_zonotope(mu)?.to_polytope()
}

/// Both sides of `w(Πμ) = (2κ_{n-1}/ω_n)·μ(S^{n-1})`; the left side uses the
/// facet description of the projection body.
pub fn mean_width_projection_identity(mu: &DirectionalMeasure) -> Result<(f64, f64)> {
    if !validate_minkowski_data(mu).spans {
        return Err(Error::Degenerate("measure is concentrated on a great subsphere".into()));
    }
    let n = mu.dim().n();
    let lhs = projection_body(mu)?.mean_width();
    let rhs = 2.0 * kappa(n - 1) / omega(n) * mu.mass();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v2(x: f64, y: f64) -> Vec3 {
        Vec3::new(x, y, 0.0)
    }

    #[test]
    fn atoms_merge_and_evenness() {
        let m = DirectionalMeasure::new(Dim::Two, [(v2(1.0, 0.0), 1.0), (v2(2.0, 0.0), 0.5), (v2(-1.0, 0.0), 1.5)])
            .unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert!(m.is_even());
        assert!(DirectionalMeasure::new_even(Dim::Two, [(v2(1.0, 0.0), 1.0)]).is_err());
        assert!(DirectionalMeasure::new(Dim::Two, [(v2(1.0, 0.0), 0.0)]).is_err());
    }

    #[test]
    fn orientation_of_unit_segment() {
        let b = Barrier::from_segments(&[[v2(0.0, 0.0), v2(1.0, 0.0)]]).unwrap();
        let m = orientation_measure(&b);
        assert_eq!(m.atoms().len(), 2);
        assert_relative_eq!(m.mass(), 2.0);
        assert!(m.atoms().iter().all(|a| (a.u.y.abs() - 1.0).abs() < 1e-15 && a.w == 1.0));
    }

    #[test]
    fn square_boundary_measures() {
        let q = Polytope::unit_cube(Dim::Two);
        let star = orientation_measure(&Barrier::boundary_of(&q).unwrap());
        assert_eq!(star.atoms().len(), 4);
        assert_relative_eq!(star.mass(), 8.0, epsilon = 1e-14);
        assert!(star.approx_eq(&surface_area_measure(&q).unwrap().scale(2.0), 1e-12, 1e-12));
    }

    #[test]
    fn triangle_measures() {
        let t = Polytope::from_vertices(Dim::Two, &[v2(0.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0)]).unwrap();
        let s = surface_area_measure(&t).unwrap();
        let oracle = DirectionalMeasure::new(
            Dim::Two,
            [(v2(0.0, -1.0), 1.0), (v2(-1.0, 0.0), 1.0), (v2(1.0, 1.0), 2f64.sqrt())],
        )
        .unwrap();
        assert!(s.approx_eq(&oracle, 1e-12, 1e-12));
        let b = blaschke_measure(&t).unwrap();
        assert_eq!(b.atoms().len(), 6);
        assert!(b.is_even());
        assert_relative_eq!(b.mass(), s.mass(), epsilon = 1e-14);
    }

    #[test]
    fn minkowski_validation() {
        let cube = surface_area_measure(&Polytope::unit_cube(Dim::Three)).unwrap();
        assert!(validate_minkowski_data(&cube).ok());
        let line = DirectionalMeasure::new(Dim::Two, [(v2(1.0, 0.0), 1.0), (v2(-1.0, 0.0), 1.0)]).unwrap();
        let r = validate_minkowski_data(&line);
        assert!(!r.spans && r.failure().unwrap().contains("great subsphere"));
        let skew = DirectionalMeasure::new(Dim::Two, [(v2(1.0, 0.0), 1.0), (v2(0.0, 1.0), 1.0)]).unwrap();
        let r = validate_minkowski_data(&skew);
        assert!(r.spans && !r.centroid_ok);
        assert_relative_eq!(r.centroid_defect, 2f64.sqrt() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn projection_functions() {
        let cube = surface_area_measure(&Polytope::unit_cube(Dim::Three)).unwrap();
        assert_relative_eq!(projection_function(&cube, &Vec3::x()), 1.0, epsilon = 1e-14);
        let d = Vec3::new(1.0, 1.0, 1.0).normalize();
        assert_relative_eq!(projection_function(&cube, &d), 3f64.sqrt(), epsilon = 1e-14);
        let sq = surface_area_measure(&Polytope::unit_cube(Dim::Two)).unwrap();
        for k in 0..12 {
            let t = 0.3 + k as f64;
            assert_relative_eq!(
                projection_function(&sq, &v2(t.cos(), t.sin())),
                t.cos().abs() + t.sin().abs(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn projection_bodies_of_square_and_cube() {
        let sq = surface_area_measure(&Polytope::unit_cube(Dim::Two)).unwrap();
        let pi_sq = projection_body(&sq).unwrap();
        assert!(pi_sq.vertex_hausdorff(&Polytope::unit_cube(Dim::Two).scale(2.0)) < 1e-14);
        let cube = surface_area_measure(&Polytope::unit_cube(Dim::Three)).unwrap();
        let pi_cube = projection_body(&cube).unwrap();
        assert!(pi_cube.vertex_hausdorff(&Polytope::unit_cube(Dim::Three).scale(2.0)) < 1e-12);
        let (l, r) = mean_width_projection_identity(&cube).unwrap();
        assert_relative_eq!(l, 3.0, epsilon = 1e-12);
        assert_relative_eq!(r, 3.0, epsilon = 1e-12);
        let (l, r) = mean_width_projection_identity(&sq).unwrap();
        assert_relative_eq!(l, 8.0 / std::f64::consts::PI, epsilon = 1e-12);
        assert_relative_eq!(r, 8.0 / std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn segment_only_measure_is_degenerate() {
        let m = orientation_measure(&Barrier::from_segments(&[[v2(0.0, 0.0), v2(1.0, 0.0)]]).unwrap());
        assert!(matches!(mean_width_projection_identity(&m), Err(Error::Degenerate(_))));
    }

    #[test]
    fn tetrahedron_blaschke_has_eight_atoms() {
        let t = Polytope::from_vertices(Dim::Three, &[Vec3::zeros(), Vec3::x(), Vec3::y(), Vec3::z()]).unwrap();
        let b = blaschke_measure(&t).unwrap();
        assert_eq!(b.atoms().len(), 8);
        let big = b.atoms().iter().filter(|a| (a.w - 3f64.sqrt() / 4.0).abs() < 1e-12).count();
        assert_eq!(big, 2);
        assert!(b.atoms().iter().all(|a| (a.w - 0.25).abs() < 1e-12 || (a.w - 3f64.sqrt() / 4.0).abs() < 1e-12));
    }

    #[test]
    fn cube_boundary_barrier_has_area_six() {
        let c = Polytope::unit_cube(Dim::Three);
        let b = Barrier::boundary_of(&c).unwrap();
        assert_relative_eq!(b.surface_area(), 6.0, epsilon = 1e-12);
        assert!(orientation_measure(&b).approx_eq(&surface_area_measure(&c).unwrap().scale(2.0), 1e-9, 1e-9));
    }
}
