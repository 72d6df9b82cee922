use super::{kappa, Dim, Polytope, Vec3};
use crate::error::{Error, Result};

/// The origin-symmetric zonotope `½ Σ_j [-g_j, g_j]`, kept in generator form.
///
/// Support and mean width are evaluated directly from the generators, so large
/// generator sets (such as projection bodies of fine polytopes) never need a
/// facet description.
#[derive(Clone, Debug)]
pub struct Zonotope {
    dim: Dim,
    generators: Vec<Vec3>,
}

impl Zonotope {
    /// Drops generators with `‖g‖ < 1e-12`; fails unless the rest span ℝⁿ.
    pub fn new(dim: Dim, generators: &[Vec3]) -> Result<Self> {
        let generators: Vec<Vec3> = generators
            .iter()
            .map(|g| if dim == Dim::Two { Vec3::new(g.x, g.y, 0.0) } else { *g })
            .filter(|g| g.norm() >= 1e-12)
            .collect();
        if span_rank(&generators) < dim.n() {
            return Err(Error::Degenerate(format!("generators do not span ℝ^{}", dim.n())));
        }
        Ok(Zonotope { dim, generators })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn generators(&self) -> &[Vec3] {
        &self.generators
    }

    /// `h(Z,u) = ½ Σ_j |⟨u,g_j⟩|`.
    pub fn support_vec(&self, u: &Vec3) -> f64 {
        0.5 * self.generators.iter().map(|g| g.dot(u).abs()).sum::<f64>()
    }

    /// Mean width, additive over the generator segments.
    pub fn mean_width(&self) -> f64 {
        let n = self.dim.n();
        let per_length = 2.0 * kappa(n - 1) / (n as f64 * kappa(n));
        per_length * self.generators.iter().map(|g| g.norm()).sum::<f64>()
    }

    /// Vertex/facet description.
    pub fn to_polytope(&self) -> Result<Polytope> {
        match self.dim {
            Dim::Two => Ok(self.zonogon()),
            Dim::Three => self.zonohedron(),
        }
    }

    fn zonogon(&self) -> Polytope {
        // Orient every generator into the upper half-plane; the lowest vertex is
        // then -½Σg and the boundary walks the generators by angle, then back.
        let mut up: Vec<Vec3> =
            self.generators.iter().map(|g| if g.y < 0.0 || (g.y == 0.0 && g.x < 0.0) { -g } else { *g }).collect();
        up.sort_by(|a, b| a.y.atan2(a.x).total_cmp(&b.y.atan2(b.x)));
        let mut cur = -0.5 * up.iter().sum::<Vec3>();
        let mut pts = Vec::with_capacity(2 * up.len());
        for g in up.iter().chain(up.iter()) {
            pts.push(cur);
            cur += if pts.len() <= up.len() { *g } else { -g };
        }
        Polytope::from_vertices(Dim::Two, &pts).expect("zonogon of spanning generators")
    }

    fn zonohedron(&self) -> Result<Polytope> {
        // Every facet normal is orthogonal to a pair of generators.
        let g = &self.generators;
        let mut normals: Vec<Vec3> = Vec::new();
        for i in 0..g.len() {
            for j in (i + 1)..g.len() {
                let c = g[i].cross(&g[j]);
                if c.norm() <= 1e-12 * g[i].norm() * g[j].norm() {
                    continue;
                }
                let c = c.normalize();
                if !normals.iter().any(|m| (m - c).norm() < 1e-9 || (m + c).norm() < 1e-9) {
                    normals.push(c);
                }
            }
        }
        let mut planes = Vec::with_capacity(2 * normals.len());
        for n in normals {
            let h = self.support_vec(&n);
            planes.push((n, h));
            planes.push((-n, h));
        }
        Polytope::from_halfspaces(Dim::Three, &planes)
    }
}

/// Numerical rank of a vector family at relative tolerance `1e-12`.
fn span_rank(v: &[Vec3]) -> usize {
    if v.is_empty() {
        return 0;
    }
    let mut gram = nalgebra::Matrix3::<f64>::zeros();
    for g in v {
        gram += g * g.transpose();
    }
    let ev = gram.symmetric_eigenvalues();
    let top = ev.iter().cloned().fold(0.0_f64, f64::max);
    ev.iter().filter(|&&e| e > 1e-24 * top.max(1e-300) && e > 0.0).count()
}

/// The polytope `½ Σ_j [-g_j, g_j]` with `h(Z,u) = ½ Σ_j |⟨u,g_j⟩|`.
pub fn zonotope(generators: &[Vec3], dim: Dim) -> Result<Polytope> {
    Zonotope::new(dim, generators)?.to_polytope()
}
