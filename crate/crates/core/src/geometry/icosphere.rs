use std::collections::HashMap;
use std::f64::consts::PI;

use super::{Dim, Polytope, Vec3};

/// Subdivided icosahedron with vertices on the unit sphere.
///
/// Level `k` has `20·4^k` triangles and `10·4^k + 2` vertices.
#[derive(Clone, Debug)]
pub struct Icosphere {
    level: u32,
    vertices: Vec<Vec3>,
    triangles: Vec<[usize; 3]>,
}

impl Icosphere {
    pub fn new(level: u32) -> Self {
        let t = (1.0 + 5f64.sqrt()) / 2.0;
        let mut vertices: Vec<Vec3> = [
            (-1.0, t, 0.0),
            (1.0, t, 0.0),
            (-1.0, -t, 0.0),
            (1.0, -t, 0.0),
            (0.0, -1.0, t),
            (0.0, 1.0, t),
            (0.0, -1.0, -t),
            (0.0, 1.0, -t),
            (t, 0.0, -1.0),
            (t, 0.0, 1.0),
            (-t, 0.0, -1.0),
            (-t, 0.0, 1.0),
        ]
        .iter()
        .map(|&(x, y, z)| Vec3::new(x, y, z).normalize())
        .collect();
        let mut triangles: Vec<[usize; 3]> = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        for _ in 0..level {
            let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
            let mut midpoint = |a: usize, b: usize, verts: &mut Vec<Vec3>| {
                let key = (a.min(b), a.max(b));
                *mid.entry(key).or_insert_with(|| {
                    verts.push(((verts[a] + verts[b]) / 2.0).normalize());
                    verts.len() - 1
                })
            };
            let mut next = Vec::with_capacity(4 * triangles.len());
            for [a, b, c] in triangles {
                let ab = midpoint(a, b, &mut vertices);
                let bc = midpoint(b, c, &mut vertices);
                let ca = midpoint(c, a, &mut vertices);
                next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
            }
            triangles = next;
        }
        Icosphere { level, vertices, triangles }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    /// Counter-clockwise seen from outside.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Chord distance within which every point of the sphere has a mesh vertex.
    ///
    /// Each spherical triangle lies in the cap through its corners; for the
    /// acute triangles of this mesh the worst point is the cap center.
    pub fn covering_radius(&self) -> f64 {
        self.triangles
            .iter()
            .map(|&[a, b, c]| {
                let (pa, pb, pc) = (self.vertices[a], self.vertices[b], self.vertices[c]);
                let center = (pb - pa).cross(&(pc - pa)).normalize();
                (center - pa).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Midpoint rule on the sphere: normalized triangle centroids weighted by
    /// the exact spherical triangle areas (weights sum to 4π).
    pub fn quadrature(&self) -> Vec<(Vec3, f64)> {
        self.triangles
            .iter()
            .map(|&[a, b, c]| {
                let (pa, pb, pc) = (self.vertices[a], self.vertices[b], self.vertices[c]);
                let num = pa.dot(&pb.cross(&pc)).abs();
                let den = 1.0 + pa.dot(&pb) + pb.dot(&pc) + pc.dot(&pa);
                let area = 2.0 * num.atan2(den);
                ((pa + pb + pc).normalize(), area)
            })
            .collect()
    }

    /// The inscribed polytope with these vertices.
    pub fn polytope(&self) -> Polytope {
        Polytope::from_vertices(Dim::Three, &self.vertices).expect("icosphere is full-dimensional")
    }

    /// Total spherical area covered by [`Icosphere::quadrature`], i.e. 4π.
    pub fn total_weight() -> f64 {
        4.0 * PI
    }
}
