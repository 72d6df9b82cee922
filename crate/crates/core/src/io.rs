//! JSON formats for polytopes, balls, measures and barriers.
//!
//! ```json
//! {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}
//! {"center": [0, 0, 0], "radius": 1}
//! {"dim": 2, "atoms": [{"u": [1, 0], "w": 1}, {"u": [-1, 0], "w": 1}], "even": true}
//! {"dim": 2, "segments": [[[0, 0], [1, 0]]]}
//! {"dim": 3, "triangles": [[[0, 0, 0], [1, 0, 0], [0, 1, 0]]]}
//! ```
//!
//! Polytope facets are always recomputed from the vertices on load; the
//! derived fields written on output are informational.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{point_from_slice, point_to_vec, Ball, Dim, Polytope, Vec3};
use crate::measures::{Barrier, DirectionalMeasure, Piece};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facets: Vec<FacetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface_area: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perimeter: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_width: Option<f64>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        let d = p.dim();
        PolytopeJson {
            dim: d.n(),
            vertices: p.vertices().iter().map(|v| point_to_vec(d, v)).collect(),
            facets: p
                .facets()
                .iter()
                .map(|f| FacetJson { normal: point_to_vec(d, &f.normal), offset: f.offset, area: f.area })
                .collect(),
            volume: Some(p.volume()),
            surface_area: Some(p.surface_area()),
            perimeter: (d == Dim::Two).then(|| p.perimeter()),
            mean_width: Some(p.mean_width()),
        }
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let dim = Dim::from_n(self.dim).map_err(|e| Error::Parse(e.to_string()))?;
        let pts = self.vertices.iter().map(|v| point_from_slice(dim, v)).collect::<Result<Vec<Vec3>>>()?;
        Polytope::from_vertices(dim, &pts)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallJson {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl BallJson {
    pub fn to_ball(&self) -> Result<Ball> {
        let dim = Dim::from_n(self.center.len()).map_err(|e| Error::Parse(e.to_string()))?;
        Ball::new(dim, point_from_slice(dim, &self.center)?, self.radius)
    }

    pub fn from_ball(b: &Ball) -> Self {
        BallJson { center: point_to_vec(b.dim, &b.center), radius: b.radius }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomJson {
    pub u: Vec<f64>,
    pub w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub dim: usize,
    pub atoms: Vec<AtomJson>,
    #[serde(default)]
    pub even: bool,
}

impl MeasureJson {
    pub fn from_measure(m: &DirectionalMeasure) -> Self {
        let d = m.dim();
        MeasureJson {
            dim: d.n(),
            atoms: m.atoms().iter().map(|a| AtomJson { u: point_to_vec(d, &a.u), w: a.w }).collect(),
            even: m.is_even(),
        }
    }

    /// A measure declared even must be even.
    pub fn to_measure(&self) -> Result<DirectionalMeasure> {
        let dim = Dim::from_n(self.dim).map_err(|e| Error::Parse(e.to_string()))?;
        let atoms =
            self.atoms.iter().map(|a| Ok((point_from_slice(dim, &a.u)?, a.w))).collect::<Result<Vec<(Vec3, f64)>>>()?;
        if self.even {
            DirectionalMeasure::new_even(dim, atoms)
        } else {
            DirectionalMeasure::new(dim, atoms)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarrierJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangles: Option<Vec<Vec<Vec<f64>>>>,
}

impl BarrierJson {
    pub fn from_barrier(b: &Barrier) -> Self {
        let d = b.dim();
        let pieces: Vec<Vec<Vec<f64>>> =
            b.pieces().iter().map(|p| p.points().iter().map(|x| point_to_vec(d, x)).collect()).collect();
        match d {
            Dim::Two => BarrierJson { dim: 2, segments: Some(pieces), triangles: None },
            Dim::Three => BarrierJson { dim: 3, segments: None, triangles: Some(pieces) },
        }
    }

    pub fn to_barrier(&self) -> Result<Barrier> {
        let dim = Dim::from_n(self.dim).map_err(|e| Error::Parse(e.to_string()))?;
        let (list, corners) = match (dim, &self.segments, &self.triangles) {
            (Dim::Two, Some(s), None) => (s, 2),
            (Dim::Three, None, Some(t)) => (t, 3),
            _ => return Err(Error::Parse("2D barriers need \"segments\", 3D barriers \"triangles\"".into())),
        };
        let mut pieces = Vec::with_capacity(list.len());
        for (k, piece) in list.iter().enumerate() {
            if piece.len() != corners {
                return Err(Error::Parse(format!("piece {k} needs {corners} points")));
            }
            let pts = piece.iter().map(|c| point_from_slice(dim, c)).collect::<Result<Vec<Vec3>>>()?;
            pieces.push(match dim {
                Dim::Two => Piece::Segment([pts[0], pts[1]]),
                Dim::Three => Piece::Triangle([pts[0], pts[1], pts[2]]),
            });
        }
        Barrier::new(dim, pieces)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_polytope(s: &str) -> Result<Polytope> {
    serde_json::from_str::<PolytopeJson>(s)?.to_polytope()
}

pub fn parse_ball(s: &str) -> Result<Ball> {
    serde_json::from_str::<BallJson>(s)?.to_ball()
}

pub fn parse_measure(s: &str) -> Result<DirectionalMeasure> {
    serde_json::from_str::<MeasureJson>(s)?.to_measure()
}

pub fn parse_barrier(s: &str) -> Result<Barrier> {
    serde_json::from_str::<BarrierJson>(s)?.to_barrier()
}

pub fn read_polytope(path: &Path) -> Result<Polytope> {
    parse_polytope(&read(path)?)
}

pub fn read_barrier(path: &Path) -> Result<Barrier> {
    parse_barrier(&read(path)?)
}

pub fn read_measure(path: &Path) -> Result<DirectionalMeasure> {
    parse_measure(&read(path)?)
}

/// Pretty JSON; floats use the shortest representation that parses back exactly.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

pub fn polytope_json(p: &Polytope) -> String {
    to_json(&PolytopeJson::from_polytope(p))
}

pub fn barrier_json(b: &Barrier) -> String {
    to_json(&BarrierJson::from_barrier(b))
}

pub fn measure_json(m: &DirectionalMeasure) -> String {
    to_json(&MeasureJson::from_measure(m))
}
