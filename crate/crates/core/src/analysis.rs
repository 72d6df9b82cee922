//! Weak and strong barrier tests, Jones deficits and the cylinder example.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convexify::{blaschke_body, convexify_2d};
use crate::error::{Error, Result};
use crate::geometry::{orthonormal_complement, point_to_vec, rot90, Dim, Icosphere, Polytope, Vec3, TOL};
use crate::measures::{orientation_measure, projection_body, surface_area_measure, Barrier, DirectionalMeasure, Piece};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Undecided,
}

/// A three-valued decision with its evidence.
///
/// `True` carries the certified lower bound `margin ≥ 0` of the tested
/// inequality; `False` carries a direction with strict violation `margin < 0`;
/// `Undecided` reports the finest net resolution reached.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedBool {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<f64>>,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub net_level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resolution: Option<f64>,
}

impl CertifiedBool {
    pub fn is_true(&self) -> bool {
        self.verdict == Verdict::True
    }

    fn exact(ok: bool, witness: Option<Vec<f64>>, margin: f64) -> Self {
        CertifiedBool {
            verdict: if ok { Verdict::True } else { Verdict::False },
            witness: if ok { None } else { witness },
            margin,
            net_level: None,
            resolution: None,
        }
    }
}

/// Icosphere levels tried by the spatial weak-barrier test.
#[derive(Clone, Copy, Debug)]
pub struct NetOptions {
    pub start_level: u32,
    pub max_level: u32,
}

impl Default for NetOptions {
    fn default() -> Self {
        NetOptions { start_level: 4, max_level: 7 }
    }
}

/// `Σ_pieces |⟨u,v⟩|·|piece|`: the projection of `B` onto `u^⊥` counted with multiplicity.
pub fn multiplicity_projection_area(b: &Barrier, u: &Vec3) -> f64 {
    b.pieces().iter().map(|p| p.normal().dot(u).abs() * p.measure()).sum()
}

/// `Σ_k |piece_k|` minus half the boundary measure of `K`.
pub fn jones_deficit(b: &Barrier, k: &Polytope) -> f64 {
    b.surface_area() - 0.5 * k.surface_area()
}

/// Generators whose half absolute sum is the projection function of `μ`.
fn generators(mu: &DirectionalMeasure) -> Vec<Vec3> {
    mu.antipodal_pairs().into_iter().map(|(v, w)| v * w).collect()
}

fn half_abs_sum(gens: &[Vec3], u: &Vec3) -> f64 {
    0.5 * gens.iter().map(|g| g.dot(u).abs()).sum::<f64>()
}

fn check_pair(b: &Barrier, k: &Polytope) -> Result<()> {
    if b.dim() != k.dim() {
        return Err(Error::InvalidData("barrier and body live in different dimensions".into()));
    }
    if !k.is_full_dimensional() {
        return Err(Error::Degenerate("the body must be full-dimensional".into()));
    }
    Ok(())
}

/// Decides whether `B` is a weak barrier for `K`, i.e. whether the
/// multiplicity projection of `B` dominates the projection of `K` in every
/// direction (equivalently `ΠK ⊂ Π(co B)`).
///
/// Exact in the plane. In space a certified icosphere-net test is used.
pub fn is_weak_barrier(b: &Barrier, k: &Polytope) -> Result<CertifiedBool> {
    is_weak_barrier_with(b, k, &NetOptions::default())
}

pub fn is_weak_barrier_with(b: &Barrier, k: &Polytope, net: &NetOptions) -> Result<CertifiedBool> {
    check_pair(b, k)?;
    let star = orientation_measure(b);
    let sk = surface_area_measure(k)?;
    match k.dim() {
        Dim::Two => weak_barrier_planar(b, &star, &sk),
        Dim::Three => Ok(weak_barrier_net(&generators(&star), &generators(&sk), net)),
    }
}

fn weak_barrier_planar(b: &Barrier, star: &DirectionalMeasure, sk: &DirectionalMeasure) -> Result<CertifiedBool> {
    let pi_k = projection_body(sk)?;
    match projection_body(star) {
        Ok(pi_b) => {
            let (viol, normal) = pi_b.max_violation(&pi_k);
            Ok(CertifiedBool::exact(viol <= TOL, Some(point_to_vec(Dim::Two, &normal)), -viol))
        }
        Err(_) => {
            // All pieces parallel: lines along them see no barrier at all.
            let d = match &b.pieces()[0] {
                Piece::Segment([p, q]) => (q - p).normalize(),
                Piece::Triangle(_) => unreachable!("planar barriers hold segments"),
            };
            let deficit = half_abs_sum(&generators(star), &d) - half_abs_sum(&generators(sk), &d);
            Ok(CertifiedBool::exact(false, Some(point_to_vec(Dim::Two, &d)), deficit))
        }
    }
}

/// Net test for `g(u) = ½Σ|⟨u,a⟩| − ½Σ|⟨u,b⟩| ≥ 0` on `S²`.
///
/// `g` is Lipschitz with constant `L = ½(Σ‖a‖ + Σ‖b‖)`. If every net value is
/// at least `L·δ` (δ the covering radius) the inequality holds everywhere.
fn weak_barrier_net(barrier_gens: &[Vec3], body_gens: &[Vec3], net: &NetOptions) -> CertifiedBool {
    let lip =
        0.5 * (barrier_gens.iter().map(|g| g.norm()).sum::<f64>() + body_gens.iter().map(|g| g.norm()).sum::<f64>());
    let mut last = None;
    for level in net.start_level..=net.max_level.max(net.start_level) {
        let sphere = Icosphere::new(level);
        let delta = sphere.covering_radius();
        let (mut min_g, mut arg) = (f64::INFINITY, Vec3::z());
        for u in sphere.vertices() {
            let g = half_abs_sum(barrier_gens, u) - half_abs_sum(body_gens, u);
            if g < min_g {
                min_g = g;
                arg = *u;
            }
        }
        if min_g < -TOL {
            return CertifiedBool {
                verdict: Verdict::False,
                witness: Some(point_to_vec(Dim::Three, &arg)),
                margin: min_g,
                net_level: Some(level),
                resolution: Some(delta),
            };
        }
        let certified = min_g - lip * delta;
        if certified >= -TOL {
            return CertifiedBool {
                verdict: Verdict::True,
                witness: None,
                margin: certified.max(0.0),
                net_level: Some(level),
                resolution: Some(delta),
            };
        }
        last = Some((level, delta, certified));
    }
    let (level, delta, certified) = last.expect("at least one level");
    CertifiedBool {
        verdict: Verdict::Undecided,
        witness: None,
        margin: certified,
        net_level: Some(level),
        resolution: Some(delta),
    }
}

/// Planar test through the Blaschke body: `B` is a weak barrier for `K` iff
/// `∇K ⊂ co(B)`. The witness is the violated facet normal of `co(B)`.
pub fn is_weak_barrier_2d_prop1(b: &Barrier, k: &Polytope) -> Result<CertifiedBool> {
    check_pair(b, k)?;
    if k.dim() != Dim::Two {
        return Err(Error::InvalidData("the Blaschke-body test is planar".into()));
    }
    let nabla = blaschke_body(k)?;
    match convexify_2d(b) {
        Ok(co) => {
            let (viol, normal) = co.max_violation(&nabla);
            Ok(CertifiedBool::exact(viol <= TOL, Some(point_to_vec(Dim::Two, &normal)), -viol))
        }
        Err(_) => {
            let d = match &b.pieces()[0] {
                Piece::Segment([p, q]) => (q - p).normalize(),
                Piece::Triangle(_) => unreachable!("planar barriers hold segments"),
            };
            let n = rot90(&d);
            let co_h = 0.5 * b.pieces().iter().map(|p| p.normal().dot(&n).abs() * p.measure()).sum::<f64>();
            Ok(CertifiedBool::exact(false, Some(point_to_vec(Dim::Two, &n)), co_h - nabla.support_vec(&n)))
        }
    }
}

/// Monte-Carlo estimate of how often random lines through `K` miss `B`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineSampleReport {
    pub lines: u64,
    pub misses: u64,
    pub miss_fraction: f64,
    /// Wilson score interval at 95%.
    pub ci95: [f64; 2],
    /// Average number of pieces met per line.
    pub mean_multiplicity: f64,
    pub seed: u64,
}

/// A random line `x + ℝu` with `x ∈ u^⊥`.
#[derive(Clone, Copy, Debug)]
pub struct LineSample {
    pub u: Vec3,
    pub x: Vec3,
}

fn sample_direction(dim: Dim, rng: &mut ChaCha8Rng) -> Vec3 {
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    match dim {
        Dim::Two => Vec3::new(phi.cos(), phi.sin(), 0.0),
        Dim::Three => {
            let z = 2.0 * rng.random::<f64>() - 1.0;
            let r = (1.0 - z * z).max(0.0).sqrt();
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        }
    }
}

/// Whether the line `x + ℝu` meets the polytope (interval test over facets).
fn line_meets(k: &Polytope, x: &Vec3, u: &Vec3) -> bool {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for f in k.facets() {
        let a = f.normal.dot(u);
        let r = f.offset - f.normal.dot(x);
        if a.abs() < 1e-15 {
            if r < 0.0 {
                return false;
            }
        } else if a > 0.0 {
            hi = hi.min(r / a);
        } else {
            lo = lo.max(r / a);
        }
    }
    lo <= hi
}

/// Draws line `index` of stream `seed`: `u` uniform on the sphere, `x`
/// uniform in the projection `K|u^⊥` (rejection from its bounding box).
pub fn sample_line(k: &Polytope, seed: u64, index: u64) -> LineSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let u = sample_direction(k.dim(), &mut rng);
    match k.dim() {
        Dim::Two => {
            let e = rot90(&u);
            let (lo, hi) = (-k.support_vec(&-e), k.support_vec(&e));
            LineSample { u, x: e * (lo + (hi - lo) * rng.random::<f64>()) }
        }
        Dim::Three => {
            let (e1, e2) = orthonormal_complement(&u);
            let (a0, a1) = (-k.support_vec(&-e1), k.support_vec(&e1));
            let (b0, b1) = (-k.support_vec(&-e2), k.support_vec(&e2));
            loop {
                let x = e1 * (a0 + (a1 - a0) * rng.random::<f64>()) + e2 * (b0 + (b1 - b0) * rng.random::<f64>());
                if line_meets(k, &x, &u) {
                    return LineSample { u, x };
                }
            }
        }
    }
}

/// Number of pieces of `B` met by the line.
pub fn crossings(b: &Barrier, line: &LineSample) -> usize {
    let u = line.u;
    match b.dim() {
        Dim::Two => {
            let e = rot90(&u);
            let s = e.dot(&line.x);
            b.pieces()
                .iter()
                .filter(|p| {
                    let q = p.points();
                    (e.dot(&q[0]) - s) * (e.dot(&q[1]) - s) <= 0.0
                })
                .count()
        }
        Dim::Three => {
            let (e1, e2) = orthonormal_complement(&u);
            let (px, py) = (e1.dot(&line.x), e2.dot(&line.x));
            b.pieces()
                .iter()
                .filter(|p| {
                    let q: Vec<(f64, f64)> = p.points().iter().map(|v| (e1.dot(v) - px, e2.dot(v) - py)).collect();
                    point_in_triangle(&q)
                })
                .count()
        }
    }
}

/// Whether the origin lies in the (possibly flat) triangle, boundary included.
fn point_in_triangle(q: &[(f64, f64)]) -> bool {
    let cross = |a: (f64, f64), b: (f64, f64)| a.0 * b.1 - a.1 * b.0;
    let d: Vec<f64> = (0..3).map(|i| cross(q[i], q[(i + 1) % 3])).collect();
    let scale = q.iter().map(|p| p.0.abs() + p.1.abs()).fold(0.0, f64::max).powi(2);
    let eps = 1e-12 * scale;
    let area = cross((q[1].0 - q[0].0, q[1].1 - q[0].1), (q[2].0 - q[0].0, q[2].1 - q[0].1));
    if area.abs() <= eps {
        return false;
    }
    d.iter().all(|&x| x >= -eps) || d.iter().all(|&x| x <= eps)
}

fn wilson(misses: u64, n: u64) -> [f64; 2] {
    let z = 1.959963984540054;
    let (n, p) = (n as f64, misses as f64 / n as f64);
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    [(center - half).max(0.0), (center + half).min(1.0)]
}

/// Fraction of random lines meeting `K` that miss `B`, with a 95% interval.
///
/// Line `i` uses its own random stream, so results do not depend on any
/// evaluation order.
pub fn strong_barrier_mc(b: &Barrier, k: &Polytope, lines: u64, seed: u64) -> Result<LineSampleReport> {
    check_pair(b, k)?;
    if lines == 0 {
        return Err(Error::InvalidData("need at least one line".into()));
    }
    let (mut misses, mut total) = (0u64, 0u64);
    for i in 0..lines {
        let c = crossings(b, &sample_line(k, seed, i)) as u64;
        total += c;
        if c == 0 {
            misses += 1;
        }
    }
    Ok(LineSampleReport {
        lines,
        misses,
        miss_fraction: misses as f64 / lines as f64,
        ci95: wilson(misses, lines),
        mean_multiplicity: total as f64 / lines as f64,
        seed,
    })
}

/// Monte-Carlo estimate of [`multiplicity_projection_area`] for one direction:
/// mean crossing count of lines parallel to `u` through a window of `u^⊥`
/// covering the projection of `B`, times the window area. Returns the estimate
/// and its standard error.
pub fn mc_multiplicity_projection(b: &Barrier, u: &Vec3, lines: u64, seed: u64) -> (f64, f64) {
    let u = u.normalize();
    let basis: Vec<Vec3> = match b.dim() {
        Dim::Two => vec![rot90(&u)],
        Dim::Three => {
            let (e1, e2) = orthonormal_complement(&u);
            vec![e1, e2]
        }
    };
    let pts: Vec<&Vec3> = b.pieces().iter().flat_map(|p| p.points()).collect();
    let ranges: Vec<(f64, f64)> = basis
        .iter()
        .map(|e| {
            let vals = pts.iter().map(|p| e.dot(p));
            let lo = vals.clone().fold(f64::INFINITY, f64::min);
            let hi = vals.fold(f64::NEG_INFINITY, f64::max);
            (lo - 1e-3, hi + 1e-3)
        })
        .collect();
    let window: f64 = ranges.iter().map(|(lo, hi)| hi - lo).product();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for i in 0..lines {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let x: Vec3 = basis.iter().zip(&ranges).map(|(e, (lo, hi))| e * (lo + (hi - lo) * rng.random::<f64>())).sum();
        let c = crossings(b, &LineSample { u, x }) as f64;
        sum += c;
        sum_sq += c * c;
    }
    let n = lines as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    (mean * window, (var / n).sqrt() * window)
}

/// Evidence for the spatial cylinder example: a barrier whose convexification
/// is (a polytopal) unit ball, which is a weak barrier for a long thin
/// cylinder even though the cylinder's Blaschke body is not inside `co(B)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CylinderReport {
    pub s: f64,
    pub icosphere_level: u32,
    /// `ΠK ⊂ Π(co B)`.
    pub weak_barrier: CertifiedBool,
    /// Largest projection area of `K` over the net.
    pub max_projection_area: f64,
    /// The bound `1 + 1/s²`.
    pub projection_bound: f64,
    /// Smallest projection area of `co(B)` over the net.
    pub min_projection_area_co_b: f64,
    /// Whether `∇K = K` lies inside `co(B)` (vertex test).
    pub nabla_inside: bool,
    /// Largest excess of a vertex of `K` over a facet of `co(B)`.
    pub containment_violation: f64,
    pub witness_normal: Vec<f64>,
}

/// The prism over a regular 64-gon of radius `1/(2s)` and length `s`, centered.
pub fn thin_cylinder(s: f64) -> Result<Polytope> {
    let r = 1.0 / (2.0 * s);
    let m = 64;
    let pts: Vec<Vec3> = (0..m)
        .flat_map(|k| {
            let t = std::f64::consts::TAU * k as f64 / m as f64;
            [Vec3::new(r * t.cos(), r * t.sin(), -s / 2.0), Vec3::new(r * t.cos(), r * t.sin(), s / 2.0)]
        })
        .collect();
    Polytope::from_vertices(Dim::Three, &pts)
}

/// Builds the cylinder example for length `s > 2`.
///
/// `B` is `2^{-1/2}` times the boundary of an icosphere polytope `P`, so that
/// `S*(B,·) = S(P,·)` and `co(B) = P`.
pub fn cylinder_counterexample(s: f64, icosphere_level: u32) -> Result<CylinderReport> {
    if !(s > 2.0) || !s.is_finite() {
        return Err(Error::InvalidData(format!("cylinder length must exceed 2, got {s}")));
    }
    let k = thin_cylinder(s)?;
    let co_b = Icosphere::new(icosphere_level).polytope();
    let b = Barrier::boundary_of(&co_b)?.scaled(std::f64::consts::FRAC_1_SQRT_2)?;
    let weak = is_weak_barrier_with(&b, &k, &NetOptions { start_level: 4, max_level: 6 })?;

    let k_gens = generators(&surface_area_measure(&k)?);
    let b_gens = generators(&orientation_measure(&b));
    let net = Icosphere::new(weak.net_level.unwrap_or(4));
    let max_proj = net.vertices().iter().map(|u| half_abs_sum(&k_gens, u)).fold(0.0, f64::max);
    let min_proj_b = net.vertices().iter().map(|u| half_abs_sum(&b_gens, u)).fold(f64::INFINITY, f64::min);

    // K is origin-symmetric, so its Blaschke body is K itself.
    let (viol, normal) = co_b.max_violation(&k);
    Ok(CylinderReport {
        s,
        icosphere_level,
        weak_barrier: weak,
        max_projection_area: max_proj,
        projection_bound: 1.0 + 1.0 / (s * s),
        min_projection_area_co_b: min_proj_b,
        nabla_inside: viol <= TOL,
        containment_violation: viol,
        witness_normal: point_to_vec(Dim::Three, &normal),
    })
}
