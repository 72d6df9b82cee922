//! Convexification of barriers and the symmetric Minkowski problem.
//!
//! In the plane `co(B)` is the zonogon `½ Σ [-d_k, d_k]` over the segment
//! vectors. In space it is the origin-symmetric polytope whose facet areas are
//! the weights of the orientation measure, found by [`solve_minkowski`].

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::{clip_facets, minkowski_sum_2d, omega, Dim, Polytope, Vec3, Zonotope};
use crate::measures::{
    blaschke_measure, orientation_measure, validate_minkowski_data, Barrier, DirectionalMeasure, Piece,
};

/// Stopping rules for [`solve_minkowski`].
#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Target for the maximal relative facet-area error.
    pub tol: f64,
    pub max_iter: usize,
    /// Starting support numbers, one per antipodal pair of the target (in the
    /// order of [`DirectionalMeasure::antipodal_pairs`]); a ball-like start if `None`.
    pub initial: Option<Vec<f64>>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-6, max_iter: 500, initial: None }
    }
}

/// Result of the Minkowski solver.
#[derive(Clone, Debug)]
pub struct MinkowskiSolution {
    pub polytope: Polytope,
    pub target: DirectionalMeasure,
    /// `max_j |F_j − w_j| / w_j` over the target atoms.
    pub residual: f64,
    pub iterations: usize,
    /// Target normals whose facet shrank below `1e-10` of the mean facet area.
    pub vanished: Vec<Vec3>,
    /// `(iteration, residual)` at the start and after every Newton step.
    pub log: Vec<(usize, f64)>,
}

/// Facet areas and the area Jacobian of `P(t) = {x : |⟨x,v_p⟩| ≤ t_p}`.
struct PairState {
    vol: f64,
    /// `A_p = F(v_p) + F(-v_p)`.
    areas: DVector<f64>,
    /// Per facet (2p, 2p+1) areas.
    facet_areas: Vec<f64>,
    /// `∂A_p/∂t_q`.
    jac: DMatrix<f64>,
}

fn pair_planes(dirs: &[Vec3], t: &DVector<f64>) -> Vec<(Vec3, f64)> {
    dirs.iter().zip(t.iter()).flat_map(|(v, &h)| [(*v, h), (-v, h)]).collect()
}

fn evaluate(dirs: &[Vec3], t: &DVector<f64>, with_jac: bool) -> Option<PairState> {
    if t.iter().any(|&h| !(h > 0.0)) {
        return None;
    }
    let planes = pair_planes(dirs, t);
    let clipped = clip_facets(&planes).ok()?;
    let m = dirs.len();
    let facet_areas: Vec<f64> = clipped.iter().map(|c| c.area).collect();
    let areas = DVector::from_fn(m, |p, _| facet_areas[2 * p] + facet_areas[2 * p + 1]);
    let vol = planes.iter().zip(&facet_areas).map(|((_, h), a)| h * a).sum::<f64>() / 3.0;
    if !(vol > 0.0) {
        return None;
    }
    let mut jac = DMatrix::zeros(m, m);
    if with_jac {
        for (i, c) in clipped.iter().enumerate() {
            let k = c.verts.len();
            for e in 0..k {
                let j = c.labels[e];
                if j >= planes.len() || j == i {
                    continue;
                }
                let len = (c.verts[(e + 1) % k] - c.verts[e]).norm();
                if len == 0.0 {
                    continue;
                }
                let (ui, uj) = (planes[i].0, planes[j].0);
                let sin = ui.cross(&uj).norm();
                if sin < 1e-14 {
                    continue;
                }
                let cos = ui.dot(&uj);
                // ∂F_i/∂h_j = ℓ/sinθ and ∂F_i/∂h_i gets -ℓ cotθ.
                jac[(i / 2, j / 2)] += len / sin;
                jac[(i / 2, i / 2)] -= len * cos / sin;
            }
        }
    }
    Some(PairState { vol, areas, facet_areas, jac })
}

/// `F(t) = Σ W_p t_p − log vol P(t)`, convex in `t`.
fn objective(weights: &DVector<f64>, dirs: &[Vec3], t: &DVector<f64>) -> f64 {
    match evaluate(dirs, t, false) {
        Some(s) => weights.dot(t) - s.vol.ln(),
        None => f64::INFINITY,
    }
}

/// Relative facet-area error after the optimal rescaling, and the scale.
fn residual_of(state: &PairState, pair_w: &DVector<f64>, atom_w: &[(f64, f64)]) -> (f64, f64) {
    let s2 = pair_w.sum() / state.areas.sum();
    let mut worst: f64 = 0.0;
    for (p, &(wa, wb)) in atom_w.iter().enumerate() {
        worst = worst.max((s2 * state.facet_areas[2 * p] - wa).abs() / wa);
        worst = worst.max((s2 * state.facet_areas[2 * p + 1] - wb).abs() / wb);
    }
    (worst, s2.sqrt())
}

/// Solves the Minkowski problem for an even measure on `S²`.
///
/// Minimizes the convex function `Σ W_p t_p − log vol P(t)` over the support
/// numbers of antipodal facet pairs by damped Newton steps. At the minimizer
/// the facet areas are proportional to the weights; a final dilation matches
/// them exactly. The returned polytope is origin-symmetric by construction.
pub fn solve_minkowski(mu: &DirectionalMeasure, opts: &SolverOptions) -> Result<MinkowskiSolution> {
    if mu.dim() != Dim::Three {
        return Err(Error::InvalidData("the Minkowski solver works in dimension 3".into()));
    }
    if !mu.is_even() {
        return Err(Error::InvalidData("Minkowski data must be even".into()));
    }
    let report = validate_minkowski_data(mu);
    if let Some(why) = report.failure() {
        return Err(if report.spans { Error::InvalidData(why) } else { Error::Degenerate(why) });
    }

    let pairs = mu.antipodal_pairs();
    let dirs: Vec<Vec3> = pairs.iter().map(|(v, _)| *v).collect();
    let atom_weight = |u: &Vec3| mu.atoms().iter().find(|a| (a.u - u).norm() <= 1e-9).map(|a| a.w).unwrap_or(0.0);
    let atom_w: Vec<(f64, f64)> = dirs.iter().map(|v| (atom_weight(v), atom_weight(&-v))).collect();
    let weights = DVector::from_iterator(pairs.len(), pairs.iter().map(|(_, w)| *w));
    let m = dirs.len();

    let mut t = match &opts.initial {
        Some(init) => {
            if init.len() != m || init.iter().any(|h| !(*h > 0.0)) {
                return Err(Error::InvalidData(format!("initial support numbers must be {m} positive values")));
            }
            DVector::from_column_slice(init)
        }
        None => DVector::from_element(m, (mu.mass() / omega(3)).sqrt()),
    };

    let mut state = evaluate(&dirs, &t, true)
        .ok_or_else(|| Error::InvalidData("initial support numbers give an empty polytope".into()))?;
    let mut log = Vec::new();
    let mut iterations = 0;
    let (mut residual, mut scale) = residual_of(&state, &weights, &atom_w);
    let mut f = weights.dot(&t) - state.vol.ln();
    log.push((0, residual));

    while residual > opts.tol && iterations < opts.max_iter {
        iterations += 1;
        let vol = state.vol;
        let grad = &weights - &state.areas / vol;
        // Hessian of −log vol: −∇²vol/vol + ∇vol ∇volᵀ/vol².
        let sym = (&state.jac + state.jac.transpose()) * 0.5;
        let h = -sym / vol + (&state.areas * state.areas.transpose()) / (vol * vol);
        let step = newton_step(&h, &grad);
        let slope = grad.dot(&step);
        let mut alpha = 1.0;
        let mut accepted = None;
        while alpha > 1e-14 {
            let trial = &t + &step * alpha;
            let ft = objective(&weights, &dirs, &trial);
            if ft <= f + 1e-4 * alpha * slope || (ft.is_finite() && (ft - f).abs() <= 1e-15 * f.abs().max(1.0)) {
                accepted = Some((trial, ft));
                break;
            }
            alpha *= 0.5;
        }
        let Some((trial, ft)) = accepted else { break };
        t = trial;
        f = ft;
        state = evaluate(&dirs, &t, true).expect("accepted iterate is a polytope");
        (residual, scale) = residual_of(&state, &weights, &atom_w);
        log.push((iterations, residual));
    }

    let mean = state.facet_areas.iter().sum::<f64>() / state.facet_areas.len() as f64;
    let planes = pair_planes(&dirs, &(&t * scale));
    let vanished: Vec<Vec3> =
        planes.iter().zip(&state.facet_areas).filter(|(_, a)| **a < 1e-10 * mean).map(|((n, _), _)| *n).collect();
    let polytope = Polytope::from_halfspaces(Dim::Three, &planes)?;
    let solution = MinkowskiSolution { polytope, target: mu.clone(), residual, iterations, vanished, log };
    if residual > opts.tol {
        return Err(Error::NotConverged(Box::new(solution)));
    }
    Ok(solution)
}

/// Newton direction for a convex Hessian, regularized until Cholesky succeeds.
fn newton_step(h: &DMatrix<f64>, grad: &DVector<f64>) -> DVector<f64> {
    let n = h.nrows();
    let scale = (0..n).map(|i| h[(i, i)].abs()).fold(0.0_f64, f64::max).max(1e-300);
    let mut tau = 0.0;
    loop {
        let mut reg = h.clone();
        for i in 0..n {
            reg[(i, i)] += tau;
        }
        if let Some(ch) = reg.cholesky() {
            return -ch.solve(grad);
        }
        tau = if tau == 0.0 { 1e-12 * scale } else { tau * 10.0 };
        if tau > 1e6 * scale {
            return -grad.clone();
        }
    }
}

/// `co(B)` for a planar barrier: the zonogon of the segment vectors.
pub fn convexify_2d(b: &Barrier) -> Result<Polytope> {
    if b.dim() != Dim::Two {
        return Err(Error::InvalidData("convexify_2d needs a planar barrier".into()));
    }
    let gens: Vec<Vec3> = b
        .pieces()
        .iter()
        .map(|p| match p {
            Piece::Segment([a, c]) => c - a,
            Piece::Triangle(_) => unreachable!("planar barriers hold segments"),
        })
        .collect();
    Zonotope::new(Dim::Two, &gens).map_err(|_| Error::Degenerate("all segments are parallel".into()))?.to_polytope()
}

/// The convexification `co(B)`, whose surface area measure is `S*(B,·)`.
pub fn convexify(b: &Barrier) -> Result<Polytope> {
    match b.dim() {
        Dim::Two => convexify_2d(b),
        Dim::Three => Ok(solve_minkowski(&orientation_measure(b), &SolverOptions::default())?.polytope),
    }
}

/// Like [`convexify`], but keeps the solver details in 3D.
pub fn convexify_with(b: &Barrier, opts: &SolverOptions) -> Result<(Polytope, Option<MinkowskiSolution>)> {
    match b.dim() {
        Dim::Two => Ok((convexify_2d(b)?, None)),
        Dim::Three => {
            let s = solve_minkowski(&orientation_measure(b), opts)?;
            Ok((s.polytope.clone(), Some(s)))
        }
    }
}

/// The Blaschke body `∇P`: in the plane the central symmetral `½(P − P)`,
/// in space the solution of the Minkowski problem for `½(S(P,·) + S(−P,·))`.
pub fn blaschke_body(p: &Polytope) -> Result<Polytope> {
    match p.dim() {
        Dim::Two => {
            if !p.is_full_dimensional() {
                return Err(Error::Degenerate("Blaschke body of a lower-dimensional polygon".into()));
            }
            Ok(minkowski_sum_2d(p, &p.reflect())?.scale(0.5))
        }
        Dim::Three => Ok(solve_minkowski(&blaschke_measure(p)?, &SolverOptions::default())?.polytope),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::surface_area_measure;
    use approx::assert_relative_eq;

    fn v2(x: f64, y: f64) -> Vec3 {
        Vec3::new(x, y, 0.0)
    }

    #[test]
    fn two_orthogonal_segments_give_unit_square() {
        let b = Barrier::from_segments(&[[v2(3.0, 1.0), v2(4.0, 1.0)], [v2(-2.0, 0.0), v2(-2.0, 1.0)]]).unwrap();
        let co = convexify_2d(&b).unwrap();
        assert!(co.vertex_hausdorff(&Polytope::unit_cube(Dim::Two)) < 1e-15);
    }

    #[test]
    fn parallel_segments_are_degenerate() {
        let b = Barrier::from_segments(&[[v2(0.0, 0.0), v2(1.0, 0.0)], [v2(0.0, 1.0), v2(2.0, 1.0)]]).unwrap();
        assert!(matches!(convexify_2d(&b), Err(Error::Degenerate(_))));
    }

    #[test]
    fn cube_measure_reconstructs_cube() {
        let mu = surface_area_measure(&Polytope::unit_cube(Dim::Three)).unwrap();
        let s = solve_minkowski(&mu, &SolverOptions::default()).unwrap();
        assert!(s.residual < 1e-6);
        assert!(s.polytope.vertex_hausdorff(&Polytope::unit_cube(Dim::Three)) < 1e-5);
    }

    #[test]
    fn octahedron_measure_reconstructs_octahedron() {
        let pts: Vec<Vec3> = [Vec3::x(), Vec3::y(), Vec3::z()].iter().flat_map(|e| [*e, -*e]).collect();
        let oct = Polytope::from_vertices(Dim::Three, &pts).unwrap();
        let w = oct.facets()[0].area;
        assert_relative_eq!(w, 3f64.sqrt() / 2.0, epsilon = 1e-12);
        let atoms = (0..8).map(|k| {
            let s = |b: usize| if k >> b & 1 == 1 { -1.0 } else { 1.0 };
            (Vec3::new(s(0), s(1), s(2)), 3f64.sqrt() / 2.0)
        });
        let mu = DirectionalMeasure::new(Dim::Three, atoms).unwrap();
        let s = solve_minkowski(&mu, &SolverOptions::default()).unwrap();
        assert!(s.residual < 1e-6);
        assert!(s.polytope.vertex_hausdorff(&oct) < 1e-5);
    }

    #[test]
    fn box_from_three_unit_squares() {
        // Three unit squares with normals e1, e2, e3 at arbitrary positions.
        let square = |o: Vec3, a: Vec3, b: Vec3| [[o, o + a, o + a + b], [o, o + a + b, o + b]];
        let mut tris = Vec::new();
        tris.extend(square(Vec3::new(5.0, 0.0, 1.0), Vec3::y(), Vec3::z()));
        tris.extend(square(Vec3::new(-1.0, 2.0, 0.0), Vec3::z(), Vec3::x()));
        tris.extend(square(Vec3::new(0.3, -4.0, 2.0), Vec3::x(), Vec3::y()));
        let co = convexify(&Barrier::from_triangles(&tris).unwrap()).unwrap();
        assert!(co.vertex_hausdorff(&Polytope::unit_cube(Dim::Three)) < 1e-5);
    }

    #[test]
    fn single_triangle_is_degenerate() {
        let b = Barrier::from_triangles(&[[Vec3::zeros(), Vec3::x(), Vec3::y()]]).unwrap();
        assert!(matches!(convexify(&b), Err(Error::Degenerate(_))));
    }

    #[test]
    fn iteration_cap_reports_best_iterate() {
        let mu = surface_area_measure(&Polytope::unit_cube(Dim::Three).scale(1.7)).unwrap();
        let opts = SolverOptions { tol: 1e-14, max_iter: 1, initial: Some(vec![0.3, 2.0, 1.0]) };
        match solve_minkowski(&mu, &opts) {
            Err(Error::NotConverged(s)) => {
                assert_eq!(s.iterations, 1);
                assert!(s.residual > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn planar_blaschke_body_is_central_symmetral() {
        let t = Polytope::from_vertices(Dim::Two, &[v2(0.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0)]).unwrap();
        let nabla = blaschke_body(&t).unwrap();
        assert!(nabla.is_origin_symmetric(1e-12));
        let s = surface_area_measure(&nabla).unwrap();
        assert!(s.approx_eq(&blaschke_measure(&t).unwrap(), 1e-12, 1e-12));
    }
}
