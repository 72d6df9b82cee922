//! Distances between measures and the stability quantities of Jones' bound.

use std::f64::consts::PI;

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use serde::{Deserialize, Serialize};

use crate::analysis::{is_weak_barrier, jones_deficit};
use crate::convexify::blaschke_body;
use crate::error::{Error, Result};
use crate::geometry::{kappa, omega, Dim, Icosphere, Polytope, Vec3, TOL};
use crate::measures::{blaschke_measure, orientation_measure, Barrier, DirectionalMeasure};

/// The `β` grid of the stability report.
pub const BETA_GRID: [f64; 6] = [PI / 64.0, PI / 32.0, PI / 16.0, PI / 8.0, 3.0 * PI / 16.0, PI / 4.0 - PI / 64.0];

/// Bounded-Lipschitz distance `sup { ∫f d(μ−ν) : ‖f‖_∞ + Lip(f) ≤ 1 }`.
///
/// Solved exactly as a linear program over the union of the supports: an
/// assignment on finitely many points with sup bound `a` and Lipschitz
/// constant `L` extends to the sphere with the same bounds.
pub fn dbl(mu: &DirectionalMeasure, nu: &DirectionalMeasure) -> Result<f64> {
    if mu.dim() != nu.dim() {
        return Err(Error::InvalidData("measures live in different dimensions".into()));
    }
    let mut pts: Vec<(Vec3, f64)> = Vec::new();
    for (a, sign) in mu.atoms().iter().map(|a| (a, 1.0)).chain(nu.atoms().iter().map(|a| (a, -1.0))) {
        match pts.iter_mut().find(|(u, _)| (u - a.u).norm() <= 1e-9) {
            Some(p) => p.1 += sign * a.w,
            None => pts.push((a.u, sign * a.w)),
        }
    }
    if pts.iter().all(|(_, d)| d.abs() <= 1e-15) {
        return Ok(0.0);
    }
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let f: Vec<_> = pts.iter().map(|(_, d)| lp.add_var(*d, (-1.0, 1.0))).collect();
    let a = lp.add_var(0.0, (0.0, 1.0));
    let l = lp.add_var(0.0, (0.0, 1.0));
    lp.add_constraint([(a, 1.0), (l, 1.0)], ComparisonOp::Le, 1.0);
    for &fj in &f {
        lp.add_constraint([(fj, 1.0), (a, -1.0)], ComparisonOp::Le, 0.0);
        lp.add_constraint([(fj, -1.0), (a, -1.0)], ComparisonOp::Le, 0.0);
    }
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if i != j {
                let d = (pts[i].0 - pts[j].0).norm();
                lp.add_constraint([(f[i], 1.0), (f[j], -1.0), (l, -d)], ComparisonOp::Le, 0.0);
            }
        }
    }
    let sol = lp
        .solve()
        .map_err(|e| Error::Lp(e.to_string()))?
        .into_solution()
        .map_err(|_| Error::Lp("bounded-Lipschitz program interrupted".into()))?;
    Ok(sol.objective().max(0.0))
}

/// The upper bound `(1 + √(3 + μ(S^{n-1})))·d_bL^{1/2}` on the Lévy–Prokhorov distance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DlpBound {
    pub dbl: f64,
    /// `None` when the hypotheses `d_bL ≤ 1` and `μ(S^{n-1}) > 0` fail.
    pub value: Option<f64>,
    pub applicable: bool,
}

pub fn dlp_upper_bound(mu: &DirectionalMeasure, nu: &DirectionalMeasure) -> Result<DlpBound> {
    Ok(dlp_bound_from(dbl(mu, nu)?, mu.mass()))
}

/// The bound from a known `d_bL` value and the mass of `μ`.
pub fn dlp_bound_from(dbl: f64, mass: f64) -> DlpBound {
    let applicable = dbl <= 1.0 && mass > 0.0;
    let value = applicable.then(|| (1.0 + (3.0 + mass).sqrt()) * dbl.sqrt());
    DlpBound { dbl, value, applicable }
}

/// `2(n+1)/(n²(n+4)) − ε`.
pub fn exponent(n: usize, eps: f64) -> f64 {
    let n = n as f64;
    2.0 * (n + 1.0) / (n * n * (n + 4.0)) - eps
}

fn with_antipodes(v: &[Vec3]) -> Vec<Vec3> {
    v.iter().flat_map(|x| [x.normalize(), -x.normalize()]).collect()
}

/// `m(J_β)`: the mass of atoms at angle greater than `β` from every direction
/// of `V ∪ −V`. Accepts `0 < β ≤ π/4`.
pub fn jbeta_mass(m: &DirectionalMeasure, v: &[Vec3], beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= PI / 4.0 + 1e-15) {
        return Err(Error::InvalidData(format!("β must lie in (0, π/4], got {beta}")));
    }
    let v = with_antipodes(v);
    let c = beta.cos();
    Ok(m.mass_where(|u| v.iter().all(|x| u.dot(x) < c)))
}

/// `f(u) = 1 − max_i g_i(u)` with `g_i(u) = (⟨u_i,u⟩ − cos β)⁺/(1 − cos β)`
/// over `V ∪ −V`. Vanishes on `V` and equals 1 on `J_β`; `‖f‖_bL ≤ 2/(1 − cos β)`.
pub fn corollary_witness_function(v: &[Vec3], beta: f64, u: &Vec3) -> Result<f64> {
    if !(beta > 0.0 && beta < PI) {
        return Err(Error::InvalidData(format!("β must lie in (0, π), got {beta}")));
    }
    let c = beta.cos();
    let u = u.normalize();
    let g = with_antipodes(v).iter().map(|x| (x.dot(&u) - c).max(0.0) / (1.0 - c)).fold(0.0, f64::max);
    Ok(1.0 - g)
}

/// Directions where a difference of polytope support functions can peak:
/// facet normals and vertex directions of both bodies.
fn structural_directions(a: &Polytope, b: &Polytope) -> Vec<Vec3> {
    let mut out = Vec::new();
    for p in [a, b] {
        out.extend(p.facets().iter().map(|f| f.normal));
        out.extend(p.vertices().iter().filter(|v| v.norm() > 1e-12).map(|v| v.normalize()));
    }
    out
}

/// Points of the planar trapezoid rule (2048 nodes) or the spherical midpoint
/// rule on a level-5 icosphere, with weights.
fn sphere_quadrature(dim: Dim) -> Vec<(Vec3, f64)> {
    match dim {
        Dim::Two => {
            let n = 2048;
            (0..n)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / n as f64;
                    (Vec3::new(t.cos(), t.sin(), 0.0), 2.0 * PI / n as f64)
                })
                .collect()
        }
        Dim::Three => Icosphere::new(5).quadrature(),
    }
}

/// `δ_∞(K', K) = max_u |h(K,u) − h(K',u)|` over a fine net plus structural directions.
pub fn delta_inf(k_inner: &Polytope, k: &Polytope) -> f64 {
    let mut dirs: Vec<Vec3> = match k.dim() {
        Dim::Two => sphere_quadrature(Dim::Two).into_iter().map(|(u, _)| u).collect(),
        Dim::Three => Icosphere::new(5).vertices().to_vec(),
    };
    dirs.extend(structural_directions(k_inner, k));
    dirs.iter().map(|u| (k.support_vec(u) - k_inner.support_vec(u)).abs()).fold(0.0, f64::max)
}

/// `δ₂(K', K) = ‖h(K,·) − h(K',·)‖₂` by quadrature.
pub fn delta_2(k_inner: &Polytope, k: &Polytope) -> f64 {
    sphere_quadrature(k.dim())
        .iter()
        .map(|(u, w)| w * (k.support_vec(u) - k_inner.support_vec(u)).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// `c_n` of the Hausdorff-distance bound for nested bodies.
pub fn lemma1_constant(n: usize) -> f64 {
    if n == 2 {
        return PI / 2f64.sqrt();
    }
    let nf = n as f64;
    let (om, ka) = (omega(n), kappa(n - 1));
    (nf * om / ka).powf(1.0 / nf) * 2f64.powf((1.0 - 5.0 / nf) / 2.0) * (om / (2.0 * ka)).powf(1.0 - 1.0 / nf)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma3Check {
    pub lhs: f64,
    /// `√(δ_∞ δ₁)` bound: `√((ω_n c_n/2) w^{1-1/n} Δw^{1+1/n})`.
    pub rhs: f64,
    pub ok: bool,
    /// The same expression without the square root; it fails for nearly equal bodies.
    pub rhs_unsquared: f64,
    pub ok_unsquared: bool,
}

fn nested_symmetric(k_inner: &Polytope, k: &Polytope) -> Result<()> {
    if k_inner.dim() != k.dim() || !k.is_full_dimensional() {
        return Err(Error::InvalidData("need full-dimensional bodies of one dimension".into()));
    }
    if !k_inner.is_origin_symmetric(1e-9) || !k.is_origin_symmetric(1e-9) {
        return Err(Error::InvalidData("bodies must be origin-symmetric".into()));
    }
    let (viol, _) = k.max_violation(k_inner);
    if viol > TOL {
        return Err(Error::Containment(format!("inner body sticks out by {viol:.3e}")));
    }
    Ok(())
}

/// `δ_∞(K',K) ≤ c_n w(K)^{1-1/n} (w(K) − w(K'))^{1/n}` for nested symmetric bodies.
pub fn lemma1_check(k_inner: &Polytope, k: &Polytope) -> Result<InequalityCheck> {
    nested_symmetric(k_inner, k)?;
    let n = k.dim().n() as f64;
    let w = k.mean_width();
    let dw = (w - k_inner.mean_width()).max(0.0);
    let lhs = delta_inf(k_inner, k);
    let rhs = lemma1_constant(k.dim().n()) * w.powf(1.0 - 1.0 / n) * dw.powf(1.0 / n);
    Ok(InequalityCheck { lhs, rhs, ok: lhs <= rhs + 1e-9 })
}

/// The `L²` counterpart of [`lemma1_check`].
///
/// Hölder gives `δ₂² ≤ δ_∞ δ₁` with `δ₁ = (ω_n/2) Δw`, which is what `ok`
/// tests. The bound without the square root is reported alongside.
pub fn lemma3_check(k_inner: &Polytope, k: &Polytope) -> Result<Lemma3Check> {
    nested_symmetric(k_inner, k)?;
    let nn = k.dim().n();
    let n = nn as f64;
    let w = k.mean_width();
    let dw = (w - k_inner.mean_width()).max(0.0);
    let lhs = delta_2(k_inner, k);
    let unsquared = omega(nn) * lemma1_constant(nn) / 2.0 * w.powf(1.0 - 1.0 / n) * dw.powf(1.0 + 1.0 / n);
    let rhs = unsquared.sqrt();
    let slack = |r: f64| r * (1.0 + 1e-4) + 1e-12;
    Ok(Lemma3Check { lhs, rhs, ok: lhs <= slack(rhs), rhs_unsquared: unsquared, ok_unsquared: lhs <= slack(unsquared) })
}

/// One row of the `J_β` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaRow {
    pub beta: f64,
    /// `S*(B, J_β)`.
    pub jbeta_mass: f64,
    /// `2δ/(1 − cos β)`.
    pub deficit_bound: f64,
    /// `2 d_bL/(1 − cos β)`.
    pub dbl_bound: f64,
    pub deficit_ok: bool,
    pub dbl_ok: bool,
}

/// Both sides of the stability inequality, tabulated but never asserted: its
/// constant is not explicit, so only the ratio `d_bL/δ^e` is reported.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub dim: usize,
    pub eps: f64,
    /// `S(B) − ½S(∂K)`.
    pub deficit: f64,
    /// `d_bL(S(∇K,·), S*(B,·))`.
    pub dbl: f64,
    pub exponent: f64,
    /// `d_bL/δ^e`; `None` in the equality case or when `δ = 0 < d_bL`.
    pub ratio: Option<f64>,
    /// `δ = 0` and `d_bL = 0` (within `1e-9`).
    pub equality_case: bool,
    pub dlp: DlpBound,
    pub inradius: f64,
    /// Inradius of the Blaschke body `∇K`, when it could be built.
    pub blaschke_inradius: Option<f64>,
    pub beta_table: Vec<BetaRow>,
}

impl StabilityReport {
    /// The `β` table as CSV with a header line.
    pub fn beta_csv(&self) -> String {
        let mut s = String::from("beta,jbeta_mass,deficit_bound,dbl_bound,deficit_ok,dbl_ok\n");
        for r in &self.beta_table {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.beta, r.jbeta_mass, r.deficit_bound, r.dbl_bound, r.deficit_ok, r.dbl_ok
            ));
        }
        s
    }
}

/// Assembles deficit, `d_bL`, exponent, ratio and the `J_β` table for a weak barrier.
pub fn stability_report(b: &Barrier, k: &Polytope, eps: f64) -> Result<StabilityReport> {
    if !(eps >= 0.0) {
        return Err(Error::InvalidData("ε must be non-negative".into()));
    }
    let weak = is_weak_barrier(b, k)?;
    if !weak.is_true() {
        return Err(Error::InvalidData(format!("not a weak barrier ({:?})", weak.verdict)));
    }
    let n = k.dim().n();
    let deficit = jones_deficit(b, k);
    let nabla = blaschke_measure(k)?;
    let star = orientation_measure(b);
    let d = dbl(&nabla, &star)?;
    let e = exponent(n, eps);
    let equality_case = deficit.abs() < 1e-9 && d < 1e-9;
    let ratio = if equality_case || deficit <= 0.0 { None } else { Some(d / deficit.powf(e)) };
    let normals: Vec<Vec3> = nabla.atoms().iter().map(|a| a.u).collect();
    let beta_table = BETA_GRID
        .iter()
        .map(|&beta| {
            let m = jbeta_mass(&star, &normals, beta).expect("grid values are in range");
            let c = 2.0 / (1.0 - beta.cos());
            let deficit_bound = c * deficit.max(0.0);
            let dbl_bound = c * d;
            BetaRow {
                beta,
                jbeta_mass: m,
                deficit_bound,
                dbl_bound,
                deficit_ok: m <= deficit_bound + 1e-9,
                dbl_ok: m <= dbl_bound + 1e-9,
            }
        })
        .collect();
    Ok(StabilityReport {
        dim: n,
        eps,
        deficit,
        dbl: d,
        exponent: e,
        ratio,
        equality_case,
        dlp: dlp_bound_from(d, nabla.mass()),
        inradius: k.inradius()?,
        blaschke_inradius: blaschke_body(k).ok().and_then(|p| p.inradius().ok()),
        beta_table,
    })
}
