//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p opaque-core --test acceptance -- --nocapture`.

use std::f64::consts::PI;
use std::time::Instant;

use opaque_core::analysis::{
    cylinder_counterexample, is_weak_barrier, is_weak_barrier_2d_prop1, jones_deficit, strong_barrier_mc, Verdict,
};
use opaque_core::convexify::{blaschke_body, convexify_2d, solve_minkowski, SolverOptions};
use opaque_core::geometry::{kappa, omega, Dim, Icosphere, Polytope, Vec3};
use opaque_core::measures::{
    blaschke_measure, mean_width_projection_identity, orientation_measure, projection_body, projection_zonotope,
    surface_area_measure, Barrier, DirectionalMeasure,
};
use opaque_core::samples;
use opaque_core::scenarios::{half_boundary, steiner_barrier, unit_square};
use opaque_core::stability::{dbl, exponent, jbeta_mass, lemma1_check, lemma3_check, stability_report, BETA_GRID};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_steiner() -> Outcome {
    let t = Instant::now();
    let q = unit_square();
    let b = steiner_barrier();
    let len = b.surface_area();
    ensure((len - 2.639).abs() <= 0.001, || format!("length {len}"))?;
    let weak = is_weak_barrier(&b, &q).map_err(|e| e.to_string())?;
    ensure(weak.verdict == Verdict::True, || format!("weak verdict {:?}", weak.verdict))?;
    let deficit = jones_deficit(&b, &q);
    ensure((deficit - 0.639).abs() <= 0.001, || format!("deficit {deficit}"))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("took {secs:.3}s"))?;
    Ok(format!("length {len:.5}, weak True (margin {:.2e}), deficit {deficit:.5}, {secs:.3}s", weak.margin))
}

fn c2_perimeter() -> Outcome {
    let t = Instant::now();
    let mut rng = samples::rng(2);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let b = samples::segment_barrier(&mut rng, 2 + i % 9);
        let co = convexify_2d(&b).map_err(|e| e.to_string())?;
        worst = worst.max((co.perimeter() - 2.0 * b.surface_area()).abs());
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(worst < 1e-9, || format!("max error {worst:.3e}"))?;
    ensure(secs < 5.0, || format!("took {secs:.3}s"))?;
    Ok(format!("200 sets, max |∂co(B)| − 2|B| = {worst:.2e}, {secs:.3}s"))
}

fn c3_equivalence() -> Outcome {
    let mut rng = samples::rng(3);
    let (mut trues, mut falses) = (0, 0);
    for i in 0..200 {
        let k = if i % 2 == 0 {
            samples::polytope(&mut rng, Dim::Two, 3 + i % 7)
        } else {
            samples::symmetric_polytope(&mut rng, Dim::Two, 2 + i % 5)
        };
        let slack = [-0.2, -0.02, -0.002, 0.002, 0.02, 0.3][i % 6];
        let b = match i % 4 {
            3 => samples::segment_barrier(&mut rng, 2 + i % 5),
            _ => samples::weak_barrier_for(&mut rng, &k, 2 + i % 6, slack),
        };
        let a = is_weak_barrier(&b, &k).map_err(|e| e.to_string())?;
        let p = is_weak_barrier_2d_prop1(&b, &k).map_err(|e| e.to_string())?;
        ensure(a.verdict == p.verdict, || format!("pair {i}: ΠK⊂Π(co B) {:?} vs ∇K⊂co(B) {:?}", a.verdict, p.verdict))?;
        if a.is_true() {
            trues += 1;
        } else {
            falses += 1;
        }
    }
    Ok(format!("200 pairs agree ({trues} True, {falses} False)"))
}

fn c4_projection_bodies() -> Outcome {
    let mut rng = samples::rng(4);
    let cube = surface_area_measure(&Polytope::unit_cube(Dim::Three)).map_err(|e| e.to_string())?;
    let pi_cube = projection_body(&cube).map_err(|e| e.to_string())?;
    let mut err: f64 = 0.0;
    for _ in 0..1000 {
        let u = samples::direction(&mut rng, Dim::Three);
        err = err.max((pi_cube.support_vec(&u) - u.abs().sum()).abs());
    }
    ensure(err < 1e-9, || format!("Π(cube) support error {err:.3e}"))?;

    let mut ident: f64 = 0.0;
    for dim in [Dim::Two, Dim::Three] {
        for i in 0..50 {
            let p = samples::polytope(&mut rng, dim, 4 + i % 12);
            let mu = surface_area_measure(&p).map_err(|e| e.to_string())?;
            let (l, r) = mean_width_projection_identity(&mu).map_err(|e| e.to_string())?;
            ident = ident.max((l - r).abs());
            let expect = 2.0 * kappa(dim.n() - 1) / omega(dim.n()) * p.surface_area();
            ident = ident.max((r - expect).abs());
        }
    }
    ensure(ident < 1e-9, || format!("mean width identity error {ident:.3e}"))?;

    let ball = surface_area_measure(&Icosphere::new(3).polytope()).map_err(|e| e.to_string())?;
    let z = projection_zonotope(&ball).map_err(|e| e.to_string())?;
    let mut dirs: Vec<Vec3> = Icosphere::new(5).vertices().to_vec();
    dirs.extend((0..1000).map(|_| samples::direction(&mut rng, Dim::Three)));
    let sup = dirs.iter().map(|u| (z.support_vec(u) - PI).abs()).fold(0.0, f64::max);
    ensure(sup < 0.02, || format!("Π(B³) sup error {sup:.4}"))?;
    Ok(format!("Π(cube) err {err:.1e}; identity err {ident:.1e} (100 bodies); Π(B³) sup err {sup:.4}"))
}

fn c5_solver() -> Outcome {
    let opts = SolverOptions::default();
    let check = |p: &Polytope, label: &str| -> Result<(f64, f64, f64), String> {
        let t = Instant::now();
        let mu = surface_area_measure(p).map_err(|e| e.to_string())?;
        let s = solve_minkowski(&mu, &opts).map_err(|e| format!("{label}: {e}"))?;
        let secs = t.elapsed().as_secs_f64();
        let center = p.vertex_centroid();
        let h = s.polytope.vertex_hausdorff(&p.translate(&-center));
        ensure(s.residual < 1e-6, || format!("{label}: residual {:.3e}", s.residual))?;
        ensure(h < 1e-5, || format!("{label}: Hausdorff {h:.3e}"))?;
        ensure(secs < 10.0, || format!("{label}: {secs:.2}s"))?;
        Ok((s.residual, h, secs))
    };
    check(&Polytope::unit_cube(Dim::Three), "cube")?;
    let oct_pts: Vec<Vec3> = [Vec3::x(), Vec3::y(), Vec3::z()].iter().flat_map(|e| [*e, -*e]).collect();
    check(&Polytope::from_vertices(Dim::Three, &oct_pts).map_err(|e| e.to_string())?, "octahedron")?;
    let mut rng = samples::rng(5);
    let (mut worst_r, mut worst_h, mut worst_t, mut max_pairs) = (0.0_f64, 0.0_f64, 0.0_f64, 0);
    for i in 0..50 {
        let p = samples::symmetric_polytope(&mut rng, Dim::Three, 4 + i % 20);
        max_pairs = max_pairs.max(p.facets().len() / 2);
        let (r, h, t) = check(&p, &format!("random body {i}"))?;
        worst_r = worst_r.max(r);
        worst_h = worst_h.max(h);
        worst_t = worst_t.max(t);
    }
    Ok(format!(
        "cube, octahedron, 50 round-trips (≤ {max_pairs} pairs): residual ≤ {worst_r:.1e}, Hausdorff ≤ {worst_h:.1e}, slowest {worst_t:.2}s"
    ))
}

fn random_measure(rng: &mut samples::SampleRng, dim: Dim, atoms: usize) -> DirectionalMeasure {
    use rand::Rng;
    let list: Vec<(Vec3, f64)> =
        (0..atoms).map(|_| (samples::direction(rng, dim), rng.random_range(0.1..2.0))).collect();
    DirectionalMeasure::new(dim, list).unwrap()
}

fn c6_dbl() -> Outcome {
    let mut rng = samples::rng(6);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let dim = if i % 2 == 0 { Dim::Two } else { Dim::Three };
        let (u, v) = (samples::direction(&mut rng, dim), samples::direction(&mut rng, dim));
        let d = (u - v).norm();
        let lp =
            dbl(&DirectionalMeasure::new(dim, [(u, 1.0)]).unwrap(), &DirectionalMeasure::new(dim, [(v, 1.0)]).unwrap())
                .map_err(|e| e.to_string())?;
        worst = worst.max((lp - 2.0 * d / (2.0 + d)).abs());
    }
    ensure(worst < 1e-6, || format!("Dirac error {worst:.3e}"))?;
    let (mut sym, mut tri) = (0.0_f64, f64::NEG_INFINITY);
    for i in 0..50 {
        let dim = if i % 2 == 0 { Dim::Two } else { Dim::Three };
        let a = random_measure(&mut rng, dim, 1 + i % 5);
        let b = random_measure(&mut rng, dim, 1 + (i + 2) % 5);
        let c = random_measure(&mut rng, dim, 1 + (i + 4) % 5);
        let (ab, ba) = (dbl(&a, &b).unwrap(), dbl(&b, &a).unwrap());
        sym = sym.max((ab - ba).abs());
        let (bc, ac) = (dbl(&b, &c).unwrap(), dbl(&a, &c).unwrap());
        tri = tri.max(ac - ab - bc);
    }
    ensure(sym <= 1e-9, || format!("symmetry defect {sym:.3e}"))?;
    ensure(tri <= 1e-9, || format!("triangle defect {tri:.3e}"))?;
    Ok(format!("20 Dirac pairs err {worst:.1e}; symmetry {sym:.1e}; triangle excess {tri:.1e}"))
}

fn c7_equality() -> Outcome {
    let mut rng = samples::rng(7);
    let (mut wd, mut wb) = (0.0_f64, 0.0_f64);
    for i in 0..20 {
        let k = samples::symmetric_polytope(&mut rng, Dim::Two, 2 + i % 8);
        let b = half_boundary(&k).map_err(|e| e.to_string())?;
        wd = wd.max(jones_deficit(&b, &k).abs());
        let nabla = blaschke_measure(&k).map_err(|e| e.to_string())?;
        wb = wb.max(dbl(&nabla, &orientation_measure(&b)).map_err(|e| e.to_string())?);
    }
    ensure(wd < 1e-9, || format!("deficit {wd:.3e}"))?;
    ensure(wb < 1e-9, || format!("dbl {wb:.3e}"))?;
    Ok(format!("20 polygons: |δ| ≤ {wd:.1e}, d_bL ≤ {wb:.1e}"))
}

fn c8_cylinder() -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    for s in [2.2, 3.0] {
        let r = cylinder_counterexample(s, 3).map_err(|e| e.to_string())?;
        let level = r.weak_barrier.net_level.unwrap_or(99);
        ensure(r.weak_barrier.is_true() && level <= 6, || format!("s={s}: {:?}", r.weak_barrier))?;
        ensure(!r.nabla_inside, || format!("s={s}: ∇K inside co(B)"))?;
        ensure(r.max_projection_area <= r.projection_bound && r.projection_bound < 2.0 * PI, || {
            format!("s={s}: projection {} vs {}", r.max_projection_area, r.projection_bound)
        })?;
        parts.push(format!(
            "s={s}: True at level {level}, max proj {:.4} ≤ {:.4}, excess {:.3}",
            r.max_projection_area, r.projection_bound, r.containment_violation
        ));
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{}; {secs:.2}s", parts.join("; ")))
}

fn c9_monte_carlo() -> Outcome {
    let q = unit_square();
    let dq = Barrier::boundary_of(&q).map_err(|e| e.to_string())?;
    let full = strong_barrier_mc(&dq, &q, 100_000, 0).map_err(|e| e.to_string())?;
    ensure(full.misses == 0, || format!("∂Q missed {} times", full.misses))?;
    let half = half_boundary(&q).map_err(|e| e.to_string())?;
    let a = strong_barrier_mc(&half, &q, 100_000, 0).map_err(|e| e.to_string())?;
    let b = strong_barrier_mc(&half, &q, 100_000, 0).map_err(|e| e.to_string())?;
    ensure((a.miss_fraction - 0.5).abs() <= 0.01, || format!("½∂Q miss fraction {}", a.miss_fraction))?;
    ensure(a == b && a.miss_fraction.to_bits() == b.miss_fraction.to_bits(), || "not reproducible".into())?;
    Ok(format!(
        "∂Q misses 0/100000; ½∂Q miss fraction {:.4} (CI {:.4}..{:.4}), reproducible",
        a.miss_fraction, a.ci95[0], a.ci95[1]
    ))
}

fn c10_lemmas() -> Outcome {
    let mut rng = samples::rng(10);
    let mut report = Vec::new();
    for dim in [Dim::Two, Dim::Three] {
        let (mut r1, mut r3, mut unsquared_fail) = (0.0_f64, 0.0_f64, 0);
        for i in 0..100 {
            let (inner, outer) = samples::nested_symmetric_pair(&mut rng, dim, 3 + i % 8);
            let l1 = lemma1_check(&inner, &outer).map_err(|e| e.to_string())?;
            ensure(l1.ok, || format!("{}D pair {i}: sup bound {} > {}", dim.n(), l1.lhs, l1.rhs))?;
            let l3 = lemma3_check(&inner, &outer).map_err(|e| e.to_string())?;
            ensure(l3.ok, || format!("{}D pair {i}: L² bound {} > {}", dim.n(), l3.lhs, l3.rhs))?;
            if l1.rhs > 0.0 {
                r1 = r1.max(l1.lhs / l1.rhs);
            }
            if l3.rhs > 0.0 {
                r3 = r3.max(l3.lhs / l3.rhs);
            }
            if !l3.ok_unsquared {
                unsquared_fail += 1;
            }
        }
        report.push(format!(
            "{}D: max lhs/rhs {r1:.3} (δ_∞), {r3:.3} (δ₂); unsquared δ₂ bound fails on {unsquared_fail}/100",
            dim.n()
        ));
    }
    Ok(report.join("; "))
}

fn c11_steinerb() -> Outcome {
    let q = unit_square();
    let axes = [Vec3::x(), Vec3::y()];
    let check = |b: &Barrier, label: &str| -> Result<f64, String> {
        let d = jones_deficit(b, &q);
        let star = orientation_measure(b);
        let mut worst = f64::NEG_INFINITY;
        for &beta in &BETA_GRID {
            let m = jbeta_mass(&star, &axes, beta).map_err(|e| e.to_string())?;
            let bound = 2.0 / (1.0 - beta.cos()) * d;
            ensure(m <= bound + 1e-9, || format!("{label}: β={beta:.4}: {m} > {bound}"))?;
            worst = worst.max(m / bound);
        }
        Ok(worst)
    };
    let steiner = steiner_barrier();
    let j = jbeta_mass(&orientation_measure(&steiner), &axes, PI / 6.0).map_err(|e| e.to_string())?;
    let bound = 2.0 / (1.0 - (PI / 6.0).cos()) * jones_deficit(&steiner, &q);
    ensure((j - 2.012).abs() <= 0.01 && j <= 9.55 && j <= bound, || format!("J_π/6 mass {j}, bound {bound}"))?;
    let mut worst = check(&steiner, "Steiner barrier")?;
    let mut rng = samples::rng(11);
    for i in 0..20 {
        let b = samples::weak_barrier_for(&mut rng, &q, 2 + i % 6, 0.05 * (i % 4) as f64);
        ensure(is_weak_barrier(&b, &q).map(|r| r.is_true()).unwrap_or(false), || format!("sample {i} not weak"))?;
        worst = worst.max(check(&b, &format!("random barrier {i}"))?);
    }
    Ok(format!("S*(Steiner, J_π/6) = {j:.4} ≤ {bound:.3}; 21 barriers × 6 β, max mass/bound {worst:.3}"))
}

fn c12_stability() -> Outcome {
    ensure(exponent(2, 0.0) == 0.25, || "e(2,0) ≠ 0.25".into())?;
    let q = unit_square();
    let mut cases: Vec<(String, Barrier, Polytope, f64)> = vec![
        ("steiner".into(), steiner_barrier(), q.clone(), 0.0),
        ("half-boundary".into(), half_boundary(&q).unwrap(), q.clone(), 0.0),
        ("boundary".into(), Barrier::boundary_of(&q).unwrap(), q.clone(), 0.0),
    ];
    let cube = Polytope::unit_cube(Dim::Three);
    cases.push(("cube boundary".into(), Barrier::boundary_of(&cube).unwrap(), cube, 0.01));
    let mut rng = samples::rng(12);
    for i in 0..10 {
        let k = samples::polytope(&mut rng, Dim::Two, 3 + i % 6);
        let b = samples::weak_barrier_for(&mut rng, &k, 2 + i % 5, 0.1);
        cases.push((format!("random {i}"), b, k, 0.0));
    }
    let mut lines = Vec::new();
    for (name, b, k, eps) in &cases {
        let r = stability_report(b, k, *eps).map_err(|e| format!("{name}: {e}"))?;
        match r.ratio {
            Some(x) => ensure(x.is_finite(), || format!("{name}: ratio {x}"))?,
            None => ensure(r.equality_case, || format!("{name}: no ratio outside the equality case"))?,
        }
        ensure(r.beta_table.iter().all(|row| row.dbl_ok), || format!("{name}: J_β chain fails"))?;
        lines.push(format!(
            "{name}: δ={:.4} dbl={:.4} e={:.4} ratio={}",
            r.deficit,
            r.dbl,
            r.exponent,
            r.ratio.map(|x| format!("{x:.4}")).unwrap_or_else(|| "equality".into())
        ));
    }
    for l in &lines {
        println!("      {l}");
    }
    Ok(format!("e(2,0) = 0.25; {} reports finite, J_β chain holds on all rows", cases.len()))
}

fn c13_inradius() -> Outcome {
    let mut rng = samples::rng(13);
    for dim in [Dim::Two, Dim::Three] {
        let n = dim.n() as f64;
        for i in 0..100 {
            let p = samples::polytope(&mut rng, dim, 4 + i % 16);
            let rho = p.inradius().map_err(|e| e.to_string())?;
            let (v, s) = (p.volume(), p.surface_area());
            ensure(v / s <= rho + 1e-9 && rho <= n * v / s + 1e-9, || {
                format!("{}D body {i}: V/S={} ρ={rho} nV/S={}", dim.n(), v / s, n * v / s)
            })?;
        }
        for i in 0..50 {
            let p = samples::polytope(&mut rng, dim, 4 + i % 12);
            let rho = p.inradius().map_err(|e| e.to_string())?;
            let nabla = blaschke_body(&p).map_err(|e| format!("{}D body {i}: {e}", dim.n()))?;
            let rho_n = nabla.inradius().map_err(|e| e.to_string())?;
            ensure(rho_n >= rho / n - 1e-9, || format!("{}D body {i}: ρ(∇K)={rho_n} < ρ(K)/n={}", dim.n(), rho / n))?;
        }
    }
    Ok("V/S ≤ ρ ≤ nV/S on 200 bodies; ρ(∇K) ≥ ρ(K)/n on 100 bodies".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 13] = [
        ("Steiner barrier of the unit square", c1_steiner),
        ("perimeter identity", c2_perimeter),
        ("Blaschke-body and projection-body tests agree", c3_equivalence),
        ("projection-body facts", c4_projection_bodies),
        ("Minkowski solver", c5_solver),
        ("d_bL exactness and metric axioms", c6_dbl),
        ("equality case B = ½∂K", c7_equality),
        ("cylinder counterexample", c8_cylinder),
        ("Monte-Carlo barrier statistics", c9_monte_carlo),
        ("sup and L² support-distance bounds", c10_lemmas),
        ("J_β bound by the deficit", c11_steinerb),
        ("stability report properties", c12_stability),
        ("inradius bounds", c13_inradius),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                println!("FAIL [{:>2}] {name} ({secs:.2}s): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
