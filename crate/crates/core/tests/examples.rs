//! Worked examples that cross module boundaries.

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use opaque_core::analysis::{is_weak_barrier, is_weak_barrier_2d_prop1, jones_deficit};
use opaque_core::convexify::{blaschke_body, convexify, convexify_2d};
use opaque_core::geometry::{convex_hull_2d, minkowski_sum_2d, zonotope, Dim, Polytope, Vec3};
use opaque_core::io::{parse_barrier, parse_polytope, polytope_json, PolytopeJson};
use opaque_core::measures::{
    blaschke_measure, mean_width_projection_identity, projection_body, projection_function, surface_area_measure,
    Barrier,
};
use opaque_core::samples;
use opaque_core::scenarios::unit_square;
use opaque_core::stability::{delta_inf, lemma1_check};

fn v2(x: f64, y: f64) -> Vec3 {
    Vec3::new(x, y, 0.0)
}

#[test]
fn difference_body_of_a_triangle_is_the_hull_of_vertex_differences() {
    let t = Polytope::from_vertices(Dim::Two, &[v2(0.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0)]).unwrap();
    let d = minkowski_sum_2d(&t, &t.reflect()).unwrap();
    let mut sums = Vec::new();
    for a in t.vertices() {
        for b in t.vertices() {
            sums.push(a - b);
        }
    }
    let brute = convex_hull_2d(&sums);
    assert_eq!(d.vertices().len(), 6);
    assert_eq!(brute.len(), 6);
    assert!(brute.iter().all(|p| d.vertices().iter().any(|q| (p - q).norm() < 1e-12)));
    assert_abs_diff_eq!(d.volume(), 6.0 * t.volume(), epsilon = 1e-12);
}

#[test]
fn octagonal_zonotope_support_at_sixteen_angles() {
    let g = [Vec3::x(), Vec3::y(), v2(1.0, 1.0) / 2f64.sqrt()];
    let z = zonotope(&g, Dim::Two).unwrap();
    assert_eq!(z.vertices().len(), 6);
    for k in 0..16 {
        let th = k as f64 * PI / 8.0;
        let u = v2(th.cos(), th.sin());
        let expect: f64 = g.iter().map(|v| 0.5 * v.dot(&u).abs()).sum();
        assert_abs_diff_eq!(z.support_vec(&u), expect, epsilon = 1e-12);
    }
    // Every generator contributes two parallel edges of its own length.
    assert_abs_diff_eq!(z.perimeter(), 2.0 * 3.0, epsilon = 1e-12);
}

#[test]
fn mean_width_identity_for_square_and_cube() {
    let sq = surface_area_measure(&unit_square()).unwrap();
    let (l, r) = mean_width_projection_identity(&sq).unwrap();
    assert_abs_diff_eq!(l, 8.0 / PI, epsilon = 1e-12);
    assert_abs_diff_eq!(r, 8.0 / PI, epsilon = 1e-12);
    let cube = surface_area_measure(&Polytope::unit_cube(Dim::Three)).unwrap();
    let (l, r) = mean_width_projection_identity(&cube).unwrap();
    assert_abs_diff_eq!(l, 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(r, 3.0, epsilon = 1e-12);
    let d = v2(1.0, 1.0).normalize();
    assert_abs_diff_eq!(
        projection_function(&cube, &Vec3::new(1.0, 1.0, 1.0).normalize()),
        3f64.sqrt(),
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(projection_function(&sq, &d), 2f64.sqrt(), epsilon = 1e-12);
}

#[test]
fn planar_projection_body_is_twice_the_rotated_body() {
    let mut rng = samples::rng(21);
    for m in 2..8 {
        let p = samples::symmetric_polytope(&mut rng, Dim::Two, m);
        let pi = projection_body(&surface_area_measure(&p).unwrap()).unwrap();
        assert!(pi.vertex_hausdorff(&p.rotate90().scale(2.0)) < 1e-9);
    }
}

#[test]
fn diagonals_convexify_to_a_rotated_square() {
    let b = Barrier::from_segments(&[[v2(-0.5, -0.5), v2(0.5, 0.5)], [v2(-0.5, 0.5), v2(0.5, -0.5)]]).unwrap();
    let co = convexify_2d(&b).unwrap();
    // Generators (1,1) and (1,−1) halved and summed: corners (±1,0), (0,±1).
    let r = 1.0;
    let expect = Polytope::from_vertices(Dim::Two, &[v2(r, 0.0), v2(0.0, r), v2(-r, 0.0), v2(0.0, -r)]).unwrap();
    assert!(co.vertex_hausdorff(&expect) < 1e-12);
    let q = unit_square();
    assert!(co.contains(&q));
    assert!(is_weak_barrier(&b, &q).unwrap().is_true());
    assert!(is_weak_barrier_2d_prop1(&b, &q).unwrap().is_true());
    assert_abs_diff_eq!(jones_deficit(&b, &q), 2.0 * 2f64.sqrt() - 2.0, epsilon = 1e-12);
}

#[test]
fn half_square_support_bounds() {
    let q = unit_square();
    let half = q.scale(0.5);
    assert_abs_diff_eq!(delta_inf(&half, &q), 2f64.sqrt() / 4.0, epsilon = 1e-12);
    let c = lemma1_check(&half, &q).unwrap();
    assert!(c.ok);
    assert_abs_diff_eq!(c.rhs, 2.0, epsilon = 1e-9);
}

#[test]
fn blaschke_body_of_a_triangle() {
    let t = Polytope::from_vertices(Dim::Two, &[v2(0.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0)]).unwrap();
    let nabla = blaschke_body(&t).unwrap();
    assert!(nabla.is_origin_symmetric(1e-12));
    assert_abs_diff_eq!(nabla.perimeter(), t.perimeter(), epsilon = 1e-12);
    // Same Blaschke measure, so the same convexification of half the boundary.
    let co = convexify_2d(&opaque_core::scenarios::half_boundary(&t).unwrap()).unwrap();
    assert!(co.vertex_hausdorff(&nabla) < 1e-12);
    let m = blaschke_measure(&t).unwrap();
    assert_eq!(m.atoms().len(), 6);
}

#[test]
fn spatial_box_from_scattered_squares() {
    // Unit squares with normals e₁, e₂, e₃, each split in two triangles and
    // placed anywhere: S*(B) puts weight 1 on ±e_i, so co(B) is the unit cube.
    let mut tris = Vec::new();
    let shifts = [Vec3::new(3.0, 0.0, 1.0), Vec3::new(-2.0, 5.0, 0.0), Vec3::new(0.5, -1.0, 7.0)];
    for (axis, shift) in shifts.iter().enumerate() {
        let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
        let corner = |s: f64, t: f64| {
            let mut p = Vec3::zeros();
            p[a] = s;
            p[b] = t;
            p + shift
        };
        tris.push([corner(0.0, 0.0), corner(1.0, 0.0), corner(1.0, 1.0)]);
        tris.push([corner(0.0, 0.0), corner(1.0, 1.0), corner(0.0, 1.0)]);
    }
    let co = convexify(&Barrier::from_triangles(&tris).unwrap()).unwrap();
    assert!(co.vertex_hausdorff(&Polytope::unit_cube(Dim::Three)) < 1e-6);
    assert!(convexify(&Barrier::from_triangles(&tris[..1]).unwrap()).is_err());
}

#[test]
fn emitted_json_parses_back_to_the_same_object() {
    let mut rng = samples::rng(31);
    for dim in [Dim::Two, Dim::Three] {
        for m in 4..10 {
            let p = samples::polytope(&mut rng, dim, m);
            let text = polytope_json(&p);
            let a: PolytopeJson = serde_json::from_str(&text).unwrap();
            assert_eq!(a, PolytopeJson::from_polytope(&p));
            assert_eq!(serde_json::to_string_pretty(&a).unwrap(), text);
            // Loading keeps the vertices bit for bit; facets are recomputed.
            let again = parse_polytope(&text).unwrap();
            assert_eq!(again.vertices().len(), p.vertices().len());
            assert!(again.vertices().iter().all(|v| p.vertices().contains(v)));
        }
    }
    let b = parse_barrier(r#"{"dim":2,"segments":[[[0.1,0.2],[0.3,0.4]]]}"#).unwrap();
    assert_eq!(b.pieces().len(), 1);
}
