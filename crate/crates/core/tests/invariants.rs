//! Seeded sweeps over the stated invariants of each module.

use alhazen::metric::{ray_monotonicity_violation, s_disk};
use alhazen::numerics::{aberth_roots, quadratic_roots, solve_polynomial};
use alhazen::reflect::{
    check_reflection, ellipse_radius, focal_sum, solve_interior, ReflectionKind,
};
use alhazen::sample::Sampler;
use alhazen::verify::conic_properties;
use alhazen::{Complex, Polynomial, Tolerances};

fn unit_square(sampler: &mut Sampler) -> Complex {
    Complex::new(sampler.uniform(-1.0, 1.0), sampler.uniform(-1.0, 1.0))
}

#[test]
fn random_quartics_reexpand_to_their_coefficients() {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(1);
    for _ in 0..1000 {
        let coeffs: Vec<Complex> = (0..5).map(|_| unit_square(&mut sampler)).collect();
        let p = Polynomial::new(coeffs.clone());
        let roots = solve_polynomial(&p, &tol).unwrap();
        let pairs: Vec<(Complex, usize)> = roots
            .roots()
            .iter()
            .map(|r| (r.value, r.multiplicity))
            .collect();
        let back = Polynomial::from_roots(coeffs[4], &pairs);
        let scale = p.max_modulus();
        for (a, b) in back.coeffs().iter().zip(&coeffs) {
            assert!(
                (a - b).norm() <= 1e-8 * scale,
                "{coeffs:?}: {:?}",
                back.coeffs()
            );
        }
        assert_eq!(solve_polynomial(&p, &tol).unwrap(), roots, "determinism");
    }
}

#[test]
fn quadratic_formula_matches_iteration() {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(2);
    for _ in 0..1000 {
        let (a, b, c) = (
            unit_square(&mut sampler),
            unit_square(&mut sampler),
            unit_square(&mut sampler),
        );
        let closed = quadratic_roots(a, b, c);
        let iterated = aberth_roots(&Polynomial::new(vec![c, b, a]), &tol).unwrap();
        for z in closed {
            let nearest = iterated
                .iter()
                .map(|w| (w - z).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(
                nearest <= 1e-12 * (1.0 + z.norm()),
                "{a} {b} {c}: {z} vs {iterated:?}"
            );
        }
    }
}

#[test]
fn interior_solution_is_swap_symmetric() {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(3);
    for _ in 0..1000 {
        let (z1, z2) = sampler.interior_pair();
        let a = solve_interior(z1, z2, &tol).unwrap();
        let b = solve_interior(z2, z1, &tol).unwrap();
        assert!((a.path_length - b.path_length).abs() <= 1e-12, "{z1} {z2}");
        assert!((a.path_length - focal_sum(z1, z2, a.u)).abs() <= 1e-12);
        assert!((a.ellipse_radius - a.path_length).abs() <= 1e-9);
        assert!((a.u.norm() - 1.0).abs() <= tol.unimodular_eps);
    }
}

#[test]
fn ellipse_radius_is_focal_sum_at_reflection_points() {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(4);
    for _ in 0..1000 {
        let (z1, z2) = sampler.interior_pair();
        let sol = solve_interior(z1, z2, &tol).unwrap();
        for root in sol.roots.unimodular() {
            let u = root.value;
            if check_reflection(z1, z2, u).unwrap().kind != ReflectionKind::Equal {
                continue;
            }
            let r = ellipse_radius(z1, z2, u, &tol).unwrap();
            assert!((r - focal_sum(z1, z2, u)).abs() <= 1e-9, "{z1} {z2} {u}");
        }
    }
}

#[test]
fn metric_separates_points_and_obeys_triangle_inequality() {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(5);
    let s = |a, b| s_disk(a, b, &tol).unwrap().result;
    for _ in 0..10_000 {
        let (a, b, c) = (
            sampler.interior_point(),
            sampler.interior_point(),
            sampler.interior_point(),
        );
        assert!(s(a, c) <= s(a, b) + s(b, c) + 1e-12, "{a} {b} {c}");
        assert_eq!(s(a, a), 0.0);
        assert!(s(a, b) > 0.0);
    }
}

#[test]
fn metric_is_monotone_along_rays() {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(6);
    for _ in 0..100 {
        let c = sampler.uniform(0.0, 0.95);
        let theta = sampler.uniform(-std::f64::consts::PI, std::f64::consts::PI);
        let violation = ray_monotonicity_violation(c, theta, 1000, &tol).unwrap();
        assert!(
            violation.is_none(),
            "c = {c}, theta = {theta}: {violation:?}"
        );
    }
}

#[test]
fn conic_properties_hold() {
    let report = conic_properties(7, 2000);
    assert!(report.passed(), "{}", report.summary());
}
