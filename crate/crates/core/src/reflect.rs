//! Reflection in the unit circle.
//!
//! A ray from `z1` reflected at `u ∈ ∂D` passes through `z2` exactly when the
//! oriented angles `∠(z1, u, 0)` and `∠(0, u, z2)` agree. Every such `u` is a
//! root of the self-inversive quartic
//!
//! ```text
//! conj(z1 z2) u⁴ − conj(z1 + z2) u³ + (z1 + z2) u − z1 z2 = 0
//! ```
//!
//! which serves both the interior problem (both points inside the disk) and the
//! exterior one (both outside, with the segment between them missing the disk).
//! Among the unimodular roots, the one minimising `|z1 − u| + |z2 − u|` is the
//! point where the largest confocal ellipse inside the disk touches the circle.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{
    is_finite, is_unimodular, quadratic_roots, solve_polynomial, Complex, Polynomial, RootSet,
    Tolerances,
};

/// Relative tolerance on the angle-condition residual.
pub const REFLECTION_EPS: f64 = 1e-9;

/// Relative tolerance used to recognise the special configurations of
/// [`closed_form`].
pub const CLOSED_FORM_EPS: f64 = 1e-12;

/// Relative slack under which two focal sums are considered tied.
pub const TIE_EPS: f64 = 1e-9;

/// The quartic whose unimodular roots are the reflection points for `z1, z2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlhazenQuartic {
    pub z1: Complex,
    pub z2: Complex,
    pub poly: Polynomial,
}

impl AlhazenQuartic {
    /// `conj(c0) == -c4` and `conj(c1) == -c3`, with `c2 == 0`.
    pub fn is_self_inversive(&self) -> bool {
        let c = self.poly.coeffs();
        c[2] == Complex::new(0.0, 0.0) && c[0].conj() == -c[4] && c[1].conj() == -c[3]
    }
}

pub fn build_quartic(z1: Complex, z2: Complex) -> Result<AlhazenQuartic> {
    if !is_finite(z1) || !is_finite(z2) {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    let zero = Complex::new(0.0, 0.0);
    if z1 == zero && z2 == zero {
        return Err(Error::Degenerate("both foci at center".into()));
    }
    let product = z1 * z2;
    let sum = z1 + z2;
    let poly = Polynomial::new(vec![-product, sum, zero, -sum.conj(), product.conj()]);
    Ok(AlhazenQuartic { z1, z2, poly })
}

/// Radian measure in `(−π, π]` of the angle from ray `[u, z]` to ray `[u, w]`.
pub fn oriented_angle(z: Complex, u: Complex, w: Complex) -> Result<f64> {
    if u == z || u == w {
        return Err(Error::UndefinedAngle);
    }
    let angle = ((w - u) / (z - u)).arg();
    Ok(if angle <= -PI { PI } else { angle })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflectionKind {
    /// Angle of incidence equals angle of reflection.
    Equal,
    /// The two oriented angles differ by exactly π.
    Antipodal,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReflectionCheck {
    pub kind: ReflectionKind,
    /// `|E|`, the absolute residual of the cubic angle identity.
    pub residual: f64,
    /// `|E|` divided by the sum of the moduli of its four terms.
    pub relative_residual: f64,
    /// The real quantity whose sign separates `Equal` from `Antipodal`.
    pub sign_term: f64,
}

/// Tests the angle condition at `u` in its polynomial form:
///
/// ```text
/// E = conj(z1 z2) u² − conj(z1+z2) ū u² + (z1+z2) ū² u − z1 z2 ū²  = 0
/// F = conj(z1 z2) u² − conj(z1+z2) ū u² − (z1+z2) ū² u + z1 z2 ū² + 2 u² ū²  > 0
/// ```
pub fn check_reflection(z1: Complex, z2: Complex, u: Complex) -> Result<ReflectionCheck> {
    let zero = Complex::new(0.0, 0.0);
    if u == zero || u == z1 || u == z2 {
        return Err(Error::InvalidInput(
            "reflection point coincides with 0, z1 or z2".into(),
        ));
    }
    let ub = u.conj();
    let terms = [
        (z1 * z2).conj() * u * u,
        (z1 + z2).conj() * ub * u * u,
        (z1 + z2) * ub * ub * u,
        z1 * z2 * ub * ub,
    ];
    let e = terms[0] - terms[1] + terms[2] - terms[3];
    let f = terms[0] - terms[1] - terms[2] + terms[3] + u * u * ub * ub * 2.0;
    let scale: f64 = terms.iter().map(|t| t.norm()).sum();
    let residual = e.norm();
    let relative_residual = if scale == 0.0 { 0.0 } else { residual / scale };
    let kind = if relative_residual > REFLECTION_EPS {
        ReflectionKind::Neither
    } else if f.re > 0.0 {
        ReflectionKind::Equal
    } else if f.re < 0.0 {
        ReflectionKind::Antipodal
    } else {
        ReflectionKind::Neither
    };
    Ok(ReflectionCheck {
        kind,
        residual,
        relative_residual,
        sign_term: f.re,
    })
}

#[inline]
pub fn focal_sum(z1: Complex, z2: Complex, u: Complex) -> f64 {
    (z1 - u).norm() + (z2 - u).norm()
}

/// `|2 − ū z1 − u z̄2|`, the focal sum of the ellipse tangent to the circle at `u`.
pub fn ellipse_radius(z1: Complex, z2: Complex, u: Complex, tol: &Tolerances) -> Result<f64> {
    if !is_unimodular(u, tol.unimodular_eps) {
        return Err(Error::InvalidInput(
            "point is not on the unit circle".into(),
        ));
    }
    Ok((Complex::new(2.0, 0.0) - u.conj() * z1 - u * z2.conj()).norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Interior,
    Exterior,
    /// Both points outside the disk but the segment joining them meets it.
    ExteriorBlocked,
}

impl ProblemKind {
    /// `None` when the points straddle or touch the circle.
    pub fn of(z1: Complex, z2: Complex) -> Option<ProblemKind> {
        let (r1, r2) = (z1.norm(), z2.norm());
        if r1 < 1.0 && r2 < 1.0 {
            Some(ProblemKind::Interior)
        } else if r1 > 1.0 && r2 > 1.0 {
            let blocked = z1 != z2 && segment_meets_disk(z1, z2).is_ok_and(|s| s.blocked);
            Some(if blocked {
                ProblemKind::ExteriorBlocked
            } else {
                ProblemKind::Exterior
            })
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionSolution {
    pub kind: ProblemKind,
    pub z1: Complex,
    pub z2: Complex,
    pub roots: RootSet,
    /// Canonical minimiser: largest real part among the tied minimisers, then
    /// largest imaginary part.
    pub u: Complex,
    pub path_length: f64,
    pub ellipse_radius: f64,
    pub all_minimizers: Vec<Complex>,
    pub maximizer: Complex,
}

pub fn solve_interior(z1: Complex, z2: Complex, tol: &Tolerances) -> Result<ReflectionSolution> {
    if !is_finite(z1) || !is_finite(z2) {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    if z1.norm() >= 1.0 || z2.norm() >= 1.0 {
        return Err(Error::Domain(
            "points must lie in the open unit disk".into(),
        ));
    }
    solve_on_circle(ProblemKind::Interior, z1, z2, tol)
}

pub fn solve_exterior(z1: Complex, z2: Complex, tol: &Tolerances) -> Result<ReflectionSolution> {
    if !is_finite(z1) || !is_finite(z2) {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    if z1.norm() <= 1.0 || z2.norm() <= 1.0 {
        return Err(Error::Domain(
            "points must lie outside the closed unit disk".into(),
        ));
    }
    // A single exterior point never crosses the mirror.
    if z1 != z2 && segment_meets_disk(z1, z2)?.blocked {
        return Err(Error::Domain(
            "segment crosses mirror: direct path exists".into(),
        ));
    }
    solve_on_circle(ProblemKind::Exterior, z1, z2, tol)
}

fn solve_on_circle(
    kind: ProblemKind,
    z1: Complex,
    z2: Complex,
    tol: &Tolerances,
) -> Result<ReflectionSolution> {
    let quartic = build_quartic(z1, z2)?;
    let roots = solve_polynomial(&quartic.poly, tol)?;
    let candidates: Vec<(Complex, f64)> = roots
        .unimodular()
        .map(|r| (r.value, focal_sum(z1, z2, r.value)))
        .collect();
    if candidates.len() < 2 {
        return Err(Error::NumericalFailure(format!(
            "fewer than two unimodular roots ({} found)",
            candidates.len()
        )));
    }

    let min = candidates.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let max = candidates
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut all_minimizers: Vec<Complex> = candidates
        .iter()
        .filter(|c| c.1 <= min + TIE_EPS * (1.0 + min))
        .map(|c| c.0)
        .collect();
    all_minimizers.sort_by(|a, b| canonical_order(*a, *b));
    let u = all_minimizers[0];
    let maximizer = candidates
        .iter()
        .filter(|c| c.1 >= max - TIE_EPS * (1.0 + max))
        .map(|c| c.0)
        .min_by(|a, b| canonical_order(*a, *b))
        .expect("non-empty candidate list");

    for &m in &all_minimizers {
        let check = check_reflection(z1, z2, m)?;
        if check.kind != ReflectionKind::Equal {
            return Err(Error::NumericalFailure(format!(
                "minimising root {m} fails the reflection law ({:?})",
                check.kind
            )));
        }
    }

    Ok(ReflectionSolution {
        kind,
        z1,
        z2,
        path_length: focal_sum(z1, z2, u),
        ellipse_radius: ellipse_radius(z1, z2, u, tol)?,
        roots,
        u,
        all_minimizers,
        maximizer,
    })
}

/// Larger real part first, then larger imaginary part.
fn canonical_order(a: Complex, b: Complex) -> std::cmp::Ordering {
    b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    /// Exactly one point at the origin; the quartic is a cubic.
    OneAtCenter,
    /// `z1 + z2 = 0`.
    Opposite,
    /// `z1 = z2 ≠ 0`.
    Coincident,
    /// `|z1| = |z2| ≠ 0`.
    EqualModulus,
    /// `z1 = t z2` with real `t`.
    Collinear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub case: SpecialCase,
    /// Roots with multiplicity.
    pub roots: Vec<Complex>,
    /// `s_D(z1, z2)` when the case has a closed form for it and both points are interior.
    pub s_value: Option<f64>,
}

/// Explicit roots for the special configurations, tried in the order of
/// [`SpecialCase`]; `None` in general position.
pub fn closed_form(z1: Complex, z2: Complex) -> Option<ClosedForm> {
    let zero = Complex::new(0.0, 0.0);
    let (r1, r2) = (z1.norm(), z2.norm());
    let interior = r1 < 1.0 && r2 < 1.0;
    let scale = r1 + r2;
    if z1 == zero && z2 == zero {
        return None;
    }

    if z1 == zero || z2 == zero {
        let z = if z1 == zero { z2 } else { z1 };
        let dir = z / z.norm();
        return Some(ClosedForm {
            case: SpecialCase::OneAtCenter,
            roots: vec![zero, dir, -dir],
            s_value: interior.then(|| z.norm() / (2.0 - z.norm())),
        });
    }

    if (z1 + z2).norm() <= CLOSED_FORM_EPS * scale {
        let dir = z1 / r1;
        let i = Complex::new(0.0, 1.0);
        return Some(ClosedForm {
            case: SpecialCase::Opposite,
            roots: vec![dir, -dir, i * dir, -i * dir],
            s_value: interior.then_some(r1),
        });
    }

    if (z1 - z2).norm() <= CLOSED_FORM_EPS * scale {
        let z = z1;
        let r = z.norm();
        let dir = z / r;
        let inner = if r < 1.0 {
            Complex::new((1.0 - r * r).sqrt(), 0.0)
        } else {
            Complex::new(0.0, (r * r - 1.0).sqrt())
        };
        let one = Complex::new(1.0, 0.0);
        return Some(ClosedForm {
            case: SpecialCase::Coincident,
            roots: vec![
                dir,
                -dir,
                (one + inner) / z.conj(),
                (one - inner) / z.conj(),
            ],
            s_value: interior.then_some(0.0),
        });
    }

    if (r1 - r2).abs() <= CLOSED_FORM_EPS * r1.max(r2) {
        // Rotate so that z1 = ρ e^{-iα}, z2 = ρ e^{iα}; the quartic factors as
        // ρ²(u² − 1)(u² − (2 cos α / ρ) u + 1).
        let rho = 0.5 * (r1 + r2);
        let half = (z2 / z1).arg() / 2.0;
        let frame = Complex::from_polar(1.0, z1.arg() + half);
        let k = half.cos() / rho;
        let (a, b) = if k.abs() > 1.0 {
            let s = (k * k - 1.0).sqrt();
            (Complex::new(k + s, 0.0), Complex::new(k - s, 0.0))
        } else {
            let s = (1.0 - k * k).sqrt();
            (Complex::new(k, s), Complex::new(k, -s))
        };
        return Some(ClosedForm {
            case: SpecialCase::EqualModulus,
            roots: vec![frame, -frame, frame * a, frame * b],
            s_value: None,
        });
    }

    if (z1 * z2.conj()).im.abs() <= CLOSED_FORM_EPS * r1 * r2 {
        let z = z2;
        let t = (z1 * z2.conj()).re / (r2 * r2);
        let dir = z / r2;
        let [a, b] = quadratic_roots(z.conj() * t, Complex::new(-(1.0 + t), 0.0), z * t);
        return Some(ClosedForm {
            case: SpecialCase::Collinear,
            roots: vec![dir, -dir, a, b],
            s_value: None,
        });
    }

    None
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentTest {
    /// The closed segment `[z1, z2]` meets the closed unit disk.
    pub blocked: bool,
    /// Distance from the origin to the line through `z1` and `z2`.
    pub line_distance: f64,
}

pub fn segment_meets_disk(z1: Complex, z2: Complex) -> Result<SegmentTest> {
    if z1 == z2 {
        return Err(Error::InvalidInput("segment endpoints coincide".into()));
    }
    let d = z2 - z1;
    let line_distance = (z1.conj() * z2 - z1 * z2.conj()).norm() / (2.0 * d.norm());
    let t = (-(z1 * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    let closest = z1 + d * t;
    Ok(SegmentTest {
        blocked: closest.norm() <= 1.0,
        line_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::focal_sum_minimum_oracle;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn quartic_coefficients_by_substitution() {
        let q = build_quartic(c(0.5, 0.0), c(0.5, 0.0)).unwrap();
        let expect = [-0.25, 1.0, 0.0, -1.0, 0.25];
        for (a, e) in q.poly.coeffs().iter().zip(expect) {
            assert_eq!(*a, c(e, 0.0));
        }
        assert!(q.is_self_inversive());

        let q = build_quartic(c(0.5, 0.5), c(0.5, -0.5)).unwrap();
        let expect = [-0.5, 1.0, 0.0, -1.0, 0.5];
        for (a, e) in q.poly.coeffs().iter().zip(expect) {
            assert_abs_diff_eq!(a.re, e, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn one_focus_at_center_gives_cubic() {
        let q = build_quartic(c(0.3, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(q.poly.effective_degree(1e-14), Some(3));
        let roots = solve_polynomial(&q.poly, &tol()).unwrap();
        let mut values = roots.expanded();
        values.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert_abs_diff_eq!(values[0].re, -1.0, epsilon = 1e-15);
        assert_eq!(values[1], c(0.0, 0.0));
        assert_abs_diff_eq!(values[2].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn both_foci_at_center_rejected() {
        assert!(matches!(
            build_quartic(c(0.0, 0.0), c(0.0, 0.0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn oriented_angle_examples() {
        assert_abs_diff_eq!(
            oriented_angle(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)).unwrap(),
            FRAC_PI_2
        );
        assert_abs_diff_eq!(
            oriented_angle(c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap(),
            -FRAC_PI_2
        );
        assert_eq!(
            oriented_angle(c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
            PI
        );
        // -π from atan2 maps onto π.
        assert_eq!(
            oriented_angle(c(2.0, 0.0), c(1.0, 0.0), c(0.0, -0.0)).unwrap(),
            PI
        );
        assert_eq!(
            oriented_angle(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::UndefinedAngle)
        );
    }

    #[test]
    fn reflection_check_examples() {
        let kind = |z1, z2, u| check_reflection(z1, z2, u).unwrap().kind;
        // |z1| = |z2|: the bisector direction e^{iπ/4} is a reflection point.
        assert_eq!(
            kind(
                c(0.5, 0.0),
                c(0.0, 0.5),
                Complex::from_polar(1.0, FRAC_PI_4)
            ),
            ReflectionKind::Equal
        );
        assert_eq!(
            kind(c(0.5, 0.0), c(0.0, 0.5), Complex::from_polar(1.0, PI / 8.0)),
            ReflectionKind::Neither
        );
        assert_eq!(
            kind(c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0)),
            ReflectionKind::Equal
        );
        let at_i = check_reflection(c(0.5, 0.0), c(0.5, 0.0), c(0.0, 1.0)).unwrap();
        assert_eq!(at_i.kind, ReflectionKind::Neither);
        // E = 0.25(-1) - i + (-i) - 0.25(-1) = -2i
        assert_abs_diff_eq!(at_i.residual, 2.0, epsilon = 1e-15);
        assert!(check_reflection(c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)).is_err());
        assert!(check_reflection(c(0.5, 0.0), c(0.2, 0.0), c(0.5, 0.0)).is_err());
    }

    #[test]
    fn antipodal_case_agrees_with_angles() {
        // u = 1 with z1 = 2, z2 = -1 + 1e-3i is close; take exact collinear z's instead:
        // z1 = 2, z2 = 0.5: at u = 1 the angles are π and 0.
        let u = c(1.0, 0.0);
        let (z1, z2) = (c(2.0, 0.0), c(0.5, 0.0));
        let a = oriented_angle(z1, u, c(0.0, 0.0)).unwrap();
        let b = oriented_angle(c(0.0, 0.0), u, z2).unwrap();
        assert_abs_diff_eq!((a - b).abs(), PI, epsilon = 1e-15);
        assert_eq!(
            check_reflection(z1, z2, u).unwrap().kind,
            ReflectionKind::Antipodal
        );
    }

    #[test]
    fn interior_opposite_points_tie() {
        let s = solve_interior(c(0.4, 0.0), c(-0.4, 0.0), &tol()).unwrap();
        assert_eq!(s.all_minimizers.len(), 2);
        assert_abs_diff_eq!(s.u.re, 1.0, epsilon = 1e-14);
        assert!(s
            .all_minimizers
            .iter()
            .any(|m| (m - c(-1.0, 0.0)).norm() < 1e-14));
        assert_abs_diff_eq!(s.path_length, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            focal_sum(s.z1, s.z2, s.maximizer),
            2.0 * (1.16f64).sqrt(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(s.maximizer.re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn interior_triple_root_configuration() {
        let s = solve_interior(c(0.5, 0.5), c(0.5, -0.5), &tol()).unwrap();
        assert_abs_diff_eq!(s.u.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.u.im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.path_length, SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(s.ellipse_radius, SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn interior_matches_brute_force() {
        let (z1, z2) = (c(0.5, 0.5), c(0.0, -0.8));
        let s = solve_interior(z1, z2, &tol()).unwrap();
        let (t, min) = focal_sum_minimum_oracle(z1, z2, 1_000_000);
        assert_abs_diff_eq!(s.path_length, min, epsilon = 1e-12);
        assert!((s.u - Complex::from_polar(1.0, t)).norm() < 1e-6);
        assert_eq!(s.roots.unimodular_count(), 4);
    }

    #[test]
    fn coincident_interior_points() {
        let z = c(0.3, 0.4);
        let s = solve_interior(z, z, &tol()).unwrap();
        assert!((s.u - z / z.norm()).norm() < 1e-14);
        assert_abs_diff_eq!(s.path_length, 2.0 * (1.0 - z.norm()), epsilon = 1e-14);
    }

    #[test]
    fn interior_domain_errors() {
        assert!(matches!(
            solve_interior(c(1.0, 0.0), c(0.1, 0.0), &tol()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve_interior(c(0.0, 0.0), c(0.0, 0.0), &tol()),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn ellipse_radius_examples() {
        let t = tol();
        assert_abs_diff_eq!(
            ellipse_radius(c(0.5, 0.0), c(-0.5, 0.0), c(1.0, 0.0), &t).unwrap(),
            2.0
        );
        assert_abs_diff_eq!(
            ellipse_radius(c(0.0, 0.0), c(0.3, 0.0), c(1.0, 0.0), &t).unwrap(),
            1.7,
            epsilon = 1e-15
        );
        let (z1, z2, u) = (c(0.5, 0.5), c(0.5, -0.5), c(1.0, 0.0));
        assert_abs_diff_eq!(
            ellipse_radius(z1, z2, u, &t).unwrap(),
            focal_sum(z1, z2, u),
            epsilon = 1e-15
        );
        assert!(ellipse_radius(z1, z2, c(1.1, 0.0), &t).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let cf = closed_form(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert_eq!(cf.case, SpecialCase::OneAtCenter);
        assert_abs_diff_eq!(cf.s_value.unwrap(), 1.0 / 3.0, epsilon = 1e-16);

        let cf = closed_form(c(0.0, 0.3), c(0.0, -0.3)).unwrap();
        assert_eq!(cf.case, SpecialCase::Opposite);
        assert_abs_diff_eq!(cf.s_value.unwrap(), 0.3);
        for z in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
            assert!(cf.roots.iter().any(|r| (r - z).norm() < 1e-15));
        }

        let (z1, z2) = (
            Complex::from_polar(0.8, -PI / 3.0),
            Complex::from_polar(0.8, PI / 3.0),
        );
        let cf = closed_form(z1, z2).unwrap();
        assert_eq!(cf.case, SpecialCase::EqualModulus);
        let s = (1.0f64 - 0.625 * 0.625).sqrt();
        for z in [c(1.0, 0.0), c(-1.0, 0.0), c(0.625, s), c(0.625, -s)] {
            assert!(cf.roots.iter().any(|r| (r - z).norm() < 1e-14), "{z}");
        }

        assert_eq!(
            closed_form(c(0.3, 0.1), c(0.3, 0.1)).unwrap().case,
            SpecialCase::Coincident
        );
        assert_eq!(
            closed_form(c(0.2, 0.1), c(-0.6, -0.3)).unwrap().case,
            SpecialCase::Collinear
        );
        assert!(closed_form(c(0.5, 0.5), c(0.0, -0.8)).is_none());
    }

    #[test]
    fn closed_form_roots_are_quartic_roots() {
        let cases = [
            (c(0.0, 0.0), c(-0.4, 0.7)),
            (c(0.3, -0.2), c(-0.3, 0.2)),
            (c(0.6, 0.1), c(0.6, 0.1)),
            (c(1.6, 0.1), c(1.6, 0.1)),
            (Complex::from_polar(0.7, 0.3), Complex::from_polar(0.7, 2.0)),
            (c(0.2, 0.1), c(-0.6, -0.3)),
            (c(1.5, 1.0), c(3.0, 2.0)),
        ];
        for (z1, z2) in cases {
            let cf = closed_form(z1, z2).unwrap();
            let q = build_quartic(z1, z2).unwrap();
            for r in &cf.roots {
                assert!(
                    q.poly.relative_residual(*r) < 1e-13,
                    "{:?} root {r} residual {}",
                    cf.case,
                    q.poly.relative_residual(*r)
                );
            }
        }
    }

    #[test]
    fn segment_examples() {
        let s = segment_meets_disk(c(2.0, 0.0), c(-2.0, 0.0)).unwrap();
        assert!(s.blocked);
        assert_eq!(s.line_distance, 0.0);

        let s = segment_meets_disk(c(2.0, 0.0), c(0.0, 2.0)).unwrap();
        assert!(!s.blocked);
        assert_abs_diff_eq!(s.line_distance, SQRT_2, epsilon = 1e-15);

        let s = segment_meets_disk(c(2.0, 0.0), c(100.0, 0.5)).unwrap();
        assert!(s.line_distance < 1.0);
        assert!(!s.blocked);

        assert!(segment_meets_disk(c(2.0, 0.0), c(2.0, 0.0)).is_err());
    }

    #[test]
    fn exterior_examples() {
        let s = solve_exterior(c(2.0, 0.0), c(0.0, 2.0), &tol()).unwrap();
        assert!((s.u - Complex::from_polar(1.0, FRAC_PI_4)).norm() < 1e-14);
        assert_eq!(s.roots.unimodular().count(), 4);

        let s = solve_exterior(c(3.0, 0.0), c(3.0, 0.0), &tol()).unwrap();
        assert_eq!(s.roots.unimodular().count(), 4);
        let r8 = 8f64.sqrt();
        for z in [c(1.0 / 3.0, r8 / 3.0), c(1.0 / 3.0, -r8 / 3.0)] {
            assert!(s.roots.roots().iter().any(|r| (r.value - z).norm() < 1e-13));
        }
        assert!((s.u - c(1.0, 0.0)).norm() < 1e-14);

        let (z1, z2) = (c(2.5, 0.0), c(-1.2, 2.1));
        let s = solve_exterior(z1, z2, &tol()).unwrap();
        assert_eq!(s.roots.unimodular().count(), 4);
        let (_, min) = focal_sum_minimum_oracle(z1, z2, 1_000_000);
        assert_abs_diff_eq!(s.path_length, min, epsilon = 1e-12);
        assert_abs_diff_eq!(s.ellipse_radius, s.path_length, epsilon = 1e-12);
    }

    #[test]
    fn exterior_errors() {
        assert!(matches!(
            solve_exterior(c(2.0, 0.0), c(-2.0, 0.0), &tol()),
            Err(Error::Domain(m)) if m.contains("segment crosses mirror")
        ));
        assert!(matches!(
            solve_exterior(c(0.5, 0.0), c(2.0, 0.0), &tol()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn problem_kind_detection() {
        assert_eq!(
            ProblemKind::of(c(0.1, 0.0), c(0.2, 0.3)),
            Some(ProblemKind::Interior)
        );
        assert_eq!(
            ProblemKind::of(c(2.0, 0.0), c(0.0, 2.0)),
            Some(ProblemKind::Exterior)
        );
        assert_eq!(
            ProblemKind::of(c(2.0, 0.0), c(-2.0, 0.0)),
            Some(ProblemKind::ExteriorBlocked)
        );
        assert_eq!(ProblemKind::of(c(0.5, 0.0), c(2.0, 0.0)), None);
    }
}
