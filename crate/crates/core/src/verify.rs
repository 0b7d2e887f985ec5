//! Randomised invariant suites over the whole crate.
//!
//! Each suite draws its own configurations from a seeded [`Sampler`] and
//! reports the number of cases, the failures and the worst observed error.

use std::f64::consts::{PI, SQRT_2, TAU};

use crate::classify::{
    profile_roots, triple_root_locus, LocusBranch, Prediction, RootPattern, RootProfile,
};
use crate::conic::{
    anchor_points, build_conic, circumcenter, conic_circle_intersections, hausdorff_distance,
    orthocenter, orthocenter_origin_triangle, ConicKind,
};
use crate::metric::{
    ball_poly_at_center, ball_poly_at_zero_radius, level_set, s_disk, s_disk_oracle_on, BallCurve,
    CircleGrid,
};
use crate::numerics::{multiplicity_residual, Complex, Tolerances};
use crate::reflect::{
    build_quartic, check_reflection, solve_exterior, solve_interior, ReflectionKind,
};
use crate::sample::Sampler;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest error seen, in the units of `bound`.
    pub worst: f64,
    pub bound: f64,
    /// First failing case, if any.
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str, bound: f64) -> Self {
        SuiteReport {
            name,
            cases: 0,
            failures: 0,
            worst: 0.0,
            bound,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    /// Records an error against the bound.
    fn measure(&mut self, error: f64, context: impl FnOnce() -> String) {
        self.cases += 1;
        if error > self.worst || error.is_nan() {
            self.worst = error;
        }
        if error.is_nan() || error > self.bound {
            self.fail(context);
        }
    }

    /// Records a pass/fail case without a numeric error.
    fn check(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(context);
        }
    }

    fn fail(&mut self, context: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(context());
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.cases += other.cases;
        self.failures += other.failures;
        self.worst = self.worst.max(other.worst);
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {}: {} cases, {} failures, worst {:.3e} (bound {:.0e})",
            self.name, self.cases, self.failures, self.worst, self.bound
        );
        if let Some(f) = &self.first_failure {
            line.push_str(&format!("; first failure: {f}"));
        }
        line
    }
}

/// `s_D(0, z) = |z|/(2 − |z|)` and `s_D(z, −z) = |z|`, both for the solver and
/// for the brute-force supremum on a coarse refined grid.
pub fn closed_forms(seed: u64, n: usize) -> SuiteReport {
    let tol = Tolerances::default();
    let grid = CircleGrid::new(4096);
    let mut sampler = Sampler::new(seed);
    let mut report = SuiteReport::new("closed forms", 1e-12);
    let zero = Complex::new(0.0, 0.0);
    for _ in 0..n {
        let z = sampler.interior_point();
        let r = z.norm();
        for (a, b, expect) in [(zero, z, r / (2.0 - r)), (z, -z, r)] {
            let got = s_disk(a, b, &tol).map(|q| q.result).unwrap_or(f64::NAN);
            let brute = s_disk_oracle_on(&grid, a, b);
            let err = (got - expect).abs().max((brute - expect).abs());
            report.measure(err, || {
                format!("s({a}, {b}) = {got}, oracle {brute}, expected {expect}")
            });
        }
    }
    report
}

pub fn oracle_equivalence(seed: u64, n: usize, grid_points: usize) -> SuiteReport {
    let tol = Tolerances::default();
    let grid = CircleGrid::new(grid_points);
    let mut sampler = Sampler::new(seed);
    let mut report = SuiteReport::new("solver vs oracle", 1e-8);
    for _ in 0..n {
        let (z1, z2) = sampler.interior_pair();
        let oracle = s_disk_oracle_on(&grid, z1, z2);
        let got = s_disk(z1, z2, &tol).map(|q| q.result).unwrap_or(f64::NAN);
        report.measure((got - oracle).abs(), || {
            format!("({z1}, {z2}): {got} vs {oracle}")
        });
    }
    report
}

pub fn unimodular_floor(seed: u64, n: usize) -> SuiteReport {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(seed);
    let mut report = SuiteReport::new("at least two unimodular roots", 0.0);
    for _ in 0..n {
        let (z1, z2) = sampler.pair();
        let count = profile_roots(z1, z2, &tol).map_or(0, |p| p.count_unimodular);
        report.check(count >= 2, || format!("({z1}, {z2}) has {count}"));
    }
    report
}

pub fn reflection_law(seed: u64, n_interior: usize, n_exterior: usize) -> SuiteReport {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(seed);
    let mut report = SuiteReport::new("reflection law at minimisers", 1e-9);
    let mut run = |z1: Complex,
                   z2: Complex,
                   solved: crate::Result<crate::reflect::ReflectionSolution>| {
        match solved {
            Ok(sol) => {
                for &u in &sol.all_minimizers {
                    match check_reflection(z1, z2, u) {
                        Ok(c) if c.kind == ReflectionKind::Equal => {
                            report.measure(c.relative_residual, || format!("({z1}, {z2}) at {u}"))
                        }
                        other => report.check(false, || format!("({z1}, {z2}) at {u}: {other:?}")),
                    }
                }
            }
            Err(e) => report.check(false, || format!("({z1}, {z2}): {e}")),
        }
    };
    for _ in 0..n_interior {
        let (z1, z2) = sampler.interior_pair();
        run(z1, z2, solve_interior(z1, z2, &tol));
    }
    for _ in 0..n_exterior {
        let (z1, z2) = sampler.exterior_pair();
        run(z1, z2, solve_exterior(z1, z2, &tol));
    }
    report
}

/// Unobstructed exterior pairs have four simple reflection points, found both
/// by the quartic and by the conic.
pub fn exterior_four(seed: u64, n: usize) -> SuiteReport {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(seed);
    let mut report = SuiteReport::new("exterior: four roots, quartic = conic", 1e-9);
    for _ in 0..n {
        let (z1, z2) = sampler.exterior_pair();
        let profile = profile_roots(z1, z2, &tol);
        let conic = conic_circle_intersections(z1, z2, &tol);
        match (profile, conic) {
            (Ok(p), Ok(points)) if p.pattern == RootPattern::FourSimple && points.len() == 4 => {
                let roots: Vec<Complex> = p.roots.unimodular().map(|r| r.value).collect();
                let d = hausdorff_distance(&roots, &points);
                report.measure(d, || format!("({z1}, {z2}) distance {d}"));
            }
            (p, c) => report.check(false, || {
                format!(
                    "({z1}, {z2}): pattern {:?}, {:?} conic points",
                    p.map(|p| p.pattern),
                    c.map(|c| c.len())
                )
            }),
        }
    }
    report
}

/// Pairs in the two predicted regimes: observed counts must match.
pub fn prediction_regimes(seed: u64, n_per_regime: usize) -> SuiteReport {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(seed);
    let mut report = SuiteReport::new("predicted root counts", 0.0);
    type Regime = (Prediction, fn(f64, f64) -> bool);
    let regimes: [Regime; 2] = [
        (Prediction::Four, |sum, product| sum < product),
        (Prediction::Two, |sum, product| sum > 2.0 * product),
    ];
    for (prediction, accept) in regimes {
        for _ in 0..n_per_regime {
            let (z1, z2) = sampler.pair_where(|a, b| accept((a + b).norm(), (a * b).norm()));
            match profile_roots(z1, z2, &tol) {
                Ok(p) => report.check(p.prediction == prediction && p.matches_prediction(), || {
                    format!(
                        "({z1}, {z2}): {:?} predicted, {:?} observed",
                        p.prediction, p.pattern
                    )
                }),
                Err(e) => report.check(false, || format!("({z1}, {z2}): {e}")),
            }
        }
    }
    report
}

/// Structural properties of root profiles over a large random sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileSweep {
    /// No two unimodular doubles, no double with two off-circle roots, and
    /// never fewer than two unimodular roots.
    pub exclusions: SuiteReport,
    /// Four simple ⇒ ratio < 2; exactly two simple ⇒ ratio > 1; a double
    /// root ⇒ 1 ≤ ratio ≤ 2.
    pub necessary_bounds: SuiteReport,
    /// Off-circle roots come in pairs `v, 1/v̄`.
    pub inversion_pairing: SuiteReport,
    /// Patterns observed, in the order of [`RootPattern`].
    pub pattern_counts: Vec<(RootPattern, usize)>,
}

fn bounds_hold(p: &RootProfile) -> bool {
    let slack = 1e-9;
    match p.pattern {
        RootPattern::FourSimple => p.ratio < 2.0 + slack,
        RootPattern::TwoSimpleTwoOff => p.ratio > 1.0 - slack,
        RootPattern::DoublePlusTwoSimple => p.ratio >= 1.0 - slack && p.ratio <= 2.0 + slack,
        RootPattern::TriplePlusSimple => (p.ratio - 2.0).abs() <= slack,
        _ => true,
    }
}

pub fn profile_sweep(seed: u64, n: usize) -> ProfileSweep {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(seed);
    let mut exclusions = SuiteReport::new("pattern exclusions", 0.0);
    let mut necessary_bounds = SuiteReport::new("necessary ratio bounds", 0.0);
    let mut inversion_pairing = SuiteReport::new("off-circle roots pair under inversion", 1e-9);
    let all = [
        RootPattern::FourSimple,
        RootPattern::TwoSimpleTwoOff,
        RootPattern::DoublePlusTwoSimple,
        RootPattern::TriplePlusSimple,
        RootPattern::Cubic,
        RootPattern::TwoDoubles,
        RootPattern::DoublePlusTwoOff,
        RootPattern::Degenerate,
    ];
    let mut counts = vec![0usize; all.len()];
    for _ in 0..n {
        let (z1, z2) = sampler.pair();
        let p = match profile_roots(z1, z2, &tol) {
            Ok(p) => p,
            Err(e) => {
                exclusions.check(false, || format!("({z1}, {z2}): {e}"));
                continue;
            }
        };
        counts[all.iter().position(|&k| k == p.pattern).expect("listed")] += 1;
        exclusions.check(p.pattern.is_permitted(), || {
            format!("({z1}, {z2}): {:?}", p.pattern)
        });
        necessary_bounds.check(bounds_hold(&p), || {
            format!("({z1}, {z2}): {:?} with ratio {}", p.pattern, p.ratio)
        });
        let defect = p.inversion_pairing_defect();
        inversion_pairing.measure(defect, || format!("({z1}, {z2}) defect {defect}"));
    }
    ProfileSweep {
        exclusions,
        necessary_bounds,
        inversion_pairing,
        pattern_counts: all.into_iter().zip(counts).collect(),
    }
}

/// Both families of triple-root pairs: root 1 three times, root −1 once,
/// with `P, P′, P″` vanishing at the triple root.
pub fn triple_locus(n: usize) -> SuiteReport {
    let tol = Tolerances::default();
    let mut report = SuiteReport::new("triple-root locus", 1e-6);
    let half = n / 2;
    let span = SQRT_2;
    let params = (0..half)
        .map(|k| {
            (
                LocusBranch::Real,
                -1.0 + span * (k as f64 + 0.5) / half as f64,
            )
        })
        .chain((0..n - half).map(|k| {
            (
                LocusBranch::Conjugate,
                TAU * (k as f64 + 0.5) / (n - half) as f64,
            )
        }));
    for (branch, param) in params {
        let context = || format!("{branch:?} {param}");
        let checked = triple_root_locus(branch, param).and_then(|(z1, z2)| {
            let p = profile_roots(z1, z2, &tol)?;
            let q = build_quartic(z1, z2)?;
            Ok((p, q))
        });
        let (p, q) = match checked {
            Ok(v) => v,
            Err(e) => {
                report.check(false, || format!("{}: {e}", context()));
                continue;
            }
        };
        let triple = p.roots.roots().iter().find(|r| r.multiplicity == 3);
        let simple = p.roots.roots().iter().find(|r| r.multiplicity == 1);
        match (p.pattern, triple, simple) {
            (RootPattern::TriplePlusSimple, Some(t), Some(s)) => {
                let err = multiplicity_residual(&q.poly, t.value, 3)
                    .max((t.value - 1.0).norm())
                    .max((s.value + 1.0).norm());
                report.measure(err, || format!("{} error {err}", context()));
            }
            _ => report.check(false, || format!("{}: {:?}", context(), p.pattern)),
        }
    }
    report
}

/// `z1 = 0.5 + 0.1k·i`, `z2 = 0.5`, `k = 1..5`: two roots on the circle, two off.
pub fn two_reflection_family() -> SuiteReport {
    let tol = Tolerances::default();
    let mut report = SuiteReport::new("two reflection points family", 0.0);
    for k in 1..=5 {
        let z1 = Complex::new(0.5, 0.1 * k as f64);
        let z2 = Complex::new(0.5, 0.0);
        let p = profile_roots(z1, z2, &tol);
        let ok = matches!(&p, Ok(p) if p.pattern == RootPattern::TwoSimpleTwoOff);
        report.check(ok, || format!("k = {k}: {:?}", p.map(|p| p.pattern)));
    }
    report
}

/// Ball-curve specialisations and level-set membership.
pub fn ball_curve(level_angles: usize) -> (SuiteReport, SuiteReport) {
    let mut special = SuiteReport::new("ball curve specialisations", 1e-10);
    let params = [0.05, 0.3, 0.6, 0.95];
    for i in 0..20 {
        for j in 0..20 {
            let w = Complex::new(-0.95 + 0.1 * i as f64, -0.95 + 0.1 * j as f64);
            for &p in &params {
                let at_zero = BallCurve::new(p, 0.0).expect("valid").eval(w);
                let expect = ball_poly_at_zero_radius(p, w);
                let err = (at_zero.value - expect).abs() / at_zero.scale.max(f64::MIN_POSITIVE);
                special.measure(err, || {
                    format!("c = {p}, w = {w}: {} vs {expect}", at_zero.value)
                });

                let at_center = BallCurve::new(0.0, p).expect("valid").eval(w);
                let expect = ball_poly_at_center(p, w);
                let err = (at_center.value - expect).abs() / at_center.scale.max(f64::MIN_POSITIVE);
                special.measure(err, || {
                    format!("t = {p}, w = {w}: {} vs {expect}", at_center.value)
                });
            }
        }
    }

    let tol = Tolerances::default();
    let mut membership = SuiteReport::new("level sets lie on the ball curve", 1e-6);
    for t in [0.1, 0.2, 0.3, 0.4, 0.6] {
        match level_set(0.3, t, level_angles, &tol) {
            Ok(ls) => {
                membership.check(ls.skipped == 0, || {
                    format!("t = {t}: {} rays skipped", ls.skipped)
                });
                for p in &ls.points {
                    membership.measure(p.b_residual, || format!("t = {t}, w = {}", p.w));
                }
            }
            Err(e) => membership.check(false, || format!("t = {t}: {e}")),
        }
    }
    (special, membership)
}

/// Orthocenter plus twice the circumcenter equals the vertex sum, and the
/// orthocenter of `(0, 1/z̄1, 1/z̄2)` lies on the inversion conic.
pub fn triangle_identities(seed: u64, n: usize) -> (SuiteReport, SuiteReport) {
    let mut sampler = Sampler::new(seed);
    let mut sylvester = SuiteReport::new("orthocenter + 2 circumcenter = vertex sum", 1e-10);
    let mut on_conic = SuiteReport::new("orthocenter lies on the conic", 1e-10);
    for _ in 0..n {
        let (a, b, c) = (sampler.point(), sampler.point(), sampler.point());
        match (orthocenter(a, b, c), circumcenter(a, b, c)) {
            (Ok(h), Ok(o)) => {
                let scale = [a, b, c, h, o].iter().map(|z| z.norm()).fold(1.0, f64::max);
                let err = (h + 2.0 * o - (a + b + c)).norm() / scale;
                sylvester.measure(err, || format!("({a}, {b}, {c}) error {err}"));
            }
            (h, o) => sylvester.check(false, || format!("({a}, {b}, {c}): {h:?} {o:?}")),
        }

        let (z1, z2) = sampler.pair();
        let checked =
            orthocenter_origin_triangle(z1, z2).and_then(|h| Ok((h, build_conic(z1, z2)?)));
        match checked {
            Ok((h, conic)) => {
                let [o, p, q, _] = anchor_points(z1, z2);
                let via_circumcenter = circumcenter(o, p, q).map(|cc| p + q - 2.0 * cc);
                let scale = [h, p, q].iter().map(|z| z.norm()).fold(1.0, f64::max);
                let agree = via_circumcenter.map_or(f64::NAN, |g| (g - h).norm() / scale);
                let err = conic.form.relative(h).max(agree);
                on_conic.measure(err, || format!("({z1}, {z2}) error {err}"));
            }
            Err(e) => on_conic.check(false, || format!("({z1}, {z2}): {e}")),
        }
    }
    (sylvester, on_conic)
}

/// Anchor points, central symmetry, the endpoint identity of the restricted
/// form, and agreement of the conic with the quartic.
pub fn conic_properties(seed: u64, n: usize) -> SuiteReport {
    let tol = Tolerances::default();
    let mut sampler = Sampler::new(seed);
    let mut report = SuiteReport::new("conic properties", 1e-9);
    for i in 0..n {
        let (z1, z2) = if i % 2 == 0 {
            sampler.interior_pair()
        } else {
            sampler.exterior_pair()
        };
        let conic = match build_conic(z1, z2) {
            Ok(c) => c,
            Err(e) => {
                report.check(false, || format!("({z1}, {z2}): {e}"));
                continue;
            }
        };
        let mut err: f64 = 0.0;
        for w in anchor_points(z1, z2) {
            err = err.max(conic.form.relative(w));
        }
        // Points on the curve in its own frame, reflected through the center.
        let center = conic.frame.to_frame(conic.center);
        let product = center.re * center.im;
        for k in 1..=4 {
            let s = 0.5 * k as f64;
            let w = if conic.kind == ConicKind::LinePair {
                center + Complex::new(s, 0.0)
            } else {
                Complex::new(center.re + s, center.im + product / s)
            };
            let w = conic.frame.from_frame(w);
            let mirrored = 2.0 * conic.center - w;
            err = err
                .max(conic.form.relative(w))
                .max(conic.form.relative(mirrored));
        }
        let expect = (z1.norm() - z2.norm()) * conic.frame.alpha.sin();
        let magnitude = z1.norm() * z2.norm() + z1.norm() + z2.norm();
        for (t, sign) in [(PI, 1.0), (-PI, 1.0), (0.0, -1.0)] {
            err = err.max((conic.on_circle(t) - sign * expect).abs() / magnitude);
        }
        let agreement = conic_circle_intersections(z1, z2, &tol).and_then(|points| {
            let roots = profile_roots(z1, z2, &tol)?;
            let roots: Vec<Complex> = roots.roots.unimodular().map(|r| r.value).collect();
            Ok(hausdorff_distance(&roots, &points))
        });
        err = err.max(agreement.unwrap_or(f64::NAN));
        report.measure(err, || format!("({z1}, {z2}) error {err}"));
    }
    report
}

/// Every suite at the given size. `full` uses the sample counts of the
/// acceptance criteria; otherwise a tenth of them.
pub fn run_all(seed: u64, full: bool) -> Vec<SuiteReport> {
    let scale = |n: usize| if full { n } else { (n / 10).max(1) };
    let sweep = profile_sweep(seed ^ 7, scale(100_000));
    let (special, membership) = ball_curve(if full { 720 } else { 180 });
    let (sylvester, on_conic) = triangle_identities(seed ^ 11, scale(1000));
    let mut law = reflection_law(seed ^ 3, scale(10_000), 0);
    law.absorb(reflection_law(seed ^ 4, 0, scale(1000)));
    vec![
        closed_forms(seed, scale(1000)),
        oracle_equivalence(seed ^ 1, scale(500), if full { 1_000_000 } else { 100_000 }),
        unimodular_floor(seed ^ 2, scale(10_000)),
        law,
        exterior_four(seed ^ 5, scale(1000)),
        prediction_regimes(seed ^ 6, scale(10_000)),
        sweep.exclusions,
        sweep.necessary_bounds,
        sweep.inversion_pairing,
        triple_locus(100),
        two_reflection_family(),
        special,
        membership,
        sylvester,
        on_conic,
        conic_properties(seed ^ 13, scale(2000)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for report in run_all(42, false) {
            assert!(report.passed(), "{}", report.summary());
        }
    }

    #[test]
    fn failures_are_recorded() {
        let mut r = SuiteReport::new("demo", 1.0);
        r.measure(0.5, || "fine".into());
        r.measure(2.0, || "too big".into());
        r.measure(f64::NAN, || "nan".into());
        assert_eq!((r.cases, r.failures), (3, 2));
        assert_eq!(r.first_failure.as_deref(), Some("too big"));
        assert!(!r.passed());
        assert!(r.summary().starts_with("FAIL demo"));
    }
}
