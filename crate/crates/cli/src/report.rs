//! Serializable command results. Every JSON document carries
//! `"schema_version": 1`; non-finite values are never emitted.

use alhazen::classify::{Prediction, RootPattern, RootProfile, SharpnessRow};
use alhazen::conic::{ConicKind, ConicModel};
use alhazen::metric::{LevelSet, MetricQuery};
use alhazen::reflect::{focal_sum, ProblemKind, ReflectionSolution, SpecialCase};
use alhazen::verify::SuiteReport;
use alhazen::{Complex, RootSet};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for Point {
    fn from(z: Complex) -> Self {
        Point { re: z.re, im: z.im }
    }
}

impl From<Point> for Complex {
    fn from(p: Point) -> Self {
        Complex::new(p.re, p.im)
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub multiplicity: usize,
    pub unimodular: bool,
    /// `|z1 − u| + |z2 − u|`, for unimodular roots only.
    pub focal_sum: Option<f64>,
}

pub fn root_entries(roots: &RootSet, z1: Complex, z2: Complex) -> Vec<RootEntry> {
    roots
        .roots()
        .iter()
        .map(|r| RootEntry {
            re: r.value.re,
            im: r.value.im,
            modulus: r.value.norm(),
            multiplicity: r.multiplicity,
            unimodular: r.unimodular,
            focal_sum: r.unimodular.then(|| focal_sum(z1, z2, r.value)),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReflectReport {
    pub schema_version: u32,
    pub command: String,
    pub z1: Point,
    pub z2: Point,
    pub kind: String,
    pub roots: Vec<RootEntry>,
    pub unimodular_count: usize,
    pub minimizer: Point,
    pub all_minimizers: Vec<Point>,
    pub maximizer: Point,
    pub path_length: f64,
    pub ellipse_radius: f64,
    pub special_case: Option<String>,
}

pub fn problem_kind_name(kind: ProblemKind) -> &'static str {
    match kind {
        ProblemKind::Interior => "interior",
        ProblemKind::Exterior => "exterior",
        ProblemKind::ExteriorBlocked => "exterior-blocked",
    }
}

fn special_case_name(case: SpecialCase) -> &'static str {
    match case {
        SpecialCase::OneAtCenter => "one-at-center",
        SpecialCase::Opposite => "opposite",
        SpecialCase::Coincident => "coincident",
        SpecialCase::EqualModulus => "equal-modulus",
        SpecialCase::Collinear => "collinear",
    }
}

impl ReflectReport {
    pub fn new(sol: &ReflectionSolution, special: Option<SpecialCase>) -> Self {
        ReflectReport {
            schema_version: SCHEMA_VERSION,
            command: "reflect".into(),
            z1: sol.z1.into(),
            z2: sol.z2.into(),
            kind: problem_kind_name(sol.kind).into(),
            roots: root_entries(&sol.roots, sol.z1, sol.z2),
            unimodular_count: sol.roots.unimodular_count(),
            minimizer: sol.u.into(),
            all_minimizers: sol.all_minimizers.iter().map(|&u| u.into()).collect(),
            maximizer: sol.maximizer.into(),
            path_length: sol.path_length,
            ellipse_radius: sol.ellipse_radius,
            special_case: special.map(|c| special_case_name(c).into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub schema_version: u32,
    pub command: String,
    pub z1: Point,
    pub z2: Point,
    pub s: f64,
    pub witness: Point,
    pub oracle: Option<f64>,
    pub oracle_points: Option<usize>,
    pub discrepancy: Option<f64>,
}

impl MetricReport {
    pub fn new(q: &MetricQuery, oracle: Option<(f64, usize)>) -> Self {
        MetricReport {
            schema_version: SCHEMA_VERSION,
            command: "metric".into(),
            z1: q.z1.into(),
            z2: q.z2.into(),
            s: q.result,
            witness: q.witness.into(),
            oracle: oracle.map(|o| o.0),
            oracle_points: oracle.map(|o| o.1),
            discrepancy: oracle.map(|o| (o.0 - q.result).abs()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelPointEntry {
    pub theta: f64,
    pub re: f64,
    pub im: f64,
    pub s_residual: f64,
    pub b_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelLayer {
    pub t: f64,
    pub skipped: usize,
    pub points: Vec<LevelPointEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSetReport {
    pub schema_version: u32,
    pub command: String,
    pub c: f64,
    pub angles: usize,
    /// Sampled rays along which the metric failed to increase.
    pub monotonicity_violations: usize,
    pub layers: Vec<LevelLayer>,
}

impl LevelLayer {
    pub fn new(ls: &LevelSet) -> Self {
        LevelLayer {
            t: ls.t,
            skipped: ls.skipped,
            points: ls
                .points
                .iter()
                .map(|p| LevelPointEntry {
                    theta: p.theta,
                    re: p.w.re,
                    im: p.w.im,
                    s_residual: p.s_residual,
                    b_residual: p.b_residual,
                })
                .collect(),
        }
    }
}

pub fn pattern_name(p: RootPattern) -> &'static str {
    match p {
        RootPattern::FourSimple => "four-simple",
        RootPattern::TwoSimpleTwoOff => "two-simple-two-off",
        RootPattern::DoublePlusTwoSimple => "double-plus-two-simple",
        RootPattern::TriplePlusSimple => "triple-plus-simple",
        RootPattern::Cubic => "cubic",
        RootPattern::TwoDoubles => "two-doubles",
        RootPattern::DoublePlusTwoOff => "double-plus-two-off",
        RootPattern::Degenerate => "degenerate",
    }
}

pub fn prediction_name(p: Prediction) -> &'static str {
    match p {
        Prediction::Four => "four",
        Prediction::Two => "two",
        Prediction::Indeterminate => "indeterminate",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    pub command: String,
    pub z1: Point,
    pub z2: Point,
    pub count_unimodular: usize,
    pub pattern: String,
    /// `|z1 + z2| / |z1 z2|`; absent when a point is at the origin.
    pub ratio: Option<f64>,
    pub prediction: String,
    pub matches_prediction: bool,
    pub cohn: Option<bool>,
    pub roots: Vec<RootEntry>,
}

impl ClassifyReport {
    pub fn new(p: &RootProfile, cohn: Option<bool>) -> Self {
        ClassifyReport {
            schema_version: SCHEMA_VERSION,
            command: "classify".into(),
            z1: p.z1.into(),
            z2: p.z2.into(),
            count_unimodular: p.count_unimodular,
            pattern: pattern_name(p.pattern).into(),
            ratio: finite(p.ratio),
            prediction: prediction_name(p.prediction).into(),
            matches_prediction: p.matches_prediction(),
            cohn,
            roots: root_entries(&p.roots, p.z1, p.z2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineEntry {
    pub point: Point,
    pub direction: Point,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameEntry {
    pub rotation: f64,
    pub conjugate: bool,
    pub alpha: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConicReport {
    pub schema_version: u32,
    pub command: String,
    pub z1: Point,
    pub z2: Point,
    pub coefficients: Coefficients,
    pub center: Point,
    pub kind: String,
    pub lines: Vec<LineEntry>,
    pub line_distances: [f64; 2],
    pub vertex_distance: Option<f64>,
    pub frame: FrameEntry,
    pub ill_conditioned: bool,
    pub intersections: Vec<Point>,
    pub quartic_unimodular: Vec<Point>,
    /// Hausdorff distance between `intersections` and `quartic_unimodular`.
    pub agreement: f64,
    pub note: Option<String>,
}

impl ConicReport {
    pub fn new(
        m: &ConicModel,
        intersections: &[Complex],
        quartic: &[Complex],
        agreement: f64,
    ) -> Self {
        let note = (intersections.len() == 3)
            .then(|| "three intersections: one is a tangency counted once".to_string());
        ConicReport {
            schema_version: SCHEMA_VERSION,
            command: "conic".into(),
            z1: m.z1.into(),
            z2: m.z2.into(),
            coefficients: Coefficients {
                a: m.form.a,
                b: m.form.b,
                c: m.form.c,
                d: m.form.d,
                e: m.form.e,
                f: m.form.f,
            },
            center: m.center.into(),
            kind: match m.kind {
                ConicKind::LinePair => "line-pair",
                ConicKind::EquilateralHyperbola => "equilateral-hyperbola",
            }
            .into(),
            lines: m
                .lines
                .iter()
                .map(|l| LineEntry {
                    point: l.point.into(),
                    direction: l.direction.into(),
                })
                .collect(),
            line_distances: [m.line_distances.0, m.line_distances.1],
            vertex_distance: m.vertex_distance,
            frame: FrameEntry {
                rotation: m.frame.rotation,
                conjugate: m.frame.conjugate,
                alpha: m.frame.alpha,
            },
            ill_conditioned: m.ill_conditioned,
            intersections: intersections.iter().map(|&z| z.into()).collect(),
            quartic_unimodular: quartic.iter().map(|&z| z.into()).collect(),
            agreement,
            note,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub worst: Option<f64>,
    pub bound: f64,
    pub passed: bool,
    pub first_failure: Option<String>,
}

impl From<&SuiteReport> for SuiteEntry {
    fn from(r: &SuiteReport) -> Self {
        SuiteEntry {
            name: r.name.into(),
            cases: r.cases,
            failures: r.failures,
            worst: finite(r.worst),
            bound: r.bound,
            passed: r.passed(),
            first_failure: r.first_failure.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub full: bool,
    pub passed: bool,
    pub suites: Vec<SuiteEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessEntry {
    pub t: f64,
    pub ratio: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub schema_version: u32,
    pub command: String,
    pub rows: Vec<SharpnessEntry>,
}

impl SharpnessReport {
    pub fn new(rows: &[SharpnessRow]) -> Self {
        SharpnessReport {
            schema_version: SCHEMA_VERSION,
            command: "sharpness".into(),
            rows: rows
                .iter()
                .map(|r| SharpnessEntry {
                    t: r.t,
                    ratio: r.ratio,
                    count: r.count,
                })
                .collect(),
        }
    }
}
