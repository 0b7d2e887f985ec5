use std::process::{Command, Output};

use alhazen_cli::report::{
    ClassifyReport, ConicReport, LevelSetReport, MetricReport, ReflectReport, SelftestReport,
    SharpnessReport,
};
use serde::de::DeserializeOwned;

fn alhazen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alhazen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Parses the JSON output and checks that re-serializing it reproduces the
/// same document.
fn round_trip<T: DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(
    args: &[&str],
) -> T {
    let out = alhazen(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    let text = stdout(&out);
    let value: T = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(again, text, "{args:?}");
    let generic: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(generic["schema_version"], 1);
    value
}

#[test]
fn reflect_figure_two_has_four_roots() {
    let r: ReflectReport = round_trip(&["reflect", "0.5+0.5i", "-0.8i", "--format", "json"]);
    assert_eq!(r.unimodular_count, 4);
    assert_eq!(r.roots.iter().filter(|x| x.unimodular).count(), 4);
    assert_eq!(r.kind, "interior");
}

#[test]
fn reflect_figure_three_has_two_roots() {
    let r: ReflectReport = round_trip(&["reflect", "0.5+0.5i", "0.5", "--format", "json"]);
    assert_eq!(r.unimodular_count, 2);
    assert_eq!(r.roots.iter().filter(|x| !x.unimodular).count(), 2);
}

#[test]
fn reflect_exterior_symmetric() {
    let r: ReflectReport = round_trip(&[
        "reflect", "2", "2i", "--kind", "exterior", "--format", "json",
    ]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((r.minimizer.re - h).abs() < 1e-12 && (r.minimizer.im - h).abs() < 1e-12);
    let inferred: ReflectReport = round_trip(&["reflect", "2", "2i", "--format", "json"]);
    assert_eq!(inferred, r);
}

#[test]
fn reflect_domain_errors() {
    let out = alhazen(&["reflect", "0.5", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = alhazen(&["reflect", "2", "-2", "--kind", "exterior"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("segment crosses mirror: direct path exists"));
    let out = alhazen(&["reflect", "0.5", "0.2", "--kind", "exterior"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metric_text_values() {
    for (a, b, want) in [
        ("0", "0.5", "0.333333333333"),
        ("0.3i", "-0.3i", "0.300000000000"),
        ("0.5+0.5i", "0.5-0.5i", "0.707106781187"),
    ] {
        let out = alhazen(&["metric", a, b]);
        assert_eq!(out.status.code(), Some(0));
        assert!(
            stdout(&out).starts_with(&format!("s_D = {want}\n")),
            "{a} {b}: {}",
            stdout(&out)
        );
    }
}

#[test]
fn metric_check_against_oracle() {
    let r: MetricReport = round_trip(&[
        "metric", "0.5+0.5i", "-0.8i", "--check", "--n", "200000", "--format", "json",
    ]);
    assert!(r.discrepancy.unwrap() < 1e-8);
    assert_eq!(r.oracle_points, Some(200_000));
}

#[test]
fn metric_outside_disk_exits_two() {
    let out = alhazen(&["metric", "1", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stderr(&out),
        "error: points must lie in the open unit disk\n"
    );
}

#[test]
fn parse_errors_exit_four() {
    for args in [
        vec!["metric", "1+", "0"],
        vec!["metric", "abc", "0"],
        vec!["metric", "0"],
        vec!["frobnicate"],
        vec!["metric", "0", "0.5", "--format", "xml"],
        vec!["metric", "0", "0.5", "--format", "svg"],
        vec!["classify", "0.1", "0.2", "--format", "csv"],
        vec!["levelset", "0.3", "0.1,,0.2"],
        vec!["levelset", "0.3", "0.1", "--n", "4"],
        vec!["metric", "0", "0.5", "--tol-unimodular", "-1"],
    ] {
        let out = alhazen(&args);
        assert_eq!(out.status.code(), Some(4), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(alhazen(&["--help"]).status.code(), Some(0));
    assert_eq!(alhazen(&["--version"]).status.code(), Some(0));
    assert!(stdout(&alhazen(&["metric", "--help"])).contains("--check"));
}

#[test]
fn levelset_center_circle() {
    let r: LevelSetReport = round_trip(&["levelset", "0", "0.5", "--n", "360", "--format", "json"]);
    assert_eq!(r.layers.len(), 1);
    assert_eq!(r.layers[0].points.len(), 360);
    for p in &r.layers[0].points {
        assert!(((p.re * p.re + p.im * p.im).sqrt() - 2.0 / 3.0).abs() < 1e-10);
    }
    assert_eq!(r.monotonicity_violations, 0);
}

#[test]
fn levelset_csv_layout() {
    let out = alhazen(&["levelset", "0.3", "0.1,0.2", "--n", "16", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,theta,re,im,s_residual,B_residual"));
    assert_eq!(lines.clone().count(), 32);
    assert!(lines.all(|l| l.split(',').count() == 6));
}

#[test]
fn levelset_near_one_reaches_every_ray() {
    let out = alhazen(&["levelset", "0.3", "0.99", "--n", "32", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: LevelSetReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r.layers[0].skipped + r.layers[0].points.len(), 32);
}

#[test]
fn levelset_out_of_range_level() {
    assert_eq!(alhazen(&["levelset", "0.3", "1.5"]).status.code(), Some(2));
    assert_eq!(alhazen(&["levelset", "1.2", "0.5"]).status.code(), Some(2));
}

#[test]
fn classify_prediction_four() {
    let r: ClassifyReport = round_trip(&["classify", "0.9", "-0.89", "--format", "json"]);
    assert_eq!(r.prediction, "four");
    assert_eq!(r.count_unimodular, 4);
    assert_eq!(r.pattern, "four-simple");
    assert_eq!(r.cohn, Some(true));
}

#[test]
fn classify_with_origin_has_no_ratio() {
    let r: ClassifyReport = round_trip(&["classify", "0", "0.5i", "--format", "json"]);
    assert_eq!(r.pattern, "cubic");
    assert_eq!(r.ratio, None);
    assert_eq!(alhazen(&["classify", "0", "0"]).status.code(), Some(2));
}

#[test]
fn conic_matches_quartic() {
    let r: ConicReport = round_trip(&["conic", "0.5+0.5i", "0.5", "--format", "json"]);
    assert_eq!(r.intersections.len(), 2);
    assert_eq!(r.quartic_unimodular.len(), 2);
    assert!(r.agreement < 1e-9);
    assert_eq!(r.kind, "equilateral-hyperbola");
    assert_eq!(alhazen(&["conic", "0", "0.5"]).status.code(), Some(2));
}

#[test]
fn sharpness_csv_and_json() {
    let out = alhazen(&["sharpness", "0.5,0.1"]);
    assert!(stdout(&out).starts_with("t,ratio,count\n0.5,"));
    let r: SharpnessReport = round_trip(&["sharpness", "0.5,0.1,0.01", "--format", "json"]);
    assert!(r.rows.iter().all(|row| row.count == 4 && row.ratio < 2.0));
    assert_eq!(alhazen(&["sharpness", "0,0.1"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let r: SelftestReport = round_trip(&["selftest", "--seed", "42", "--format", "json"]);
    assert!(
        r.passed,
        "{:#?}",
        r.suites.iter().filter(|s| !s.passed).collect::<Vec<_>>()
    );
    assert!(r.suites.len() >= 10);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let out = alhazen(&[
        "reflect",
        "0.5+0.5i",
        "0.5",
        "--format",
        "svg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("<svg"));
}

#[test]
fn tolerance_flag_is_applied() {
    // A band this wide pulls the off-circle pair onto the circle, which
    // contradicts the two-root prediction: a verification mismatch.
    let narrow: ClassifyReport = round_trip(&["classify", "0.5+0.5i", "0.5", "--format", "json"]);
    assert_eq!(narrow.count_unimodular, 2);
    let out = alhazen(&[
        "classify",
        "0.5+0.5i",
        "0.5",
        "--format",
        "json",
        "--tol-unimodular",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let wide: ClassifyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(wide.count_unimodular, 4);
    assert!(!wide.matches_prediction);
    assert!(stderr(&out).contains("contradicts the prediction"));
}
