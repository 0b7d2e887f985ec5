use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use alhazen::classify::{cohn_test, profile_roots, sharpness_scan};
use alhazen::conic::{build_conic, conic_circle_intersections, hausdorff_distance};
use alhazen::literal::{parse_complex, parse_real, parse_real_list};
use alhazen::metric::{level_set, ray_monotonicity_violation, s_disk, s_disk_oracle};
use alhazen::reflect::{build_quartic, closed_form, solve_exterior, solve_interior, ProblemKind};
use alhazen::verify::run_all;
use alhazen::{Complex, Error, Tolerances};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::report::{
    pattern_name, prediction_name, ClassifyReport, ConicReport, LevelLayer, LevelSetReport,
    MetricReport, ReflectReport, SelftestReport, SharpnessReport, SuiteEntry, SCHEMA_VERSION,
};
use crate::svg::{levelset_svg, reflect_svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

/// Largest accepted gap between the solver and the brute-force oracle.
pub const CHECK_TOLERANCE: f64 = 1e-8;

/// Rays sampled for the monotonicity check of `levelset`.
const MONOTONICITY_RAYS: usize = 16;

#[derive(Parser, Debug)]
#[command(
    name = "alhazen",
    version,
    about = "Reflection in the unit circle and the triangular ratio metric"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Half-width of the band around the unit circle treated as unimodular.
    #[arg(long, value_parser = positive_real, global = true)]
    pub tol_unimodular: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Interior,
    Exterior,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the reflection problem for two points.
    Reflect {
        #[arg(value_parser = complex_arg, allow_hyphen_values = true)]
        z1: Complex,
        #[arg(value_parser = complex_arg, allow_hyphen_values = true)]
        z2: Complex,
        /// Problem kind; inferred from the moduli when omitted.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Triangular ratio metric of two points of the unit disk.
    Metric {
        #[arg(value_parser = complex_arg, allow_hyphen_values = true)]
        z1: Complex,
        #[arg(value_parser = complex_arg, allow_hyphen_values = true)]
        z2: Complex,
        /// Compare against the brute-force supremum.
        #[arg(long)]
        check: bool,
        /// Grid size of the brute-force supremum.
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(8..))]
        n: u64,
    },
    /// Trace level sets of the metric about a real center.
    Levelset {
        #[arg(value_parser = real_arg, allow_hyphen_values = true)]
        c: f64,
        /// Comma-separated levels, e.g. 0.1,0.2,0.6.
        #[arg(value_parser = real_list_arg, allow_hyphen_values = true)]
        t: RealList,
        /// Number of directions.
        #[arg(long, default_value_t = 720, value_parser = clap::value_parser!(u64).range(8..=1_000_000))]
        n: u64,
    },
    /// Count and classify the unimodular roots of the quartic.
    Classify {
        #[arg(value_parser = complex_arg, allow_hyphen_values = true)]
        z1: Complex,
        #[arg(value_parser = complex_arg, allow_hyphen_values = true)]
        z2: Complex,
    },
    /// Describe the inversion conic and its intersections with the circle.
    Conic {
        #[arg(value_parser = complex_arg, allow_hyphen_values = true)]
        z1: Complex,
        #[arg(value_parser = complex_arg, allow_hyphen_values = true)]
        z2: Complex,
    },
    /// Run every randomised invariant suite.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Use the full sample counts instead of a tenth of them.
        #[arg(long)]
        full: bool,
    },
    /// Ratio and root count along the family showing the constant 2 is sharp.
    Sharpness {
        #[arg(value_parser = real_list_arg, allow_hyphen_values = true)]
        t: RealList,
    },
}

/// Comma-separated reals taken as one argument.
#[derive(Clone, Debug, PartialEq)]
pub struct RealList(pub Vec<f64>);

fn real_list_arg(s: &str) -> Result<RealList, String> {
    parse_real_list(s).map(RealList).map_err(|e| e.to_string())
}

fn complex_arg(s: &str) -> Result<Complex, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn real_arg(s: &str) -> Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

fn positive_real(s: &str) -> Result<f64, String> {
    match parse_real(s) {
        Ok(x) if x > 0.0 => Ok(x),
        Ok(_) => Err("must be strictly positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// A finished command: what to print and how to exit.
struct Outcome {
    text: String,
    code: i32,
    warnings: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
            warnings: Vec::new(),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NumericalFailure(_) => EXIT_MISMATCH,
        _ => EXIT_DOMAIN,
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = format!("{format:?}").to_lowercase();
    Failure::Usage(format!("--format {name} is not supported by {command}"))
}

fn fmt_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.12}{sign}{:.12}i", z.re, z.im.abs())
}

/// Runs the command line `args` and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };

    let mut tol = Tolerances::default();
    if let Some(eps) = cli.config.tol_unimodular {
        tol = tol.with_unimodular_eps(eps);
    }
    let outcome = match dispatch(&cli.command, cli.config.format, &tol) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    for w in &outcome.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => stdout.write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_IO;
    }
    outcome.code
}

fn dispatch(command: &Command, format: Format, tol: &Tolerances) -> Result<Outcome, Failure> {
    tol.validate()?;
    match command {
        Command::Reflect { z1, z2, kind } => reflect(*z1, *z2, *kind, format, tol),
        Command::Metric { z1, z2, check, n } => metric(*z1, *z2, *check, *n as usize, format, tol),
        Command::Levelset { c, t, n } => levelset(*c, &t.0, *n as usize, format, tol),
        Command::Classify { z1, z2 } => classify(*z1, *z2, format, tol),
        Command::Conic { z1, z2 } => conic(*z1, *z2, format, tol),
        Command::Selftest { seed, full } => selftest(*seed, *full, format),
        Command::Sharpness { t } => sharpness(&t.0, format, tol),
    }
}

pub fn reflect_report(
    z1: Complex,
    z2: Complex,
    kind: Option<Kind>,
    tol: &Tolerances,
) -> alhazen::Result<ReflectReport> {
    let kind = match kind {
        Some(k) => k,
        None => match ProblemKind::of(z1, z2) {
            Some(ProblemKind::Interior) => Kind::Interior,
            Some(_) => Kind::Exterior,
            None => {
                return Err(Error::Domain(
                    "points must both lie inside or both outside the unit circle".into(),
                ))
            }
        },
    };
    let sol = match kind {
        Kind::Interior => solve_interior(z1, z2, tol)?,
        Kind::Exterior => solve_exterior(z1, z2, tol)?,
    };
    Ok(ReflectReport::new(
        &sol,
        closed_form(z1, z2).map(|c| c.case),
    ))
}

fn reflect(
    z1: Complex,
    z2: Complex,
    kind: Option<Kind>,
    format: Format,
    tol: &Tolerances,
) -> Result<Outcome, Failure> {
    let r = reflect_report(z1, z2, kind, tol)?;
    let text = match format {
        Format::Json => json(&r),
        Format::Svg => reflect_svg(&r),
        Format::Csv => {
            let mut s = String::from("re,im,modulus,multiplicity,unimodular,focal_sum,minimizer\n");
            for root in &r.roots {
                let minimizer = root.re == r.minimizer.re && root.im == r.minimizer.im;
                let sum = root.focal_sum.map(|f| f.to_string()).unwrap_or_default();
                writeln!(
                    s,
                    "{},{},{},{},{},{sum},{minimizer}",
                    root.re, root.im, root.modulus, root.multiplicity, root.unimodular
                )
                .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{} problem for z1 = {}, z2 = {}\n",
                r.kind,
                fmt_complex(z1),
                fmt_complex(z2)
            );
            if let Some(case) = &r.special_case {
                writeln!(s, "special case: {case}").unwrap();
            }
            writeln!(s, "roots:").unwrap();
            for root in &r.roots {
                let mark = if root.unimodular {
                    "unimodular"
                } else {
                    "off circle"
                };
                let mult = if root.multiplicity > 1 {
                    format!(" (multiplicity {})", root.multiplicity)
                } else {
                    String::new()
                };
                writeln!(
                    s,
                    "  {}  |u| = {:.12}  {mark}{mult}",
                    fmt_complex(Complex::new(root.re, root.im)),
                    root.modulus
                )
                .unwrap();
            }
            writeln!(s, "unimodular roots: {}", r.unimodular_count).unwrap();
            writeln!(s, "minimizer: {}", fmt_complex(r.minimizer.into())).unwrap();
            if r.all_minimizers.len() > 1 {
                let all: Vec<String> = r
                    .all_minimizers
                    .iter()
                    .map(|&p| fmt_complex(p.into()))
                    .collect();
                writeln!(s, "tied minimizers: {}", all.join(", ")).unwrap();
            }
            writeln!(s, "path length: {:.12}", r.path_length).unwrap();
            writeln!(s, "ellipse radius: {:.12}", r.ellipse_radius).unwrap();
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn metric(
    z1: Complex,
    z2: Complex,
    check: bool,
    n: usize,
    format: Format,
    tol: &Tolerances,
) -> Result<Outcome, Failure> {
    if format == Format::Svg {
        return Err(unsupported(format, "metric"));
    }
    let q = s_disk(z1, z2, tol)?;
    let oracle = check.then(|| (s_disk_oracle(z1, z2, n), n));
    let r = MetricReport::new(&q, oracle);
    let text = match format {
        Format::Json => json(&r),
        Format::Csv => {
            let mut s = String::from("z1_re,z1_im,z2_re,z2_im,s,witness_re,witness_im,oracle\n");
            let o = r.oracle.map(|o| o.to_string()).unwrap_or_default();
            writeln!(
                s,
                "{},{},{},{},{},{},{},{o}",
                r.z1.re, r.z1.im, r.z2.re, r.z2.im, r.s, r.witness.re, r.witness.im
            )
            .unwrap();
            s
        }
        _ => {
            let mut s = format!("s_D = {:.12}\nwitness: {}\n", r.s, fmt_complex(q.witness));
            if let (Some(o), Some(d)) = (r.oracle, r.discrepancy) {
                writeln!(s, "oracle ({n} points): {o:.12}\ndiscrepancy: {d:.3e}").unwrap();
            }
            s
        }
    };
    let mut outcome = Outcome::ok(text);
    if let Some(d) = r.discrepancy {
        if d.is_nan() || d > CHECK_TOLERANCE {
            outcome.code = EXIT_MISMATCH;
            outcome.warnings.push(format!(
                "solver and oracle differ by {d:.3e} (limit {CHECK_TOLERANCE:.0e})"
            ));
        }
    }
    Ok(outcome)
}

pub fn levelset_report(
    c: f64,
    levels: &[f64],
    n: usize,
    tol: &Tolerances,
) -> alhazen::Result<LevelSetReport> {
    let mut layers = Vec::with_capacity(levels.len());
    for &t in levels {
        layers.push(LevelLayer::new(&level_set(c, t, n, tol)?));
    }
    let mut violations = 0;
    for k in 0..MONOTONICITY_RAYS {
        let theta = std::f64::consts::TAU * (k as f64 + 0.5) / MONOTONICITY_RAYS as f64;
        if ray_monotonicity_violation(c, theta, 256, tol)?.is_some() {
            violations += 1;
        }
    }
    Ok(LevelSetReport {
        schema_version: SCHEMA_VERSION,
        command: "levelset".into(),
        c,
        angles: n,
        monotonicity_violations: violations,
        layers,
    })
}

fn levelset(
    c: f64,
    t: &[f64],
    n: usize,
    format: Format,
    tol: &Tolerances,
) -> Result<Outcome, Failure> {
    let r = levelset_report(c, t, n, tol)?;
    let text = match format {
        Format::Json => json(&r),
        Format::Svg => levelset_svg(&r),
        Format::Csv | Format::Text => {
            let mut s = String::from("t,theta,re,im,s_residual,B_residual\n");
            for layer in &r.layers {
                for p in &layer.points {
                    writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        layer.t, p.theta, p.re, p.im, p.s_residual, p.b_residual
                    )
                    .unwrap();
                }
            }
            s
        }
    };
    let mut outcome = Outcome::ok(text);
    for layer in &r.layers {
        if layer.skipped > 0 {
            outcome.warnings.push(format!(
                "t = {}: {} of {} directions never reach the level inside the disk",
                layer.t, layer.skipped, r.angles
            ));
        }
    }
    if r.monotonicity_violations > 0 {
        outcome.warnings.push(format!(
            "metric decreased along {} of {} sampled rays; radial tracing may be inexact",
            r.monotonicity_violations, MONOTONICITY_RAYS
        ));
    }
    Ok(outcome)
}

fn classify(
    z1: Complex,
    z2: Complex,
    format: Format,
    tol: &Tolerances,
) -> Result<Outcome, Failure> {
    if !matches!(format, Format::Text | Format::Json) {
        return Err(unsupported(format, "classify"));
    }
    let p = profile_roots(z1, z2, tol)?;
    let cohn = build_quartic(z1, z2)
        .ok()
        .and_then(|q| cohn_test(&q, tol).ok());
    let r = ClassifyReport::new(&p, cohn);
    let text = match format {
        Format::Json => json(&r),
        _ => {
            let ratio = r
                .ratio
                .map_or("undefined".to_string(), |x| format!("{x:.12}"));
            let mut s = format!(
                "pattern: {}\nunimodular roots: {}\nratio |z1+z2|/|z1z2|: {ratio}\nprediction: {}\n",
                pattern_name(p.pattern),
                p.count_unimodular,
                prediction_name(p.prediction)
            );
            if let Some(c) = cohn {
                writeln!(s, "derivative roots in closed disk: {c}").unwrap();
            }
            s
        }
    };
    let mut outcome = Outcome::ok(text);
    if !r.matches_prediction {
        outcome.code = EXIT_MISMATCH;
        outcome
            .warnings
            .push("observed root count contradicts the prediction".into());
    }
    Ok(outcome)
}

fn conic(z1: Complex, z2: Complex, format: Format, tol: &Tolerances) -> Result<Outcome, Failure> {
    if !matches!(format, Format::Text | Format::Json) {
        return Err(unsupported(format, "conic"));
    }
    let model = build_conic(z1, z2)?;
    let points = conic_circle_intersections(z1, z2, tol)?;
    let quartic: Vec<Complex> = profile_roots(z1, z2, tol)?
        .roots
        .unimodular()
        .map(|r| r.value)
        .collect();
    let agreement = hausdorff_distance(&points, &quartic);
    let r = ConicReport::new(&model, &points, &quartic, agreement);
    let text = match format {
        Format::Json => json(&r),
        _ => {
            let f = &r.coefficients;
            let mut s = format!(
                "{}\nform: {:.12} x^2 + {:.12} xy + {:.12} y^2 + {:.12} x + {:.12} y\ncenter: {}\n",
                r.kind,
                f.a,
                f.b,
                f.c,
                f.d,
                f.e,
                fmt_complex(model.center)
            );
            if let Some(d) = r.vertex_distance {
                writeln!(s, "vertex distance: {d:.12}").unwrap();
            }
            writeln!(s, "intersections with the unit circle: {}", points.len()).unwrap();
            for p in &points {
                writeln!(s, "  {}", fmt_complex(*p)).unwrap();
            }
            writeln!(s, "distance to quartic roots: {agreement:.3e}").unwrap();
            if let Some(note) = &r.note {
                writeln!(s, "note: {note}").unwrap();
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn selftest(seed: u64, full: bool, format: Format) -> Result<Outcome, Failure> {
    if !matches!(format, Format::Text | Format::Json) {
        return Err(unsupported(format, "selftest"));
    }
    let suites = run_all(seed, full);
    let passed = suites.iter().all(|s| s.passed());
    let r = SelftestReport {
        schema_version: SCHEMA_VERSION,
        command: "selftest".into(),
        seed,
        full,
        passed,
        suites: suites.iter().map(SuiteEntry::from).collect(),
    };
    let text = match format {
        Format::Json => json(&r),
        _ => {
            let mut s: String = suites.iter().map(|x| x.summary() + "\n").collect();
            let failed = suites.iter().filter(|x| !x.passed()).count();
            writeln!(s, "{} suites, {failed} failed", suites.len()).unwrap();
            s
        }
    };
    let mut outcome = Outcome::ok(text);
    if !passed {
        outcome.code = EXIT_MISMATCH;
    }
    Ok(outcome)
}

fn sharpness(t: &[f64], format: Format, tol: &Tolerances) -> Result<Outcome, Failure> {
    if format == Format::Svg {
        return Err(unsupported(format, "sharpness"));
    }
    let r = SharpnessReport::new(&sharpness_scan(t, tol)?);
    let text = match format {
        Format::Json => json(&r),
        _ => {
            let mut s = String::from("t,ratio,count\n");
            for row in &r.rows {
                writeln!(s, "{},{},{}", row.t, row.ratio, row.count).unwrap();
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}
