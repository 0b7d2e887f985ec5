//! The inversion conic.
//!
//! Under inversion in the unit circle, the unimodular roots of the reflection
//! quartic are the intersections of the circle with
//!
//! ```text
//! Γ: Im(conj(z1 z2) u (1/conj(z1) + 1/conj(z2) − u)) = 0,
//! ```
//!
//! a conic through `0`, `1/z̄1`, `1/z̄2` and `1/z̄1 + 1/z̄2`. It is a pair of lines
//! when `|z1| = |z2|` or the two points are collinear with the origin, and an
//! equilateral hyperbola otherwise.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{is_finite, Complex, Tolerances};

/// Relative tolerance of the line-pair test.
pub const LINE_PAIR_EPS: f64 = 1e-10;

/// Hyperbolas closer than this (relative) to a line pair are flagged.
pub const ILL_CONDITIONED_EPS: f64 = 1e-6;

const SCAN_POINTS: usize = 512;
const BISECT_WIDTH: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicKind {
    LinePair,
    EquilateralHyperbola,
}

/// Real quadratic form `A x² + B xy + C y² + D x + E y + F`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl QuadraticForm {
    pub fn eval(&self, w: Complex) -> f64 {
        let (x, y) = (w.re, w.im);
        self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f
    }

    /// Sum of the moduli of the monomials at `w`.
    pub fn scale(&self, w: Complex) -> f64 {
        let (x, y) = (w.re, w.im);
        (self.a * x * x).abs()
            + (self.b * x * y).abs()
            + (self.c * y * y).abs()
            + (self.d * x).abs()
            + (self.e * y).abs()
            + self.f.abs()
    }

    pub fn relative(&self, w: Complex) -> f64 {
        let s = self.scale(w);
        if s == 0.0 {
            0.0
        } else {
            self.eval(w).abs() / s
        }
    }
}

/// Rotation and optional reflection taking `z1, z2` to `|z1|e^{−iα}, |z2|e^{iα}`
/// with `α ∈ [0, π/2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub rotation: f64,
    pub conjugate: bool,
    pub alpha: f64,
}

impl Frame {
    pub fn of(z1: Complex, z2: Complex) -> Self {
        let half = (z2 / z1).arg() / 2.0;
        Frame {
            rotation: z1.arg() + half,
            conjugate: half < 0.0,
            alpha: half.abs(),
        }
    }

    pub fn to_frame(&self, w: Complex) -> Complex {
        let r = w * Complex::from_polar(1.0, -self.rotation);
        if self.conjugate {
            r.conj()
        } else {
            r
        }
    }

    pub fn from_frame(&self, w: Complex) -> Complex {
        let r = if self.conjugate { w.conj() } else { w };
        r * Complex::from_polar(1.0, self.rotation)
    }
}

/// A line (or asymptote) through `point` along `direction`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub point: Complex,
    pub direction: Complex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConicModel {
    pub z1: Complex,
    pub z2: Complex,
    pub form: QuadraticForm,
    pub center: Complex,
    pub kind: ConicKind,
    /// The two lines, or the two asymptotes of the hyperbola.
    pub lines: [Line; 2],
    /// Distances from the origin to `lines[0]` and `lines[1]`.
    pub line_distances: (f64, f64),
    /// Distance from the center to either vertex of the hyperbola.
    pub vertex_distance: Option<f64>,
    pub frame: Frame,
    /// Set when a hyperbola is within [`ILL_CONDITIONED_EPS`] of a line pair.
    pub ill_conditioned: bool,
}

impl ConicModel {
    pub fn eval(&self, w: Complex) -> f64 {
        self.form.eval(w)
    }

    /// `g(t) = |z1z2| sin 2t − |z1| sin(t+α) − |z2| sin(t−α)`, the conic form on
    /// the unit circle in the normalized frame, up to sign.
    pub fn on_circle(&self, t: f64) -> f64 {
        let (p, q) = (self.z1.norm(), self.z2.norm());
        let alpha = self.frame.alpha;
        p * q * (2.0 * t).sin() - p * (t + alpha).sin() - q * (t - alpha).sin()
    }

    fn on_circle_slope(&self, t: f64) -> f64 {
        let (p, q) = (self.z1.norm(), self.z2.norm());
        let alpha = self.frame.alpha;
        2.0 * p * q * (2.0 * t).cos() - p * (t + alpha).cos() - q * (t - alpha).cos()
    }
}

fn check_pair(z1: Complex, z2: Complex) -> Result<()> {
    if !is_finite(z1) || !is_finite(z2) {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    if z1 * z2 == Complex::new(0.0, 0.0) {
        return Err(Error::Degenerate("conic degenerates to a line".into()));
    }
    Ok(())
}

pub fn build_conic(z1: Complex, z2: Complex) -> Result<ConicModel> {
    check_pair(z1, z2)?;
    let a = (z1 * z2).conj();
    let k = (z1 + z2).conj();
    let form = QuadraticForm {
        a: -a.im,
        b: -2.0 * a.re,
        c: a.im,
        d: k.im,
        e: k.re,
        f: 0.0,
    };
    let center = (z1.conj().inv() + z2.conj().inv()) / 2.0;

    let (p, q) = (z1.norm(), z2.norm());
    let modulus_gap = (p - q).abs() / p.max(q);
    let angular_gap = (z1 * z2.conj()).im.abs() / (p * q);
    let gap = modulus_gap.min(angular_gap);
    let kind = if gap <= LINE_PAIR_EPS {
        ConicKind::LinePair
    } else {
        ConicKind::EquilateralHyperbola
    };

    // In the frame the conic reads (x − x0)(y − y0) = x0 y0.
    let frame = Frame::of(z1, z2);
    let alpha = frame.alpha;
    let product = p * q;
    let x0 = (p + q) * alpha.cos() / (2.0 * product);
    let y0 = (p - q) * alpha.sin() / (2.0 * product);
    let corner = Complex::new(x0, y0);
    let lines = [
        Line {
            point: frame.from_frame(corner),
            direction: frame.from_frame(Complex::new(0.0, 1.0)),
        },
        Line {
            point: frame.from_frame(corner),
            direction: frame.from_frame(Complex::new(1.0, 0.0)),
        },
    ];
    let vertex_distance = match kind {
        ConicKind::LinePair => None,
        ConicKind::EquilateralHyperbola => {
            Some((p * p - q * q).abs().sqrt() * (2.0 * alpha).sin().sqrt() / (2.0 * product))
        }
    };

    Ok(ConicModel {
        z1,
        z2,
        form,
        center,
        kind,
        lines,
        line_distances: (x0.abs(), y0.abs()),
        vertex_distance,
        frame,
        ill_conditioned: kind == ConicKind::EquilateralHyperbola && gap <= ILL_CONDITIONED_EPS,
    })
}

/// The four points every inversion conic passes through.
pub fn anchor_points(z1: Complex, z2: Complex) -> [Complex; 4] {
    let a = z1.conj().inv();
    let b = z2.conj().inv();
    [Complex::new(0.0, 0.0), a, b, a + b]
}

fn triangle_denominator(a: Complex, b: Complex, c: Complex) -> Option<Complex> {
    let den = a.conj() * (b - c) + b.conj() * (c - a) + c.conj() * (a - b);
    let scale = (b - a).norm() * (c - a).norm();
    if den.norm() <= 1e-12 * scale || scale == 0.0 {
        None
    } else {
        Some(den)
    }
}

pub fn circumcenter(a: Complex, b: Complex, c: Complex) -> Result<Complex> {
    let den = triangle_denominator(a, b, c)
        .ok_or_else(|| Error::Collinear("triangle vertices are collinear".into()))?;
    let num = a.norm_sqr() * (b - c) + b.norm_sqr() * (c - a) + c.norm_sqr() * (a - b);
    Ok(num / den)
}

/// Circumcenter of `(0, z1, z2)` in the specialised closed form.
pub fn circumcenter_with_origin(z1: Complex, z2: Complex) -> Result<Complex> {
    let den = z1 * z2.conj() - z1.conj() * z2;
    if den.norm() <= 1e-12 * z1.norm() * z2.norm() {
        return Err(Error::Collinear("triangle vertices are collinear".into()));
    }
    Ok(z1 * z2 * (z2.conj() - z1.conj()) / den)
}

/// Orthocenter as the intersection of two altitudes.
pub fn orthocenter(a: Complex, b: Complex, c: Complex) -> Result<Complex> {
    triangle_denominator(a, b, c)
        .ok_or_else(|| Error::Collinear("triangle vertices are collinear".into()))?;
    // (h − a)·(b − c) = 0 and (h − b)·(c − a) = 0.
    let (m, n) = (b - c, c - a);
    let r1 = a.re * m.re + a.im * m.im;
    let r2 = b.re * n.re + b.im * n.im;
    let det = m.re * n.im - m.im * n.re;
    Ok(Complex::new(
        (r1 * n.im - m.im * r2) / det,
        (m.re * r2 - n.re * r1) / det,
    ))
}

/// Orthocenter of the triangle `(0, 1/z̄1, 1/z̄2)`:
///
/// ```text
/// h = (z̄2 − z̄1)/(z̄1 z̄2) · (z1 z̄2 + z̄1 z2)/(z1 z̄2 − z̄1 z2)
/// ```
pub fn orthocenter_origin_triangle(z1: Complex, z2: Complex) -> Result<Complex> {
    check_pair(z1, z2)?;
    let cross = z1 * z2.conj() - z1.conj() * z2;
    if cross.norm() <= 1e-12 * z1.norm() * z2.norm() {
        return Err(Error::Collinear(
            "0, 1/conj(z1) and 1/conj(z2) are collinear".into(),
        ));
    }
    let (b1, b2) = (z1.conj(), z2.conj());
    Ok((b2 - b1) / (b1 * b2) * (z1 * b2 + b1 * z2) / cross)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > BISECT_WIDTH {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Points where the unit circle meets the inversion conic, sorted by argument.
///
/// Sign changes of `g` are isolated on a grid refined with the breakpoints of
/// the argument and the critical points of `g`, then bisected. A tangency
/// shows up as a critical point where `g` vanishes and is reported once.
pub fn conic_circle_intersections(
    z1: Complex,
    z2: Complex,
    tol: &Tolerances,
) -> Result<Vec<Complex>> {
    let conic = build_conic(z1, z2)?;
    let alpha = conic.frame.alpha;
    let g = |t: f64| conic.on_circle(t);
    let slope = |t: f64| conic.on_circle_slope(t);

    // One extra step past either end so a root at ±π is bracketed.
    let step = 2.0 * PI / SCAN_POINTS as f64;
    let mut grid: Vec<f64> = (0..=SCAN_POINTS + 2)
        .map(|k| -PI - step + step * k as f64)
        .chain([alpha - PI, -alpha, 0.0, alpha, PI - alpha])
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let mut critical = Vec::new();
    for pair in grid.windows(2) {
        let (s0, s1) = (slope(pair[0]), slope(pair[1]));
        if s0 == 0.0 {
            critical.push(pair[0]);
        } else if (s0 < 0.0) != (s1 < 0.0) && s1 != 0.0 {
            critical.push(bisect(slope, pair[0], pair[1]));
        }
    }

    let magnitude = z1.norm() * z2.norm() + z1.norm() + z2.norm();
    let mut found: Vec<f64> = critical
        .iter()
        .copied()
        .filter(|&t| g(t).abs() <= 1e-14 * magnitude)
        .collect();
    grid.extend(critical);
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    for pair in grid.windows(2) {
        let (g0, g1) = (g(pair[0]), g(pair[1]));
        if g0 == 0.0 {
            found.push(pair[0]);
        } else if g1 != 0.0 && (g0 < 0.0) != (g1 < 0.0) {
            found.push(bisect(g, pair[0], pair[1]));
        }
    }

    let mut points: Vec<Complex> = Vec::new();
    for t in found {
        let u = conic.frame.from_frame(Complex::from_polar(1.0, t));
        if points.iter().all(|p| (p - u).norm() > tol.cluster_eps) {
            points.push(u);
        }
    }
    points.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    Ok(points)
}

/// Largest distance from a point of either set to the nearest point of the other.
pub fn hausdorff_distance(a: &[Complex], b: &[Complex]) -> f64 {
    let one_way = |x: &[Complex], y: &[Complex]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
