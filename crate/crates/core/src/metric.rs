//! The triangular ratio metric of the unit disk,
//!
//! ```text
//! s_D(z1, z2) = sup_{ζ ∈ ∂D} |z1 − z2| / (|z1 − ζ| + |ζ − z2|),
//! ```
//!
//! evaluated through the minimising reflection point, together with a
//! brute-force oracle, the algebraic curve containing the boundary of a metric
//! ball, and a level-set tracer.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::numerics::{is_finite, Complex, Tolerances};
use crate::reflect::{focal_sum, solve_interior};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricQuery {
    pub z1: Complex,
    pub z2: Complex,
    pub result: f64,
    /// Boundary point at which the supremum is attained.
    pub witness: Complex,
}

fn check_interior(z1: Complex, z2: Complex) -> Result<()> {
    if !is_finite(z1) || !is_finite(z2) {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    if z1.norm() >= 1.0 || z2.norm() >= 1.0 {
        return Err(Error::Domain(
            "points must lie in the open unit disk".into(),
        ));
    }
    Ok(())
}

fn direction(z: Complex) -> Complex {
    if z.norm() == 0.0 {
        Complex::new(1.0, 0.0)
    } else {
        z / z.norm()
    }
}

pub fn s_disk(z1: Complex, z2: Complex, tol: &Tolerances) -> Result<MetricQuery> {
    check_interior(z1, z2)?;
    let zero = Complex::new(0.0, 0.0);
    let query = |result, witness| MetricQuery {
        z1,
        z2,
        result,
        witness,
    };

    if z1 == z2 {
        return Ok(query(0.0, direction(z1)));
    }
    if z1 == zero || z2 == zero {
        let z = if z1 == zero { z2 } else { z1 };
        let r = z.norm();
        return Ok(query(r / (2.0 - r), direction(z)));
    }
    if z1 == -z2 {
        // Tie between ±z1/|z1|; keep the one with the larger real part.
        let d = direction(z1);
        let witness = if (d.re, d.im) >= (-d.re, -d.im) {
            d
        } else {
            -d
        };
        return Ok(query(z1.norm(), witness));
    }

    let solution = solve_interior(z1, z2, tol)?;
    Ok(query((z1 - z2).norm() / solution.path_length, solution.u))
}

/// Unit points `e^{2πik/n}` reused across oracle evaluations.
#[derive(Clone, Debug)]
pub struct CircleGrid {
    points: Vec<(f64, f64)>,
}

impl CircleGrid {
    pub fn new(n: usize) -> Self {
        let points = (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                (t.cos(), t.sin())
            })
            .collect();
        CircleGrid { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn angle(&self, k: isize) -> f64 {
        TAU * k as f64 / self.points.len() as f64
    }
}

/// Minimises `t ↦ |z1 − e^{it}| + |z2 − e^{it}|` by exhaustive search on `n`
/// grid angles followed by golden-section refinement of the best local minima.
///
/// Returns `(t, minimum)`. Makes no use of the quartic.
pub fn focal_sum_minimum_oracle(z1: Complex, z2: Complex, n: usize) -> (f64, f64) {
    focal_sum_minimum_on(&CircleGrid::new(n), z1, z2)
}

pub fn focal_sum_minimum_on(grid: &CircleGrid, z1: Complex, z2: Complex) -> (f64, f64) {
    let n = grid.len();
    let values: Vec<f64> = grid
        .points
        .iter()
        .map(|&(x, y)| {
            let (a, b) = (z1.re - x, z1.im - y);
            let (c, d) = (z2.re - x, z2.im - y);
            (a * a + b * b).sqrt() + (c * c + d * d).sqrt()
        })
        .collect();

    let mut minima: Vec<usize> = (0..n)
        .filter(|&k| {
            let prev = values[(k + n - 1) % n];
            let next = values[(k + 1) % n];
            values[k] <= prev && values[k] <= next
        })
        .collect();
    minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    minima.truncate(4);

    let f = |t: f64| focal_sum(z1, z2, Complex::from_polar(1.0, t));
    minima
        .into_iter()
        .map(|k| golden_section(f, grid.angle(k as isize - 1), grid.angle(k as isize + 1)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((0.0, f(0.0)))
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-14 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        }
        if x1 >= x2 {
            break;
        }
    }
    let mid = 0.5 * (a + b);
    [(x1, f1), (x2, f2), (mid, f(mid))]
        .into_iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .expect("three candidates")
}

/// Direct evaluation of the supremum defining `s_D` on an `n`-point grid with
/// golden-section refinement.
pub fn s_disk_oracle(z1: Complex, z2: Complex, n: usize) -> f64 {
    s_disk_oracle_on(&CircleGrid::new(n), z1, z2)
}

pub fn s_disk_oracle_on(grid: &CircleGrid, z1: Complex, z2: Complex) -> f64 {
    let d = (z1 - z2).norm();
    if d == 0.0 {
        return 0.0;
    }
    d / focal_sum_minimum_on(grid, z1, z2).1
}

/// Arithmetic needed to evaluate the ball polynomial, implemented both for
/// complex numbers and for magnitudes (where subtraction adds), so the same
/// transcription yields the value and its term scale.
trait Ring: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn lit(x: f64) -> Self;

    fn pow(self, n: u32) -> Self {
        (1..n).fold(self, |acc, _| acc * self)
    }
}

impl Ring for Complex {
    fn lit(x: f64) -> Self {
        Complex::new(x, 0.0)
    }
}

/// Absolute-value arithmetic: every operation bounds the modulus of its
/// complex counterpart, so subtraction adds.
#[derive(Clone, Copy, Debug)]
struct Magnitude(f64);

impl Add for Magnitude {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Magnitude(self.0 + rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Magnitude {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Magnitude(self.0 + rhs.0)
    }
}

impl Mul for Magnitude {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Magnitude(self.0 * rhs.0)
    }
}

impl Ring for Magnitude {
    fn lit(x: f64) -> Self {
        Magnitude(x.abs())
    }
}

/// The five contributions (t⁸, t⁶, t⁴, t², t⁰) of `B_{c,t}(w)`, with `v = w̄`.
fn ball_terms<R: Ring>(c: R, w: R, v: R, t: R) -> [R; 5] {
    let n = R::lit;
    let wv = w * v;
    let s = w + v;
    let cw = c - w;
    let cv = c - v;

    let a = (v * c - n(1.0)) * (w * c - n(1.0));
    let t8 = a * ((c * c + wv - n(2.0)).pow(2) - n(4.0) * a).pow(2);

    let t6 = cw
        * cv
        * (n(4.0) * v * w * c.pow(8)
            - n(3.0) * s * c.pow(7)
            - n(2.0) * (n(2.0) * v.pow(2) * w.pow(2) + n(2.0) * v * w - n(1.0)) * c.pow(6)
            - s * (n(13.0) * wv + n(2.0)) * c.pow(5)
            - n(2.0)
                * (n(2.0) * v.pow(3) * w.pow(3)
                    - (n(36.0) * v.pow(2) + n(10.0)) * w.pow(2)
                    - n(27.0) * v * w
                    - n(10.0) * v.pow(2)
                    - n(4.0))
                * c.pow(4)
            - s * (n(13.0) * v.pow(2) * w.pow(2) + n(92.0) * v * w + n(32.0)) * c.pow(3)
            + n(2.0)
                * (wv
                    * (n(2.0) * v.pow(3) * w.pow(3) - n(2.0) * v.pow(2) * w.pow(2)
                        + n(27.0) * v * w
                        + n(48.0))
                    + n(2.0) * (n(5.0) * wv + n(2.0)) * (w.pow(2) + v.pow(2)))
                * c.pow(2)
            - wv * s * (n(3.0) * v.pow(2) * w.pow(2) + n(2.0) * v * w + n(32.0)) * c
            + n(2.0) * w.pow(2) * v.pow(2) * (wv + n(4.0)));

    let t4 = cw.pow(2)
        * cv.pow(2)
        * (n(6.0) * v * w * c.pow(6) - n(3.0) * s * c.pow(5)
            + (n(4.0) * v.pow(2) * w.pow(2) + n(16.0) * v * w + n(1.0)) * c.pow(4)
            - n(2.0) * s * (n(13.0) * wv + n(5.0)) * c.pow(3)
            + (n(6.0) * v.pow(3) * w.pow(3)
                + (n(16.0) * v.pow(2) + n(1.0)) * w.pow(2)
                + n(52.0) * v * w
                + v.pow(2))
                * c.pow(2)
            - wv * s * (n(3.0) * wv + n(10.0)) * c
            + v.pow(2) * w.pow(2));

    let t2 = c
        * cw.pow(3)
        * cv.pow(3)
        * (n(4.0) * wv * c * (c.pow(2) + wv + n(3.0)) - (c.pow(2) + wv) * s);

    let t0 = c.pow(2) * wv * cw.pow(4) * cv.pow(4);

    let zero = n(0.0);
    [
        t8 * t.pow(8),
        zero - t6 * t.pow(6),
        t4 * t.pow(4),
        zero - t2 * t.pow(2),
        t0,
    ]
}

/// Value of the ball polynomial at a point, with diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallValue {
    pub value: f64,
    /// Imaginary part left over by the complex evaluation; zero in exact arithmetic.
    pub imaginary: f64,
    /// Sum of the absolute values of every monomial, a bound on rounding error.
    pub scale: f64,
}

impl BallValue {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.value.abs() / self.scale
        }
    }
}

/// The algebraic curve `B_{c,t}(w) = 0` containing the boundary of the metric
/// ball `{w : s_D(c, w) < t}` for a center `c` on the non-negative real axis.
///
/// The curve can have components that are not part of the ball boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallCurve {
    c: f64,
    t: f64,
}

impl BallCurve {
    /// Accepts `0 <= c < 1` and `0 <= t < 1`.
    pub fn new(c: f64, t: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&c) || !(0.0..1.0).contains(&t) {
            return Err(Error::InvalidInput(
                "ball curve needs 0 <= c < 1 and 0 <= t < 1".into(),
            ));
        }
        Ok(BallCurve { c, t })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn eval(&self, w: Complex) -> BallValue {
        let c = Complex::new(self.c, 0.0);
        let t = Complex::new(self.t, 0.0);
        let value: Complex = ball_terms(c, w, w.conj(), t).into_iter().sum();
        let scale = ball_terms(
            Magnitude(self.c),
            Magnitude(w.norm()),
            Magnitude(w.norm()),
            Magnitude(self.t),
        )
        .iter()
        .map(|m| m.0)
        .sum();
        BallValue {
            value: value.re,
            imaginary: value.im,
            scale,
        }
    }
}

pub fn ball_poly_eval(curve: &BallCurve, w: Complex) -> f64 {
    curve.eval(w).value
}

/// Ball polynomial for an arbitrary center: rotates `w` so the center lies on
/// the positive real axis.
pub fn ball_poly_about(center: Complex, t: f64, w: Complex) -> Result<BallValue> {
    let r = center.norm();
    let curve = BallCurve::new(r, t)?;
    let rotation = if r == 0.0 {
        Complex::new(1.0, 0.0)
    } else {
        center.conj() / r
    };
    Ok(curve.eval(w * rotation))
}

/// `|w|² c² |c − w|⁸`, the curve at `t = 0`.
pub fn ball_poly_at_zero_radius(c: f64, w: Complex) -> f64 {
    w.norm_sqr() * c * c * (Complex::new(c, 0.0) - w).norm_sqr().powi(4)
}

/// `|w|⁴ t⁴ ((t−1)²|w|² − 4t²)((t+1)²|w|² − 4t²)`, the curve at `c = 0`.
pub fn ball_poly_at_center(t: f64, w: Complex) -> f64 {
    let p = w.norm_sqr();
    p * p
        * t.powi(4)
        * ((t - 1.0).powi(2) * p - 4.0 * t * t)
        * ((t + 1.0).powi(2) * p - 4.0 * t * t)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelPoint {
    pub theta: f64,
    pub w: Complex,
    /// `s_D(c, w) − t`.
    pub s_residual: f64,
    /// `|B_{c,t}(w)|` relative to its term scale.
    pub b_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelSet {
    pub c: f64,
    pub t: f64,
    pub points: Vec<LevelPoint>,
    /// Directions along which the level `t` was not reached inside the disk.
    pub skipped: usize,
}

/// Distance from `c` to the unit circle along direction `θ`.
fn ray_length(c: f64, theta: f64) -> f64 {
    let (s, co) = theta.sin_cos();
    -c * co + (1.0 - c * c * s * s).sqrt()
}

/// Traces `{w : s_D(c, w) = t}` radially from `c`: for each of `n_angles`
/// directions the crossing radius is bisected to `1e-12`.
///
/// Relies on `s_D(c, ·)` increasing along rays from `c`; see
/// [`ray_monotonicity_violation`].
pub fn level_set(c: f64, t: f64, n_angles: usize, tol: &Tolerances) -> Result<LevelSet> {
    if !(0.0..1.0).contains(&c) {
        return Err(Error::InvalidInput("center must satisfy 0 <= c < 1".into()));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidInput("level must satisfy 0 < t < 1".into()));
    }
    if n_angles < 8 {
        return Err(Error::InvalidInput("at least 8 angles required".into()));
    }
    let center = Complex::new(c, 0.0);
    let curve = BallCurve::new(c, t)?;
    let mut points = Vec::with_capacity(n_angles);
    let mut skipped = 0;

    for k in 0..n_angles {
        let theta = TAU * k as f64 / n_angles as f64;
        let dir = Complex::from_polar(1.0, theta);
        let at = |rho: f64| s_disk(center, center + dir * rho, tol).map(|q| q.result);

        let mut lo = 0.0;
        let mut hi = ray_length(c, theta) * (1.0 - 1e-12);
        if at(hi)? < t {
            skipped += 1;
            continue;
        }
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if at(mid)? < t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let rho = 0.5 * (lo + hi);
        let w = center + dir * rho;
        points.push(LevelPoint {
            theta,
            w,
            s_residual: at(rho)? - t,
            b_residual: curve.eval(w).relative(),
        });
    }

    Ok(LevelSet {
        c,
        t,
        points,
        skipped,
    })
}

/// Samples `s_D(c, c + ρe^{iθ})` at `samples` radii up to the circle and
/// reports the first decrease larger than `1e-12`, as `(ρ, drop)`.
pub fn ray_monotonicity_violation(
    c: f64,
    theta: f64,
    samples: usize,
    tol: &Tolerances,
) -> Result<Option<(f64, f64)>> {
    let center = Complex::new(c, 0.0);
    let dir = Complex::from_polar(1.0, theta);
    let len = ray_length(c, theta);
    let mut prev = 0.0;
    for k in 1..samples {
        let rho = len * k as f64 / samples as f64;
        let s = s_disk(center, center + dir * rho, tol)?.result;
        if s < prev - 1e-12 {
            return Ok(Some((rho, prev - s)));
        }
        prev = s;
    }
    Ok(None)
}

/// Angle in `[0, 2π)`, used for ordering output.
pub fn angle_0_2pi(z: Complex) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}
