//! Deterministic SVG rendering: 800×800 canvas, unit circle of radius 360 px
//! centred at (400, 400), every coordinate printed with three decimals.

use std::fmt::Write;

use alhazen::Complex;

use crate::report::{LevelSetReport, ReflectReport};

pub const SIZE: f64 = 800.0;
pub const UNIT: f64 = 360.0;
const MARGIN: f64 = 20.0;

const LAYER_COLORS: [&str; 6] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
];

struct Canvas {
    scale: f64,
    body: String,
}

impl Canvas {
    /// Keeps every point within `extent` of the origin on the canvas.
    fn new(extent: f64) -> Self {
        let fit = (SIZE / 2.0 - MARGIN) / extent;
        Canvas {
            scale: UNIT.min(fit),
            body: String::new(),
        }
    }

    fn x(&self, z: Complex) -> f64 {
        SIZE / 2.0 + self.scale * z.re
    }

    fn y(&self, z: Complex) -> f64 {
        SIZE / 2.0 - self.scale * z.im
    }

    fn circle(&mut self, center: Complex, r_px: f64, style: &str) {
        let (cx, cy) = (self.x(center), self.y(center));
        writeln!(
            self.body,
            r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r_px:.3}" {style}/>"#
        )
        .unwrap();
    }

    fn unit_circle(&mut self) {
        let r = self.scale;
        self.circle(
            Complex::new(0.0, 0.0),
            r,
            r##"fill="none" stroke="#000000" stroke-width="1.5""##,
        );
    }

    fn segment(&mut self, a: Complex, b: Complex, style: &str) {
        let (x1, y1, x2, y2) = (self.x(a), self.y(a), self.x(b), self.y(b));
        writeln!(
            self.body,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {style}/>"#
        )
        .unwrap();
    }

    fn path(&mut self, points: &[Complex], closed: bool, style: &str) {
        if points.is_empty() {
            return;
        }
        let mut d = String::new();
        for (i, &p) in points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{:.3},{:.3} ", self.x(p), self.y(p)).unwrap();
        }
        if closed {
            d.push('Z');
        }
        writeln!(self.body, r#"<path d="{}" {style}/>"#, d.trim_end()).unwrap();
    }

    /// Ellipse with foci `f1, f2` and focal sum `sum`.
    fn ellipse(&mut self, f1: Complex, f2: Complex, sum: f64, style: &str) {
        let center = (f1 + f2) / 2.0;
        let a = sum / 2.0;
        let c = (f2 - f1).norm() / 2.0;
        let b = (a * a - c * c).max(0.0).sqrt();
        let angle = -(f2 - f1).arg().to_degrees();
        let (cx, cy) = (self.x(center), self.y(center));
        let (rx, ry) = (a * self.scale, b * self.scale);
        writeln!(
            self.body,
            r#"<ellipse cx="{cx:.3}" cy="{cy:.3}" rx="{rx:.3}" ry="{ry:.3}" transform="rotate({angle:.3} {cx:.3} {cy:.3})" {style}/>"#
        )
        .unwrap();
    }

    fn label(&mut self, at: Complex, text: &str) {
        let (x, y) = (self.x(at) + 8.0, self.y(at) - 8.0);
        writeln!(
            self.body,
            r#"<text x="{x:.3}" y="{y:.3}" font-family="serif" font-size="18">{text}</text>"#
        )
        .unwrap();
    }

    fn finish(self, title: &str) -> String {
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#,
                "\n<title>{}</title>\n",
                r##"<rect width="800" height="800" fill="#ffffff"/>"##,
                "\n{}</svg>\n"
            ),
            title, self.body
        )
    }
}

/// Circle, foci, reflection points, the confocal ellipse through each
/// reflection point and the reflected path at the minimiser.
pub fn reflect_svg(r: &ReflectReport) -> String {
    let z1: Complex = r.z1.into();
    let z2: Complex = r.z2.into();
    let extent = [1.0, z1.norm(), z2.norm()].into_iter().fold(0.0, f64::max);
    let mut canvas = Canvas::new(extent);
    canvas.unit_circle();

    let minimizer: Complex = r.minimizer.into();
    for root in r.roots.iter().filter(|root| root.unimodular) {
        let u = Complex::new(root.re, root.im);
        if let Some(sum) = root.focal_sum {
            if (u - minimizer).norm() > 1e-12 {
                canvas.ellipse(
                    z1,
                    z2,
                    sum,
                    r##"fill="none" stroke="#9e9e9e" stroke-width="0.8""##,
                );
            }
        }
    }
    canvas.ellipse(
        z1,
        z2,
        r.path_length,
        r##"fill="none" stroke="#1f5fbf" stroke-width="2""##,
    );
    canvas.segment(z1, minimizer, r##"stroke="#c0392b" stroke-width="1.5""##);
    canvas.segment(minimizer, z2, r##"stroke="#c0392b" stroke-width="1.5""##);
    canvas.segment(
        Complex::new(0.0, 0.0),
        minimizer,
        r##"stroke="#555555" stroke-width="0.8" stroke-dasharray="4 4""##,
    );

    for root in r.roots.iter().filter(|root| root.unimodular) {
        canvas.circle(Complex::new(root.re, root.im), 5.0, r##"fill="#000000""##);
    }
    canvas.circle(
        minimizer,
        7.0,
        r##"fill="none" stroke="#c0392b" stroke-width="2""##,
    );
    for (z, name) in [(z1, "z1"), (z2, "z2")] {
        canvas.circle(z, 4.0, r##"fill="#1f5fbf""##);
        canvas.label(z, name);
    }
    canvas.circle(Complex::new(0.0, 0.0), 2.5, r##"fill="#000000""##);
    canvas.label(minimizer, "u");
    canvas.finish(&format!("reflection points, {} problem", r.kind))
}

/// One closed curve per level, plus the center and the unit circle.
pub fn levelset_svg(r: &LevelSetReport) -> String {
    let mut canvas = Canvas::new(1.0);
    canvas.unit_circle();
    for (i, layer) in r.layers.iter().enumerate() {
        let points: Vec<Complex> = layer
            .points
            .iter()
            .map(|p| Complex::new(p.re, p.im))
            .collect();
        let color = LAYER_COLORS[i % LAYER_COLORS.len()];
        let style = format!(r#"fill="none" stroke="{color}" stroke-width="1.5""#);
        canvas.path(&points, layer.skipped == 0, &style);
    }
    canvas.circle(Complex::new(r.c, 0.0), 3.0, r##"fill="#000000""##);
    let levels: Vec<String> = r.layers.iter().map(|l| l.t.to_string()).collect();
    canvas.finish(&format!(
        "level sets of s_D about {} for t = {}",
        r.c,
        levels.join(", ")
    ))
}
