//! The four reference figures as SVG.

use alhazen::{Complex, Result, Tolerances};

use crate::app::{levelset_report, reflect_report, Kind};
use crate::svg::{levelset_svg, reflect_svg};

/// `(file stem, description)` for every figure, in order.
pub const FIGURES: [(&str, &str); 4] = [
    ("fig1", "largest ellipse with foci z1, z2 inside the disk"),
    (
        "fig2",
        "four reflection points for z1 = 0.5+0.5i, z2 = -0.8i",
    ),
    ("fig3", "two reflection points for z1 = 0.5+0.5i, z2 = 0.5"),
    ("fig4", "level sets of s_D about 0.3"),
];

/// Levels drawn in the fourth figure.
pub const LEVELS: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.6];

pub fn figure(stem: &str) -> Result<String> {
    let tol = Tolerances::default();
    let pair = |z1: Complex, z2: Complex| {
        reflect_report(z1, z2, Some(Kind::Interior), &tol).map(|r| reflect_svg(&r))
    };
    match stem {
        "fig1" => pair(Complex::new(-0.4, 0.3), Complex::new(0.5, 0.2)),
        "fig2" => pair(Complex::new(0.5, 0.5), Complex::new(0.0, -0.8)),
        "fig3" => pair(Complex::new(0.5, 0.5), Complex::new(0.5, 0.0)),
        "fig4" => levelset_report(0.3, &LEVELS, 720, &tol).map(|r| levelset_svg(&r)),
        other => Err(alhazen::Error::InvalidInput(format!(
            "unknown figure {other:?}"
        ))),
    }
}
