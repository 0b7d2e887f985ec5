//! How many reflection points there are, and with what multiplicity.
//!
//! The quartic always has at least two unimodular roots. It has four simple
//! ones when `|z1 + z2| < |z1 z2|` and exactly two simple ones when
//! `|z1 + z2| > 2|z1 z2|`; in the band between, both behaviours occur and the
//! profile is reported without a prediction.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::numerics::{solve_polynomial, Complex, Polynomial, RootSet, Tolerances};
use crate::reflect::{build_quartic, AlhazenQuartic};

/// Multiplicity structure of the unimodular roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootPattern {
    FourSimple,
    TwoSimpleTwoOff,
    DoublePlusTwoSimple,
    TriplePlusSimple,
    /// One point at the origin: the quartic drops to degree three.
    Cubic,
    /// Two double unimodular roots. Never occurs for a reflection quartic.
    TwoDoubles,
    /// A double unimodular root and two roots off the circle. Never occurs.
    DoublePlusTwoOff,
    /// Anything else, such as fewer than two unimodular roots.
    Degenerate,
}

impl RootPattern {
    /// Whether the pattern can arise from a reflection quartic.
    pub fn is_permitted(self) -> bool {
        !matches!(
            self,
            RootPattern::TwoDoubles | RootPattern::DoublePlusTwoOff | RootPattern::Degenerate
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prediction {
    Four,
    Two,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootProfile {
    pub z1: Complex,
    pub z2: Complex,
    pub roots: RootSet,
    /// Unimodular roots counted with multiplicity.
    pub count_unimodular: usize,
    pub pattern: RootPattern,
    /// `|z1 + z2| / |z1 z2|`, infinite when one point is the origin.
    pub ratio: f64,
    pub prediction: Prediction,
}

impl RootProfile {
    /// False only when a definite prediction is contradicted.
    pub fn matches_prediction(&self) -> bool {
        match self.prediction {
            Prediction::Four => self.pattern == RootPattern::FourSimple,
            Prediction::Two => {
                self.count_unimodular == 2 && self.roots.unimodular().all(|r| r.multiplicity == 1)
            }
            Prediction::Indeterminate => true,
        }
    }

    /// Largest distance from `1/v̄` to the nearest off-circle root, over all
    /// off-circle roots `v`.
    pub fn inversion_pairing_defect(&self) -> f64 {
        let off: Vec<Complex> = self.roots.off_circle().map(|r| r.value).collect();
        off.iter()
            .filter(|v| v.norm() > 0.0)
            .map(|v| {
                let mirror = v.conj().inv();
                off.iter()
                    .map(|w| (w - mirror).norm() / mirror.norm().max(1.0))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

pub fn predict(z1: Complex, z2: Complex) -> (f64, Prediction) {
    let sum = (z1 + z2).norm();
    let product = (z1 * z2).norm();
    let ratio = sum / product;
    let prediction = if sum < product {
        Prediction::Four
    } else if sum > 2.0 * product {
        Prediction::Two
    } else {
        Prediction::Indeterminate
    };
    (ratio, prediction)
}

fn pattern_of(roots: &RootSet, degree: usize) -> RootPattern {
    if degree == 3 {
        return RootPattern::Cubic;
    }
    if degree != 4 {
        return RootPattern::Degenerate;
    }
    let mut on: Vec<usize> = roots.unimodular().map(|r| r.multiplicity).collect();
    on.sort_unstable_by(|a, b| b.cmp(a));
    let off: usize = roots.off_circle().map(|r| r.multiplicity).sum();
    match (on.as_slice(), off) {
        ([1, 1, 1, 1], 0) => RootPattern::FourSimple,
        ([1, 1], 2) => RootPattern::TwoSimpleTwoOff,
        ([2, 1, 1], 0) => RootPattern::DoublePlusTwoSimple,
        ([3, 1], 0) => RootPattern::TriplePlusSimple,
        ([2, 2], 0) => RootPattern::TwoDoubles,
        ([2], 2) => RootPattern::DoublePlusTwoOff,
        _ => RootPattern::Degenerate,
    }
}

pub fn profile_roots(z1: Complex, z2: Complex, tol: &Tolerances) -> Result<RootProfile> {
    let quartic = build_quartic(z1, z2)?;
    let roots = solve_polynomial(&quartic.poly, tol)?;
    let degree = quartic
        .poly
        .effective_degree(tol.degeneracy_eps)
        .unwrap_or(0);
    let (ratio, prediction) = predict(z1, z2);
    Ok(RootProfile {
        z1,
        z2,
        count_unimodular: roots.unimodular_count(),
        pattern: pattern_of(&roots, degree),
        roots,
        ratio,
        prediction,
    })
}

/// The two one-parameter families of pairs whose quartic is `(u − 1)³(u + 1)`
/// up to a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusBranch {
    /// `z1 = t`, `z2 = t/(2t − 1)` for `−1 < t < √2 − 1`, `t ≠ 0`.
    Real,
    /// `z1 = ½ + ½e^{iθ}`, `z2 = z̄1`, with `z1 ∉ {0, 1}`.
    Conjugate,
}

pub fn triple_root_locus(branch: LocusBranch, param: f64) -> Result<(Complex, Complex)> {
    if !param.is_finite() {
        return Err(Error::InvalidInput("non-finite parameter".into()));
    }
    match branch {
        LocusBranch::Real => {
            if !(param > -1.0 && param < SQRT_2 - 1.0) || param == 0.0 {
                return Err(Error::Domain(
                    "real branch needs -1 < t < sqrt(2) - 1 and t != 0".into(),
                ));
            }
            Ok((
                Complex::new(param, 0.0),
                Complex::new(param / (2.0 * param - 1.0), 0.0),
            ))
        }
        LocusBranch::Conjugate => {
            let z1 = Complex::new(0.5, 0.0) + Complex::from_polar(0.5, param);
            if z1.norm() < 1e-12 || (z1 - 1.0).norm() < 1e-12 {
                return Err(Error::Domain(
                    "conjugate branch excludes z1 = 0 and z1 = 1".into(),
                ));
            }
            Ok((z1, z1.conj()))
        }
    }
}

fn is_self_inversive(p: &Polynomial, degree: usize) -> bool {
    let c = p.coeffs();
    if c[0].norm() == 0.0 {
        return false;
    }
    let rotation = c[degree] / c[0].conj();
    let scale = p.max_modulus();
    (rotation.norm() - 1.0).abs() <= 1e-12
        && (0..=degree).all(|k| (c[k] - rotation * c[degree - k].conj()).norm() <= 1e-12 * scale)
}

/// Cohn's criterion: a self-inversive polynomial has all its roots on the unit
/// circle iff its derivative has all its roots in the closed unit disk.
pub fn cohn_test_poly(p: &Polynomial, tol: &Tolerances) -> Result<bool> {
    let degree = p
        .effective_degree(tol.degeneracy_eps)
        .ok_or(Error::ConstantPolynomial)?;
    if degree < 2 {
        return Err(Error::Degenerate("degree below two".into()));
    }
    if !is_self_inversive(p, degree) {
        return Err(Error::InvalidInput(
            "polynomial is not self-inversive".into(),
        ));
    }
    let critical = solve_polynomial(&p.derivative(), tol)?;
    Ok(critical
        .roots()
        .iter()
        .all(|r| r.value.norm() <= 1.0 + tol.unimodular_eps))
}

pub fn cohn_test(q: &AlhazenQuartic, tol: &Tolerances) -> Result<bool> {
    if q.poly.effective_degree(tol.degeneracy_eps) != Some(4) {
        return Err(Error::Degenerate("quartic has degree below four".into()));
    }
    cohn_test_poly(&q.poly, tol)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SharpnessRow {
    pub t: f64,
    pub ratio: f64,
    pub count: usize,
}

/// For each `t`, the pair `z1 = 1 + t`, `z2 = (1 + t)e^{it}`: its ratio
/// `|z1 + z2|/|z1 z2| = 2cos(t/2)/(1 + t)` rises to 2 as `t → 0⁺` while all four
/// roots stay on the circle.
pub fn sharpness_scan(t_values: &[f64], tol: &Tolerances) -> Result<Vec<SharpnessRow>> {
    t_values
        .iter()
        .map(|&t| {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "sharpness parameter must be positive, got {t}"
                )));
            }
            let z1 = Complex::new(1.0 + t, 0.0);
            let z2 = Complex::from_polar(1.0 + t, t);
            let profile = profile_roots(z1, z2, tol)?;
            Ok(SharpnessRow {
                t,
                ratio: profile.ratio,
                count: profile.count_unimodular,
            })
        })
        .collect()
}
