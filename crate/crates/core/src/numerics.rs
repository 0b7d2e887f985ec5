//! Complex polynomials of low degree and a deterministic root finder for them.
//!
//! Roots are found in closed form up to degree two and by Aberth–Ehrlich
//! simultaneous iteration above that. Approximations are then Newton-polished
//! and grouped into clusters, so that a root of multiplicity `k` comes back as a
//! single [`Root`] with `multiplicity == k`.
//!
//! Multiple roots deserve care: in double precision a triple root is only
//! resolved to about `eps^(1/3) ≈ 6e-6`, well outside the default
//! `cluster_eps`. Nearby clusters are therefore offered a second, wider merge
//! which is only accepted when the polished centroid annihilates `P`, `P'`, ...
//! `P^(k-1)` to within [`CERTIFY_RESIDUAL`].

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Two clusters closer than this are candidates for a certified merge.
pub const CERTIFY_RADIUS: f64 = 1e-4;

/// Relative residual each of `P, P', ..., P^(k-1)` must meet for a merge into a
/// `k`-fold root to be accepted.
pub const CERTIFY_RESIDUAL: f64 = 1e-10;

const ABERTH_MAX_ITER: usize = 200;
const NEWTON_STEPS: usize = 3;
const INITIAL_ANGLE_OFFSET: f64 = 0.4;

#[inline]
pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Builds `r e^{iθ}`.
#[inline]
pub fn polar(r: f64, theta: f64) -> Complex {
    Complex::from_polar(r, theta)
}

#[inline]
pub fn is_unimodular(z: Complex, eps: f64) -> bool {
    (z.norm() - 1.0).abs() <= eps
}

/// Numerical tolerances shared by every solver in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Newton-polish residual target, relative to the absolute-value polynomial.
    pub root_eps: f64,
    /// Half-width of the band `||u| - 1| <= eps` counted as the unit circle.
    pub unimodular_eps: f64,
    /// Approximations closer than this are one root.
    pub cluster_eps: f64,
    /// Coefficients below `degeneracy_eps * max|coeff|` are treated as zero.
    pub degeneracy_eps: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root_eps: 1e-12,
            unimodular_eps: 1e-10,
            cluster_eps: 1e-6,
            degeneracy_eps: 1e-14,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.root_eps,
            self.unimodular_eps,
            self.cluster_eps,
            self.degeneracy_eps,
        ];
        if all.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInput(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.cluster_eps <= self.root_eps {
            return Err(Error::InvalidInput(
                "cluster_eps must exceed root_eps".into(),
            ));
        }
        Ok(())
    }

    pub fn with_unimodular_eps(mut self, eps: f64) -> Self {
        self.unimodular_eps = eps;
        self
    }
}

/// Polynomial with complex coefficients stored from degree 0 upward.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    /// `leading * Π (u - root)^multiplicity`.
    pub fn from_roots(leading: Complex, roots: &[(Complex, usize)]) -> Self {
        let mut coeffs = vec![leading];
        for &(r, m) in roots {
            for _ in 0..m {
                let mut next = vec![Complex::new(0.0, 0.0); coeffs.len() + 1];
                for (k, &c) in coeffs.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * r;
                }
                coeffs = next;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|&c| is_finite(c))
    }

    /// Index of the last coefficient whose modulus exceeds
    /// `degeneracy_eps * max|coeff|`; `None` for the zero polynomial.
    pub fn effective_degree(&self, degeneracy_eps: f64) -> Option<usize> {
        let cutoff = degeneracy_eps * self.max_modulus();
        self.coeffs.iter().rposition(|c| c.norm() > cutoff)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `Σ |a_k| r^k`, the natural scale for the rounding error of [`eval`](Self::eval) at `|z| = r`.
    pub fn eval_abs(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn nth_derivative(&self, n: usize) -> Polynomial {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// `|p(z)| / Σ|a_k||z|^k`; zero when the scale vanishes.
    pub fn relative_residual(&self, z: Complex) -> f64 {
        let scale = self.eval_abs(z.norm());
        if scale == 0.0 {
            0.0
        } else {
            self.eval(z).norm() / scale
        }
    }

    fn truncated(&self, degree: usize) -> Polynomial {
        Polynomial::new(self.coeffs[..=degree].to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Complex,
    pub multiplicity: usize,
    pub unimodular: bool,
}

/// Roots of a polynomial with multiplicities, sorted by argument then modulus.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RootSet {
    roots: Vec<Root>,
}

impl RootSet {
    fn from_clusters(clusters: Vec<(Complex, usize)>, tol: &Tolerances) -> Self {
        let mut roots: Vec<Root> = clusters
            .into_iter()
            .map(|(value, multiplicity)| Root {
                value,
                multiplicity,
                unimodular: is_unimodular(value, tol.unimodular_eps),
            })
            .collect();
        roots.sort_by(|a, b| {
            a.value
                .arg()
                .total_cmp(&b.value.arg())
                .then(a.value.norm().total_cmp(&b.value.norm()))
        });
        RootSet { roots }
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn unimodular(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.unimodular)
    }

    pub fn off_circle(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !r.unimodular)
    }

    /// Number of unimodular roots counted with multiplicity.
    pub fn unimodular_count(&self) -> usize {
        self.unimodular().map(|r| r.multiplicity).sum()
    }

    /// Every root repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<Complex> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }
}

/// All roots of `p` with multiplicity.
///
/// The residual of every returned root satisfies
/// `|p(u)| <= root_eps * Σ|a_k||u|^k` unless the root is multiple, in which case
/// the certification residuals apply instead.
pub fn solve_polynomial(p: &Polynomial, tol: &Tolerances) -> Result<RootSet> {
    tol.validate()?;
    if !p.is_finite() {
        return Err(Error::InvalidInput("non-finite coefficient".into()));
    }
    // Unit scale keeps moduli and complex divisions clear of overflow.
    let scale = p
        .coeffs
        .iter()
        .map(|c| c.re.abs().max(c.im.abs()))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::ConstantPolynomial);
    }
    let scaled = Polynomial::new(p.coeffs.iter().map(|c| c / scale).collect());
    let degree = match scaled.effective_degree(tol.degeneracy_eps) {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    let poly = scaled.truncated(degree);
    let cutoff = tol.degeneracy_eps * poly.max_modulus();

    // Deflate roots at the origin exactly.
    let zeros = poly
        .coeffs
        .iter()
        .take_while(|c| c.norm() <= cutoff)
        .count();
    let reduced = Polynomial::new(poly.coeffs[zeros..].to_vec());

    let mut raw = vec![Complex::new(0.0, 0.0); zeros];
    raw.extend(match reduced.coeffs.len() - 1 {
        0 => Vec::new(),
        1 => vec![-reduced.coeffs[0] / reduced.coeffs[1]],
        2 => {
            let c = &reduced.coeffs;
            let [r1, r2] = quadratic_roots(c[2], c[1], c[0]);
            vec![newton_polish(&reduced, r1), newton_polish(&reduced, r2)]
        }
        _ => aberth_roots(&reduced, tol)?,
    });

    let clusters = cluster_roots(&raw, tol)
        .roots
        .iter()
        .map(|r| (r.value, r.multiplicity))
        .collect();
    let merged = merge_certified(&poly, clusters);
    if merged.iter().any(|(z, _)| !is_finite(*z)) {
        return Err(Error::NumericalFailure("root iteration diverged".into()));
    }
    Ok(RootSet::from_clusters(merged, tol))
}

/// Roots of `a u² + b u + c` (`a != 0`) without catastrophic cancellation.
pub fn quadratic_roots(a: Complex, b: Complex, c: Complex) -> [Complex; 2] {
    let disc = (b * b - a * c * 4.0).sqrt();
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q.norm() == 0.0 {
        let zero = Complex::new(0.0, 0.0);
        return [zero, zero];
    }
    [q / a, c / q]
}

/// Aberth–Ehrlich simultaneous iteration followed by Newton polishing.
///
/// Starts from `n` points on the circle of radius `1 + max|a_k / a_n|` and runs
/// at most 200 sweeps. Works for any degree `n >= 1` and is fully
/// deterministic.
pub fn aberth_roots(p: &Polynomial, tol: &Tolerances) -> Result<Vec<Complex>> {
    let degree = match p.effective_degree(tol.degeneracy_eps) {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    let lead = p.coeffs[degree];
    let monic = Polynomial::new(p.coeffs[..=degree].iter().map(|&c| c / lead).collect());
    let dmonic = monic.derivative();

    let radius = 1.0
        + monic.coeffs[..degree]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex> = (0..degree)
        .map(|k| {
            let theta =
                2.0 * std::f64::consts::PI * k as f64 / degree as f64 + INITIAL_ANGLE_OFFSET;
            polar(radius, theta)
        })
        .collect();
    let mut frozen = vec![false; degree];

    for _ in 0..ABERTH_MAX_ITER {
        let mut moved = false;
        for i in 0..degree {
            if frozen[i] {
                continue;
            }
            let zi = z[i];
            let value = monic.eval(zi);
            if value.norm() <= 4.0 * f64::EPSILON * monic.eval_abs(zi.norm()) {
                frozen[i] = true;
                continue;
            }
            let newton = value / dmonic.eval(zi);
            let repulsion: Complex = (0..degree)
                .filter(|&j| j != i && z[j] != zi)
                .map(|j| (zi - z[j]).inv())
                .sum();
            let mut delta = newton / (Complex::new(1.0, 0.0) - newton * repulsion);
            if !is_finite(delta) {
                delta = if is_finite(newton) {
                    newton
                } else {
                    Complex::new(0.0, 0.0)
                };
            }
            z[i] = zi - delta;
            if delta.norm() > 4.0 * f64::EPSILON * z[i].norm().max(1.0) {
                moved = true;
            } else {
                frozen[i] = true;
            }
        }
        if !moved {
            break;
        }
    }

    Ok(z.into_iter().map(|r| newton_polish(&monic, r)).collect())
}

fn newton_polish(p: &Polynomial, start: Complex) -> Complex {
    newton_on(p, &p.derivative(), start, NEWTON_STEPS)
}

/// Newton's method on `p`, accepting a step only if it lowers `|p|`.
fn newton_on(p: &Polynomial, dp: &Polynomial, start: Complex, steps: usize) -> Complex {
    let mut z = start;
    let mut value = p.eval(z).norm();
    for _ in 0..steps {
        if value == 0.0 {
            break;
        }
        let step = p.eval(z) / dp.eval(z);
        let candidate = z - step;
        if !is_finite(candidate) {
            break;
        }
        let next = p.eval(candidate).norm();
        if next < value {
            z = candidate;
            value = next;
        } else {
            break;
        }
    }
    z
}

/// Greedily groups approximations lying within `cluster_eps` of some member of
/// an existing group; each group becomes one root at its centroid.
pub fn cluster_roots(raw: &[Complex], tol: &Tolerances) -> RootSet {
    let mut groups: Vec<Vec<Complex>> = Vec::new();
    for &z in raw {
        match groups
            .iter_mut()
            .find(|g| g.iter().any(|&m| (m - z).norm() <= tol.cluster_eps))
        {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    let clusters = groups
        .into_iter()
        .map(|g| {
            let n = g.len();
            (g.iter().sum::<Complex>() / n as f64, n)
        })
        .collect();
    RootSet::from_clusters(clusters, tol)
}

/// Moves a `k`-fold root estimate onto the simple root of `p^(k-1)` nearby.
pub fn polish_multiple(p: &Polynomial, start: Complex, multiplicity: usize) -> Complex {
    let q = p.nth_derivative(multiplicity.saturating_sub(1));
    newton_on(&q, &q.derivative(), start, 6)
}

/// Largest relative residual of `p, p', ..., p^(k-1)` at `z`.
pub fn multiplicity_residual(p: &Polynomial, z: Complex, multiplicity: usize) -> f64 {
    (0..multiplicity)
        .map(|j| p.nth_derivative(j).relative_residual(z))
        .fold(0.0, f64::max)
}

fn merge_certified(p: &Polynomial, clusters: Vec<(Complex, usize)>) -> Vec<(Complex, usize)> {
    let n = clusters.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if (clusters[i].0 - clusters[j].0).norm() <= CERTIFY_RADIUS {
                let (from, to) = (label[j], label[i]);
                for l in label.iter_mut().filter(|l| **l == from) {
                    *l = to;
                }
            }
        }
    }

    let mut out = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for i in 0..n {
        if seen[label[i]] {
            continue;
        }
        seen[label[i]] = true;
        let members: Vec<(Complex, usize)> = (0..n)
            .filter(|&j| label[j] == label[i])
            .map(|j| clusters[j])
            .collect();
        let k: usize = members.iter().map(|m| m.1).sum();
        let centroid = members.iter().map(|&(z, m)| z * m as f64).sum::<Complex>() / k as f64;
        if members.len() == 1 {
            out.push((polish_multiple(p, centroid, k), k));
            continue;
        }
        let polished = polish_multiple(p, centroid, k);
        if multiplicity_residual(p, polished, k) <= CERTIFY_RESIDUAL {
            out.push((polished, k));
        } else {
            out.extend(
                members
                    .into_iter()
                    .map(|(z, m)| (polish_multiple(p, z, m), m)),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn contains(set: &RootSet, z: Complex, mult: usize, eps: f64) -> bool {
        set.roots()
            .iter()
            .any(|r| (r.value - z).norm() <= eps && r.multiplicity == mult)
    }

    #[test]
    fn fourth_roots_of_unity() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]);
        let set = solve_polynomial(&p, &Tolerances::default()).unwrap();
        assert_eq!(set.len(), 4);
        for z in [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)] {
            assert!(contains(&set, z, 1, 1e-14), "missing {z}");
        }
        assert_eq!(set.unimodular_count(), 4);
    }

    #[test]
    fn triple_root_is_reported_once() {
        // 0.5 (u-1)^3 (u+1) = 0.5u^4 - u^3 + u - 0.5
        let p = Polynomial::from_real(&[-0.5, 1.0, 0.0, -1.0, 0.5]);
        let set = solve_polynomial(&p, &Tolerances::default()).unwrap();
        assert_eq!(set.len(), 2);
        assert!(contains(&set, c(1.0, 0.0), 3, 1e-12));
        assert!(contains(&set, c(-1.0, 0.0), 1, 1e-12));
        assert_eq!(set.unimodular_count(), 4);
    }

    #[test]
    fn perfect_square() {
        let p = Polynomial::from_real(&[1.0, -2.0, 1.0]);
        let set = solve_polynomial(&p, &Tolerances::default()).unwrap();
        assert_eq!(set.len(), 1);
        assert!(contains(&set, c(1.0, 0.0), 2, 1e-12));
    }

    #[test]
    fn constant_and_nonfinite_rejected() {
        let tol = Tolerances::default();
        assert_eq!(
            solve_polynomial(&Polynomial::from_real(&[3.0]), &tol),
            Err(Error::ConstantPolynomial)
        );
        assert_eq!(
            solve_polynomial(&Polynomial::from_real(&[3.0, 0.0, 1e-300 * 1e-300]), &tol),
            Err(Error::ConstantPolynomial)
        );
        assert!(matches!(
            solve_polynomial(&Polynomial::from_real(&[1.0, f64::NAN]), &tol),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn degree_drops_when_leading_coefficient_negligible() {
        // 1e-20 u^4 + u^2 - 1: treated as the quadratic.
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0, 0.0, 1e-20]);
        let set = solve_polynomial(&p, &Tolerances::default()).unwrap();
        assert_eq!(set.total_multiplicity(), 2);
    }

    #[test]
    fn cubic_with_root_at_origin() {
        // -u^3 + 0.3u, the one-focus-at-center quartic
        let p = Polynomial::new(vec![c(0.0, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(-0.3, 0.0)]);
        let set = solve_polynomial(&p, &Tolerances::default()).unwrap();
        assert_eq!(set.total_multiplicity(), 3);
        assert!(contains(&set, c(0.0, 0.0), 1, 0.0));
        assert!(contains(&set, c(1.0, 0.0), 1, 1e-15));
        assert!(contains(&set, c(-1.0, 0.0), 1, 1e-15));
    }

    #[test]
    fn cluster_examples() {
        let tol = Tolerances::default();
        let set = cluster_roots(
            &[c(1.0 + 1e-9, 0.0), c(1.0 - 1e-9, 0.0), c(-1.0, 0.0)],
            &tol,
        );
        assert_eq!(set.len(), 2);
        assert!(contains(&set, c(1.0, 0.0), 2, 1e-15));
        assert!(contains(&set, c(-1.0, 0.0), 1, 0.0));

        let single = cluster_roots(&[c(0.0, 1.0)], &tol);
        assert_eq!(single.len(), 1);
        assert!(contains(&single, c(0.0, 1.0), 1, 0.0));

        let four = [c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0), c(0.0, -0.5)];
        assert_eq!(cluster_roots(&four, &tol).len(), 4);
    }

    #[test]
    fn quadratic_without_cancellation() {
        // u^2 - 1e8 u + 1: tiny root near 1e-8.
        let [a, b] = quadratic_roots(c(1.0, 0.0), c(-1e8, 0.0), c(1.0, 0.0));
        let (small, big) = if a.norm() < b.norm() { (a, b) } else { (b, a) };
        assert_abs_diff_eq!(small.re, 1e-8, epsilon = 1e-22);
        assert_abs_diff_eq!(big.re, 1e8, epsilon = 1e-6);
    }

    #[test]
    fn tolerances_validation() {
        assert!(Tolerances::default().validate().is_ok());
        let bad = Tolerances {
            cluster_eps: 1e-13,
            ..Tolerances::default()
        };
        assert!(bad.validate().is_err());
        assert!(Tolerances::default()
            .with_unimodular_eps(0.0)
            .validate()
            .is_err());
    }

    #[test]
    fn from_roots_expands() {
        let p = Polynomial::from_roots(c(2.0, 0.0), &[(c(1.0, 0.0), 2), (c(-3.0, 0.0), 1)]);
        // 2 (u-1)^2 (u+3) = 2u^3 + 2u^2 - 10u + 6
        let expect = [6.0, -10.0, 2.0, 2.0];
        for (a, e) in p.coeffs().iter().zip(expect) {
            assert_abs_diff_eq!(a.re, e, epsilon = 1e-15);
        }
    }
}
