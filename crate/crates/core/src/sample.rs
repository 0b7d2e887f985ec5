//! Seeded random configurations for sweeps and property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::Complex;
use crate::reflect::segment_meets_disk;

/// Points with `||z| − 1| < BOUNDARY_GAP` are never drawn.
pub const BOUNDARY_GAP: f64 = 5e-4;

/// Outer radius of the sampling disk.
pub const OUTER_RADIUS: f64 = 2.0;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// Uniform by area in the annulus `lo <= |z| < hi`.
    fn in_annulus(&mut self, lo: f64, hi: f64) -> Complex {
        let r = self.uniform(lo * lo, hi * hi).sqrt();
        Complex::from_polar(r, self.uniform(-std::f64::consts::PI, std::f64::consts::PI))
    }

    /// Uniform on `|z| < 2` away from the unit circle.
    pub fn point(&mut self) -> Complex {
        loop {
            let z = self.in_annulus(0.0, OUTER_RADIUS);
            if (z.norm() - 1.0).abs() >= BOUNDARY_GAP {
                return z;
            }
        }
    }

    pub fn interior_point(&mut self) -> Complex {
        self.in_annulus(0.0, 1.0 - BOUNDARY_GAP)
    }

    pub fn exterior_point(&mut self) -> Complex {
        self.in_annulus(1.0 + BOUNDARY_GAP, OUTER_RADIUS)
    }

    pub fn pair(&mut self) -> (Complex, Complex) {
        (self.point(), self.point())
    }

    pub fn interior_pair(&mut self) -> (Complex, Complex) {
        (self.interior_point(), self.interior_point())
    }

    /// Two exterior points whose segment misses the closed disk.
    pub fn exterior_pair(&mut self) -> (Complex, Complex) {
        loop {
            let (z1, z2) = (self.exterior_point(), self.exterior_point());
            if matches!(segment_meets_disk(z1, z2), Ok(t) if !t.blocked) {
                return (z1, z2);
            }
        }
    }

    /// Draws pairs until one satisfies `accept`.
    pub fn pair_where(&mut self, accept: impl Fn(Complex, Complex) -> bool) -> (Complex, Complex) {
        loop {
            let (z1, z2) = self.pair();
            if accept(z1, z2) {
                return (z1, z2);
            }
        }
    }
}
