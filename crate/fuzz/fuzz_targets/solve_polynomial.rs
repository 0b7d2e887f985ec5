#![no_main]

use alhazen::numerics::solve_polynomial;
use alhazen::{Complex, Polynomial, Tolerances};
use libfuzzer_sys::fuzz_target;

// Bytes are read as little-endian f64 pairs, one coefficient per pair.
fuzz_target!(|data: &[u8]| {
    let coeffs: Vec<Complex> = data
        .chunks_exact(16)
        .take(9)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..].try_into().unwrap());
            Complex::new(re, im)
        })
        .collect();
    let p = Polynomial::new(coeffs);
    if let Ok(roots) = solve_polynomial(&p, &Tolerances::default()) {
        assert!(roots
            .expanded()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite()));
    }
});
