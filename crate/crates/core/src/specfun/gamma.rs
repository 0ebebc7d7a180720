use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Distance below which an argument counts as a nonpositive integer.
pub const POLE_TOL: f64 = 1e-12;

/// Returns `Some(n)` when `z` is within [`POLE_TOL`] of the nonpositive integer `-n`.
pub fn nonpositive_integer(z: Complex64) -> Option<u64> {
    let r = z.re.round();
    if r <= 0.0 && (z - Complex64::new(r, 0.0)).norm() < POLE_TOL {
        Some((-r) as u64)
    } else {
        None
    }
}

fn lanczos(z: Complex64) -> Complex64 {
    // valid for Re z >= 1/2
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &p) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * x
}

/// Complex Gamma function.
///
/// Lanczos approximation (g = 7, 9 terms) with the reflection formula for
/// `Re z < 1/2`.
///
/// # Errors
///
/// [`Error::PoleArgument`] at nonpositive integers.
pub fn gamma_c(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::PoleArgument(z));
    }
    if z.re < 0.5 {
        Ok(PI / ((PI * z).sin() * lanczos(1.0 - z)))
    } else {
        Ok(lanczos(z))
    }
}

/// Reciprocal Gamma function, entire; exactly zero at the poles of `Gamma`.
pub fn rgamma_c(z: Complex64) -> Complex64 {
    if nonpositive_integer(z).is_some() {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * lanczos(1.0 - z) / PI
    } else {
        1.0 / lanczos(z)
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (a + j as f64))
}
