use std::f64::consts::PI;

use num_complex::Complex64;

use super::kummer::kummer_m;
use crate::Result;

/// Complex error function, `erf(z) = (2z/sqrt(pi)) M(1/2, 3/2, -z^2)`.
pub fn erf_c(z: Complex64) -> Result<Complex64> {
    let m = kummer_m(Complex64::new(0.5, 0.0), Complex64::new(1.5, 0.0), -(z * z))?;
    Ok(2.0 * z / PI.sqrt() * m)
}

/// Imaginary error function, `erfi(z) = -i erf(iz) = (2z/sqrt(pi)) M(1/2, 3/2, z^2)`.
pub fn erfi_c(z: Complex64) -> Result<Complex64> {
    let m = kummer_m(Complex64::new(0.5, 0.0), Complex64::new(1.5, 0.0), z * z)?;
    Ok(2.0 * z / PI.sqrt() * m)
}
