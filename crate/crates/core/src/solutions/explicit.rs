//! Closed forms of `Upsilon_{-1,0,1}` and `Upsilon_{-1,0,2}`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::quadrature::{integrate_segment, QuadOptions};
use crate::specfun::{erf_c, erfi_c};
use crate::{finite, Branch, Result};

/// `Upsilon_{-1,0,1}(eta) = (eta e^{-eta^2/2} + (1+eta^2) sqrt(pi/2) erf(eta/sqrt2))/2`
/// and
///
/// ```text
/// Upsilon_{-1,0,2}(eta) = (sqrt(pi)/2)(1 + eta^2/2) int_0^eta erfi(xi) e^{-xi^2/2}
///                        - (sqrt(pi)/4) int_0^eta xi^2 erfi(xi) e^{-xi^2/2} - 1/2
/// ```
///
/// with the two integrals taken along the straight segment.
pub fn upsilon_m1_explicit(branch: Branch, eta: Complex64) -> Result<Complex64> {
    let e2 = eta * eta;
    match branch {
        Branch::One => {
            let v = eta * (-0.5 * e2).exp() + (1.0 + e2) * (PI / 2.0).sqrt() * erf_c(eta * FRAC_1_SQRT_2)?;
            finite(0.5 * v, "upsilon_m1_explicit")
        }
        Branch::Two => {
            let opts = QuadOptions::default();
            let zero = Complex64::new(0.0, 0.0);
            let base = |xi: Complex64| -> Result<Complex64> { Ok(erfi_c(xi)? * (-0.5 * xi * xi).exp()) };
            let i0 = integrate_segment(base, zero, eta, &opts)?.value;
            let i2 = integrate_segment(|xi| Ok(xi * xi * base(xi)?), zero, eta, &opts)?.value;
            let sp = PI.sqrt();
            finite(0.5 * sp * (1.0 + 0.5 * e2) * i0 - 0.25 * sp * i2 - 0.5, "upsilon_m1_explicit")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn values_at_origin() {
        let o = c64(0.0, 0.0);
        assert_eq!(upsilon_m1_explicit(Branch::One, o).unwrap(), o);
        assert_eq!(upsilon_m1_explicit(Branch::Two, o).unwrap(), c64(-0.5, 0.0));
    }

    #[test]
    fn first_branch_parity() {
        let eta = c64(1.3, -0.4);
        let a = upsilon_m1_explicit(Branch::One, eta).unwrap();
        let b = upsilon_m1_explicit(Branch::One, -eta).unwrap();
        assert!((a + b).norm() < 1e-14);
    }
}
