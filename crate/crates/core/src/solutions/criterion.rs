//! Kummer-form solutions `X_{tau,i}`, `Y_{mu,i}` of the reduced second-order
//! equations, and the criterion pair `(tau, W)`.

use std::f64::consts::{FRAC_2_SQRT_PI, PI, SQRT_2};

use num_complex::Complex64;

use crate::specfun::{erf_c, kummer_m};
use crate::{c64, cis, finite, Branch, Error, Result};

/// Guard on `|z^2 - tau|` (and `|eta^2 - mu|`) below which evaluation is refused.
pub const SINGULAR_GUARD: f64 = 1e-10;

/// The four Kummer parameters attached to `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauConstants {
    pub a_tau: Complex64,
    pub b_tau: Complex64,
    pub c_tau: Complex64,
    pub d_tau: Complex64,
}

impl TauConstants {
    pub fn new(tau: Complex64) -> Self {
        let t = tau * cis(7.0 * PI / 4.0);
        TauConstants {
            a_tau: -(1.0 + t) / 4.0,
            b_tau: (3.0 - t) / 4.0,
            c_tau: (1.0 - t) / 4.0,
            d_tau: (5.0 - t) / 4.0,
        }
    }
}

fn guard(gap: Complex64, at: Complex64) -> Result<()> {
    if gap.norm() < SINGULAR_GUARD {
        Err(Error::SingularPoint(at))
    } else {
        Ok(())
    }
}

/// `X_{tau,1}` or `X_{tau,2}`: the two Kummer-form solutions of
/// `i(tau - z^2) X'' - 6iz X' + ((tau - z^2)^2 - 6i) X = 0`.
pub fn x_tau(tau: Complex64, branch: Branch, z: Complex64) -> Result<Complex64> {
    let z2 = z * z;
    guard(tau - z2, z)?;
    let k = TauConstants::new(tau);
    let rot = cis(7.0 * PI / 4.0);
    let zeta = rot * z2;
    let pre = (0.5 * cis(3.0 * PI / 4.0) * z2).exp() / ((tau - z2) * (tau - z2));
    let v = match branch {
        Branch::One => {
            let m1 = kummer_m(k.a_tau, c64(0.5, 0.0), zeta)?;
            let second = if k.a_tau == Complex64::new(0.0, 0.0) {
                Complex64::new(0.0, 0.0)
            } else {
                4.0 * k.a_tau * z2 * kummer_m(k.b_tau, c64(1.5, 0.0), zeta)?
            };
            pre * (tau * m1 - second)
        }
        Branch::Two => {
            let m1 = kummer_m(k.c_tau, c64(1.5, 0.0), zeta)?;
            let m2 = kummer_m(k.d_tau, c64(2.5, 0.0), zeta)?;
            z * pre * (m1 + rot * z2 / 3.0 * m2)
        }
    };
    finite(v, "x_tau")
}

/// `Y_{mu,1}` or `Y_{mu,2}`: Kummer-form solutions of
/// `(mu - eta^2) Y'' - 6 eta Y' + ((mu - eta^2)^2 - 6) Y = 0`.
///
/// Under `mu = tau e^{-i pi/4}`, `eta = e^{-i pi/8} z` these agree with
/// [`x_tau`] up to constant factors: `Y_1 = e^{i pi/4} X_1`,
/// `Y_2 = e^{3 i pi/8} X_2`.
pub fn y_mu(mu: Complex64, branch: Branch, eta: Complex64) -> Result<Complex64> {
    let e2 = eta * eta;
    guard(mu - e2, eta)?;
    let pre = (-0.5 * e2).exp() / ((mu - e2) * (mu - e2));
    let v = match branch {
        Branch::One => {
            let m1 = kummer_m(-(mu + 1.0) / 4.0, c64(0.5, 0.0), e2)?;
            let m2 = kummer_m((3.0 - mu) / 4.0, c64(1.5, 0.0), e2)?;
            pre * (mu * m1 + (mu + 1.0) * e2 * m2)
        }
        Branch::Two => {
            let m1 = kummer_m((1.0 - mu) / 4.0, c64(1.5, 0.0), e2)?;
            let m2 = kummer_m((5.0 - mu) / 4.0, c64(2.5, 0.0), e2)?;
            eta * pre * (m1 + e2 / 3.0 * m2)
        }
    };
    finite(v, "y_mu")
}

/// The unique admissible `tau = e^{5 i pi/4}`.
pub fn tau_criterion() -> Complex64 {
    cis(5.0 * PI / 4.0)
}

/// `eta(z) = e^{-i pi/8} z` for the positive-frequency branch.
pub fn criterion_eta(z: Complex64) -> Complex64 {
    cis(-PI / 8.0) * z
}

fn criterion_guard(eta: Complex64, z: Complex64) -> Result<()> {
    guard(1.0 + eta * eta, z)
}

/// `W(z) = (1 + erf(eta/sqrt2) + sqrt(2/pi) eta e^{-eta^2/2}/(1+eta^2))/2`.
pub fn w_criterion(z: Complex64) -> Result<Complex64> {
    let eta = criterion_eta(z);
    criterion_guard(eta, z)?;
    let e2 = eta * eta;
    let rational = (2.0 / PI).sqrt() * eta * (-0.5 * e2).exp() / (1.0 + e2);
    finite(0.5 * (1.0 + erf_c(eta / SQRT_2)? + rational), "w_criterion")
}

/// `W'(z) = e^{-i pi/8} sqrt(2/pi) e^{-eta^2/2}/(1+eta^2)^2`.
pub fn w_criterion_prime(z: Complex64) -> Result<Complex64> {
    let eta = criterion_eta(z);
    criterion_guard(eta, z)?;
    let e2 = eta * eta;
    let c = cis(-PI / 8.0) * (FRAC_2_SQRT_PI / SQRT_2);
    finite(c * (-0.5 * e2).exp() / ((1.0 + e2) * (1.0 + e2)), "w_criterion_prime")
}
