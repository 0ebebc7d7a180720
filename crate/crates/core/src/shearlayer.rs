//! The shear-layer corrector around a critical point `a` of a general shear
//! flow (`U'(a) = 0`, `U''(a) < 0`):
//!
//! ```text
//! V(z) = (|U''|^{1/2} tau / sqrt2 + U'' z^2 / 2) (W(kappa z) - H(z)),  kappa = (|U''|/2)^{1/4}
//!      = e^{5 i pi/4} |U''|^{1/2}/sqrt2 (1 + f^2) (1/2 + erf(f/sqrt2)/2
//!        + f e^{-f^2/2} / (sqrt(2 pi) (1 + f^2)) - H(z)),  f = kappa e^{-i pi/8} z
//! v_sl(y) = eps^{1/2} V((y - a) / eps^{1/4})
//! ```
//!
//! `H(0) = 1/2`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::modes::{sample_grid, ProfileMeta, SampledProfile};
use crate::solutions::{tau_criterion, w_criterion};
use crate::specfun::erf_c;
use crate::{cis, finite, Error, Result};

/// Location `a` and curvature `U''(a)` of a critical point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub a: f64,
    #[serde(rename = "Upp")]
    pub upp: f64,
}

impl CriticalPoint {
    pub fn new(a: f64, upp: f64) -> Result<Self> {
        if !(upp < 0.0) || !a.is_finite() {
            return Err(Error::InvalidShear(format!("critical point needs U'' < 0, got a = {a}, U'' = {upp}")));
        }
        Ok(CriticalPoint { a, upp })
    }

    /// `(|U''|/2)^{1/4}`.
    pub fn kappa(&self) -> f64 {
        (0.5 * self.upp.abs()).powf(0.25)
    }

    /// `|U''|^{1/2}/sqrt2`, the size of the jump of `V` at 0.
    pub fn jump_magnitude(&self) -> f64 {
        self.upp.abs().sqrt() / SQRT_2
    }

    /// `|U''|^{1/2} tau / sqrt2 + U'' z^2 / 2`.
    pub fn prefactor(&self, z: f64) -> Complex64 {
        self.jump_magnitude() * tau_criterion() + 0.5 * self.upp * z * z
    }

    /// `f(z) = kappa e^{-i pi/8} z`.
    pub fn f(&self, z: f64) -> Complex64 {
        self.kappa() * cis(-PI / 8.0) * z
    }
}

pub fn heaviside(z: f64) -> f64 {
    if z > 0.0 {
        1.0
    } else if z < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// `V(z)` from the explicit `erf` form.
#[allow(non_snake_case)]
pub fn shear_layer_V(cp: &CriticalPoint, z: f64) -> Result<Complex64> {
    let f = cp.f(z);
    let f2 = f * f;
    let bracket = 0.5 + 0.5 * erf_c(f / SQRT_2)? + f * (-0.5 * f2).exp() / ((2.0 * PI).sqrt() * (1.0 + f2))
        - heaviside(z);
    finite(cis(5.0 * PI / 4.0) * cp.jump_magnitude() * (1.0 + f2) * bracket, "shear_layer_V")
}

/// `V(z)` through the criterion function: `prefactor(z) (W(kappa z) - H(z))`.
#[allow(non_snake_case)]
pub fn shear_layer_V_via_w(cp: &CriticalPoint, z: f64) -> Result<Complex64> {
    let w = w_criterion(Complex64::new(cp.kappa() * z, 0.0))?;
    finite(cp.prefactor(z) * (w - heaviside(z)), "shear_layer_V_via_w")
}

/// `V(z) + prefactor(z) H(z) = prefactor(z) W(kappa z)`, smooth through 0.
#[allow(non_snake_case)]
pub fn shear_layer_V_tilde(cp: &CriticalPoint, z: f64) -> Result<Complex64> {
    Ok(shear_layer_V(cp, z)? + cp.prefactor(z) * heaviside(z))
}

/// `eps^{1/2} V((y - a)/eps^{1/4})`.
pub fn v_sl(cp: &CriticalPoint, eps: f64, y: f64) -> Result<Complex64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps = {eps} must be positive")));
    }
    Ok(eps.sqrt() * shear_layer_V(cp, (y - cp.a) / eps.powf(0.25))?)
}

/// `U(y) = 2 y e^{-y^2}`.
pub fn example_flow(y: f64) -> f64 {
    2.0 * y * (-y * y).exp()
}

/// `U'(y) = 2 e^{-y^2} (1 - 2 y^2)`.
pub fn example_flow_prime(y: f64) -> f64 {
    2.0 * (-y * y).exp() * (1.0 - 2.0 * y * y)
}

/// `U''(y) = 4 y e^{-y^2} (2 y^2 - 3)`.
pub fn example_flow_second(y: f64) -> f64 {
    4.0 * y * (-y * y).exp() * (2.0 * y * y - 3.0)
}

/// `(1/sqrt2, -4 sqrt2 / sqrt e)`, the maximum of [`example_flow`].
pub fn example_flow_critical_point() -> CriticalPoint {
    CriticalPoint { a: 1.0 / SQRT_2, upp: -4.0 * SQRT_2 / 1f64.exp().sqrt() }
}

/// `V` on `n` uniform points of `[z_min, z_max]`.
pub fn sample_profile(cp: &CriticalPoint, z_min: f64, z_max: f64, n: usize) -> Result<SampledProfile> {
    if !(z_min < z_max && z_min.is_finite() && z_max.is_finite()) || n < 2 {
        return Err(Error::InvalidArgument(format!("grid [{z_min}, {z_max}] with {n} points")));
    }
    let rows = sample_grid(z_min, z_max, n, |z| shear_layer_V(cp, z))?;
    Ok(SampledProfile { coord: "z".into(), rows, meta: ProfileMeta { critical_point: Some(*cp), ..ProfileMeta::default() } })
}
