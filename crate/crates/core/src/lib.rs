//! Explicit quasi-eigenmodes of the Prandtl equations linearised around a
//! quadratic shear flow `U(y) = alpha + beta (y - a)^2`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Kummer's `M`, complex Gamma, `erf`/`erfi`.
//! * [`quadrature`]: Gauss–Kronrod on complex segments and Cauchy-integral derivatives.
//! * [`frames`]: the `y -> z -> eta` rescalings and the derived constants `tau`, `mu`.
//! * [`solutions`]: closed-form solution families (`X`, `Y`, `R`, `psi`, `W`, ...).
//! * [`modes`]: the `Upsilon` basis, boundary solve, stream function and velocity.
//! * [`asymptotics`]: large-`z` forms and the growth classification.
//! * [`oracle`]: residual checks for every governing equation.
//! * [`shearlayer`]: the explicit shear-layer corrector.

pub mod asymptotics;
mod error;
pub mod frames;
pub mod modes;
pub mod oracle;
pub mod quadrature;
pub mod shearlayer;
pub mod solutions;
pub mod specfun;

pub use error::{Error, Result};
pub(crate) use error::finite;
pub use num_complex::Complex64;

/// Shorthand constructor for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{i theta}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Which of the two independent solutions of a second-order family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    pub fn index(self) -> usize {
        match self {
            Branch::One => 0,
            Branch::Two => 1,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Branch::One),
            2 => Some(Branch::Two),
            _ => None,
        }
    }
}
