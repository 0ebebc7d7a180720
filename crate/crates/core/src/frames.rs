//! Physical `(y, sigma)` to rescaled `(z, tau)` to rotated `(eta, mu)`.
//!
//! With `s = sgn k` and `L = (|beta| |k|)^{1/4}`:
//!
//! ```text
//! z   = L (y - a)                 eta = e^{-s i pi/8} z
//! tau = -i sigma/sqrt|beta| + s alpha sqrt(|k|/|beta|)
//! mu  = -i e^{s i pi/4} tau
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{cis, Error, Result};

/// Quadratic shear flow `U(y) = alpha + beta (y - a)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShearFlow {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
}

impl ShearFlow {
    pub fn new(alpha: f64, beta: f64, a: f64) -> Result<Self> {
        let s = ShearFlow { alpha, beta, a };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite() && self.a.is_finite()) {
            return Err(Error::InvalidShear("non-finite parameter".into()));
        }
        if !(self.beta < 0.0) {
            return Err(Error::InvalidShear(format!("beta = {} must be negative", self.beta)));
        }
        if self.a < 0.0 {
            return Err(Error::InvalidShear(format!("a = {} must be nonnegative", self.a)));
        }
        Ok(())
    }

    pub fn velocity(&self, y: f64) -> f64 {
        self.alpha + self.beta * (y - self.a).powi(2)
    }
}

/// Tangential wavenumber `k` and growth coefficient `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "ModeSpecJson", into = "ModeSpecJson")]
pub struct ModeSpec {
    pub k: i64,
    pub sigma: Complex64,
}

#[derive(Serialize, Deserialize)]
struct ModeSpecJson {
    k: i64,
    sigma_re: f64,
    sigma_im: f64,
}

impl From<ModeSpecJson> for ModeSpec {
    fn from(j: ModeSpecJson) -> Self {
        ModeSpec { k: j.k, sigma: Complex64::new(j.sigma_re, j.sigma_im) }
    }
}

impl From<ModeSpec> for ModeSpecJson {
    fn from(m: ModeSpec) -> Self {
        ModeSpecJson { k: m.k, sigma_re: m.sigma.re, sigma_im: m.sigma.im }
    }
}

impl ModeSpec {
    pub fn new(k: i64, sigma: Complex64) -> Result<Self> {
        let m = ModeSpec { k, sigma };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidMode("k must be nonzero".into()));
        }
        if !(self.sigma.re.is_finite() && self.sigma.im.is_finite()) {
            return Err(Error::InvalidMode("non-finite sigma".into()));
        }
        Ok(())
    }
}

/// Derived constants of one `(shear, mode)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub shear: ShearFlow,
    pub mode: ModeSpec,
    /// `sgn k`
    pub sign: i8,
    /// `(|beta| |k|)^{1/4}`
    pub scale: f64,
    pub tau: Complex64,
    pub mu: Complex64,
    pub z_star: f64,
    pub eta_star: Complex64,
    /// `e^{-sign i pi/8}`
    pub rot: Complex64,
}

/// Builds the frame; fails on `beta >= 0`, `a < 0` or `k = 0`.
pub fn build_frame(shear: ShearFlow, mode: ModeSpec) -> Result<Frame> {
    shear.validate()?;
    mode.validate()?;
    let s = if mode.k > 0 { 1.0 } else { -1.0 };
    let abs_beta = shear.beta.abs();
    let abs_k = mode.k.unsigned_abs() as f64;
    let scale = (abs_beta * abs_k).powf(0.25);
    let i = Complex64::i();
    let tau = -i * mode.sigma / abs_beta.sqrt() + s * shear.alpha * (abs_k / abs_beta).sqrt();
    let mu = -i * cis(s * PI / 4.0) * tau;
    let rot = cis(-s * PI / 8.0);
    let z_star = -shear.a * scale;
    Ok(Frame {
        shear,
        mode,
        sign: s as i8,
        scale,
        tau,
        mu,
        z_star,
        eta_star: rot * z_star,
        rot,
    })
}

impl Frame {
    pub fn y_to_z(&self, y: f64) -> f64 {
        self.scale * (y - self.shear.a)
    }

    pub fn z_to_y(&self, z: f64) -> f64 {
        self.shear.a + z / self.scale
    }

    pub fn z_to_eta(&self, z: Complex64) -> Complex64 {
        self.rot * z
    }

    pub fn eta_to_z(&self, eta: Complex64) -> Complex64 {
        eta * self.rot.conj()
    }

    pub fn y_to_eta(&self, y: f64) -> Complex64 {
        self.rot * self.y_to_z(y)
    }

    /// Real `y` whose image is closest to `eta`.
    pub fn eta_to_y(&self, eta: Complex64) -> f64 {
        self.z_to_y(self.eta_to_z(eta).re)
    }

    /// `d eta / d y`.
    pub fn deta_dy(&self) -> Complex64 {
        self.rot * self.scale
    }

    /// Exponent rate `sigma sqrt|k|` of the time factor.
    pub fn time_rate(&self) -> Complex64 {
        self.mode.sigma * (self.mode.k.unsigned_abs() as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn worked_example_constants() {
        let f = build_frame(ShearFlow::new(0.0, -1.0, 0.0).unwrap(), ModeSpec::new(1, cis(7.0 * PI / 4.0)).unwrap())
            .unwrap();
        assert!((f.tau - cis(5.0 * PI / 4.0)).norm() < 1e-15);
        assert!((f.mu - c64(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(f.z_star, 0.0);
        assert_eq!(f.eta_star.norm(), 0.0);
    }

    #[test]
    fn boundary_image() {
        let f = build_frame(ShearFlow::new(0.3, -1.0, 0.5f64.sqrt()).unwrap(), ModeSpec::new(16, c64(0.2, 0.1)).unwrap())
            .unwrap();
        assert!((f.z_star + 2f64.sqrt()).abs() < 1e-15);
        assert!((f.y_to_eta(0.0) - f.eta_star).norm() < 1e-15);
        assert_eq!(f.y_to_z(f.shear.a), 0.0);
    }

    #[test]
    fn rescaled_point() {
        let f = build_frame(ShearFlow::new(0.0, -1.0, 0.0).unwrap(), ModeSpec::new(16, c64(1.0, 0.0)).unwrap()).unwrap();
        assert!((f.y_to_z(1.0) - 2.0).abs() < 1e-15);
        assert!((f.y_to_eta(1.0) - 2.0 * cis(-PI / 8.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_invalid() {
        assert!(matches!(ShearFlow::new(0.0, 0.0, 0.0), Err(Error::InvalidShear(_))));
        assert!(matches!(ShearFlow::new(0.0, -1.0, -0.1), Err(Error::InvalidShear(_))));
        assert!(matches!(ModeSpec::new(0, c64(1.0, 0.0)), Err(Error::InvalidMode(_))));
    }

    #[test]
    fn negative_k_conjugates_rotation() {
        let sh = ShearFlow::new(0.4, -2.0, 1.0).unwrap();
        let p = build_frame(sh, ModeSpec::new(3, c64(0.5, -0.2)).unwrap()).unwrap();
        let n = build_frame(sh, ModeSpec::new(-3, c64(0.5, -0.2)).unwrap()).unwrap();
        assert_eq!(n.rot, p.rot.conj());
        assert_eq!(n.sign, -1);
    }

    #[test]
    fn json_field_names() {
        let m = ModeSpec::new(4, c64(0.5, -1.5)).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"k":4,"sigma_re":0.5,"sigma_im":-1.5}"#);
        let back: ModeSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let sh: ShearFlow = serde_json::from_str(r#"{"alpha":1.0,"beta":-2.0,"a":0.5}"#).unwrap();
        assert_eq!(sh, ShearFlow { alpha: 1.0, beta: -2.0, a: 0.5 });
    }
}
