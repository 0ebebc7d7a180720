//! Power-series solutions `R_{mu,1} = sum a_n eta^{2n}`,
//! `R_{mu,2} = sum b_n eta^{2n+1}` of
//! `(mu - eta^2) R'' - 2 eta (mu - 1 - eta^2) R' + (mu + 1)(mu - 2 - eta^2) R = 0`.
//!
//! ```text
//! a_n = (mu - 2n)/n! * (-(mu+1)/4)_n / (1/2)_n
//! b_0 = 1,  b_n = (2n + 1 - mu)/(4 n!) * ((5-mu)/4)_{n-1} / (3/2)_n
//! ```

use num_complex::Complex64;

use crate::specfun::dd::NeumaierSum;
use crate::{finite, Branch, Result};

/// Default truncation of the `R` series.
pub const R_SERIES_TERMS: usize = 200;
const R_SERIES_STOP: f64 = 1e-17;

/// Which coefficient sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    A,
    B,
}

/// `mantissa * 2^exponent`; keeps coefficients with `n` in the hundreds representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: Complex64,
    pub exponent: i32,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { mantissa: Complex64::new(0.0, 0.0), exponent: 0 };

    fn normalized(mantissa: Complex64, exponent: i32) -> Scaled {
        let n = mantissa.norm();
        if n == 0.0 || !n.is_finite() {
            return Scaled { mantissa, exponent: if n == 0.0 { 0 } else { exponent } };
        }
        let shift = n.log2().floor() as i32;
        Scaled { mantissa: mantissa * 2f64.powi(-shift), exponent: exponent + shift }
    }

    fn mul(self, f: Complex64) -> Scaled {
        Scaled::normalized(self.mantissa * f, self.exponent)
    }

    /// Value times `2^-exponent` (for comparing neighbouring coefficients).
    pub fn scaled_to(self, exponent: i32) -> Complex64 {
        if self.mantissa.norm() == 0.0 {
            return self.mantissa;
        }
        self.mantissa * 2f64.powi(self.exponent - exponent)
    }

    /// Plain value; underflows to zero for very large `n`.
    pub fn to_c64(self) -> Complex64 {
        self.scaled_to(0)
    }
}

/// Closed-form coefficients `P_n = (alpha)_n/((1/2)_n n!)`, `alpha = -(mu+1)/4`,
/// so that `a_n = (mu - 2n) P_n`.
fn p_ratio(mu: Complex64, n: usize) -> Complex64 {
    let alpha = -(mu + 1.0) / 4.0;
    let nf = n as f64;
    (alpha + nf - 1.0) / ((nf - 0.5) * nf)
}

/// `Q_n = ((5-mu)/4)_{n-1}/(n! (3/2)_n)` for `n >= 1`, so that
/// `b_n = (2n + 1 - mu) Q_n / 4`.
fn q_ratio(mu: Complex64, n: usize) -> Complex64 {
    let delta = (5.0 - mu) / 4.0;
    let nf = n as f64;
    (delta + nf - 2.0) / (nf * (nf + 0.5))
}

/// Coefficients `a_0..=a_n_max` or `b_0..=b_n_max` in scaled form.
pub fn series_coeffs_scaled(mu: Complex64, kind: CoeffKind, n_max: usize) -> Vec<Scaled> {
    let mut out = Vec::with_capacity(n_max + 1);
    match kind {
        CoeffKind::A => {
            let mut p = Scaled::normalized(Complex64::new(1.0, 0.0), 0);
            for n in 0..=n_max {
                if n > 0 {
                    p = p.mul(p_ratio(mu, n));
                }
                out.push(p.mul(mu - 2.0 * n as f64));
            }
        }
        CoeffKind::B => {
            out.push(Scaled::normalized(Complex64::new(1.0, 0.0), 0));
            let mut q = Scaled::normalized(Complex64::new(2.0 / 3.0, 0.0), 0);
            for n in 1..=n_max {
                if n > 1 {
                    q = q.mul(q_ratio(mu, n));
                }
                out.push(q.mul(0.25 * (2.0 * n as f64 + 1.0 - mu)));
            }
        }
    }
    out
}

/// Single coefficient `a_n` or `b_n` (scaled).
pub fn series_coeff_scaled(mu: Complex64, kind: CoeffKind, n: usize) -> Scaled {
    series_coeffs_scaled(mu, kind, n)[n]
}

/// Single coefficient `a_n` or `b_n` as a plain complex number.
pub fn series_coeff(mu: Complex64, kind: CoeffKind, n: usize) -> Complex64 {
    series_coeff_scaled(mu, kind, n).to_c64()
}

/// Coefficient vectors of both series, as plain numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoeffs {
    pub mu: Complex64,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl SeriesCoeffs {
    pub fn new(mu: Complex64, n_max: usize) -> Self {
        SeriesCoeffs {
            mu,
            a: series_coeffs_scaled(mu, CoeffKind::A, n_max).into_iter().map(Scaled::to_c64).collect(),
            b: series_coeffs_scaled(mu, CoeffKind::B, n_max).into_iter().map(Scaled::to_c64).collect(),
        }
    }
}

/// `R_{mu,i}(eta)` truncated after `max_terms` terms or once three
/// consecutive terms fall below `1e-17 |sum|`.
pub fn r_series(mu: Complex64, branch: Branch, eta: Complex64, max_terms: usize) -> Result<Complex64> {
    let e2 = eta * eta;
    let mut acc = NeumaierSum::default();
    let mut small = 0;
    let mut push = |acc: &mut NeumaierSum, t: Complex64| -> bool {
        acc.add(t);
        small = if t.norm() < R_SERIES_STOP * acc.value().norm() { small + 1 } else { 0 };
        small >= 3
    };
    match branch {
        Branch::One => {
            // running P_n eta^{2n}
            let mut p = Complex64::new(1.0, 0.0);
            for n in 0..max_terms {
                if n > 0 {
                    p *= p_ratio(mu, n) * e2;
                }
                if push(&mut acc, (mu - 2.0 * n as f64) * p) || p == Complex64::new(0.0, 0.0) {
                    break;
                }
            }
        }
        Branch::Two => {
            acc.add(eta);
            let mut q = Complex64::new(2.0 / 3.0, 0.0) * e2 * eta;
            for n in 1..max_terms {
                if n > 1 {
                    q *= q_ratio(mu, n) * e2;
                }
                if push(&mut acc, 0.25 * (2.0 * n as f64 + 1.0 - mu) * q) || q == Complex64::new(0.0, 0.0) {
                    break;
                }
            }
        }
    }
    finite(acc.value(), "r_series")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::specfun::pochhammer;

    #[test]
    fn leading_coefficients() {
        let mu = c64(2.0, 1.0);
        assert_eq!(series_coeff(mu, CoeffKind::A, 0), mu);
        assert_eq!(series_coeff(mu, CoeffKind::B, 0), c64(1.0, 0.0));
    }

    #[test]
    fn matches_pochhammer_form_for_small_n() {
        let mu = c64(0.3, -1.2);
        for n in 1..12u32 {
            let fact: f64 = (1..=n).map(f64::from).product();
            let a = (mu - 2.0 * n as f64) / fact * pochhammer(-(mu + 1.0) / 4.0, n) / pochhammer(c64(0.5, 0.0), n);
            let b = 0.25 * (2.0 * n as f64 + 1.0 - mu) / fact * pochhammer((5.0 - mu) / 4.0, n - 1)
                / pochhammer(c64(1.5, 0.0), n);
            assert!((series_coeff(mu, CoeffKind::A, n as usize) - a).norm() < 1e-14 * a.norm());
            assert!((series_coeff(mu, CoeffKind::B, n as usize) - b).norm() < 1e-14 * b.norm());
        }
    }

    #[test]
    fn scaled_form_survives_large_n() {
        let c = series_coeff_scaled(c64(2.0, 1.0), CoeffKind::A, 200);
        assert!(c.mantissa.norm() >= 1.0 && c.mantissa.norm() < 2.0);
        assert!(c.exponent < -1000);
    }

    #[test]
    fn values_at_origin() {
        let mu = c64(1.5, 0.5);
        assert_eq!(r_series(mu, Branch::One, c64(0.0, 0.0), 200).unwrap(), mu);
        assert_eq!(r_series(mu, Branch::Two, c64(0.0, 0.0), 200).unwrap(), c64(0.0, 0.0));
    }

    #[test]
    fn bound_state_series_terminates() {
        // mu = -1: a_n = 0 for n >= 1
        let v = r_series(c64(-1.0, 0.0), Branch::One, c64(2.0, 1.0), 200).unwrap();
        assert!((v + 1.0).norm() < 1e-15);
    }
}
