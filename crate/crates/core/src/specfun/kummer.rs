//! Kummer's confluent hypergeometric function `M(a, c, zeta)`.
//!
//! Three regimes:
//!
//! * `a` a nonpositive integer: finite polynomial, summed term by term.
//! * `|zeta| <= 30`: Taylor series. Terms are accumulated in double-double
//!   when the largest term is expected to exceed the sum by more than two
//!   decades, otherwise in compensated `f64`.
//! * `|zeta| > 30`: the large-argument expansion (dominant exponential series
//!   plus the algebraic series), each optimally truncated.
//!
//! For `Re zeta < 0` the Kummer transformation
//! `M(a, c, zeta) = e^zeta M(c - a, c, -zeta)` is applied first.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::gamma::{gamma_c, nonpositive_integer, rgamma_c};
use crate::error::finite;
use crate::{Error, Result};

/// `|zeta|` above which the large-argument expansion is used.
pub const CROSSOVER: f64 = 30.0;
/// Relative size below which a Taylor term counts as negligible.
pub const TAYLOR_STOP: f64 = 1e-17;
/// Hard cap on the number of Taylor terms.
pub const TAYLOR_MAX_TERMS: usize = 10_000;
/// Hard cap on the number of terms of each large-argument series.
pub const ASYMPTOTIC_MAX_TERMS: usize = 60;
/// Estimated relative error above which no regime is accepted.
pub const ACCEPT_REL_ERR: f64 = 1e-11;

const DD_LOSS_THRESHOLD: f64 = 100.0;

/// A value together with an estimate of its relative error.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: Complex64,
    pub rel_err: f64,
}

/// Returns `Some(n)` if `a = -n` for some `n` in `N_0`, i.e. `M(a, c, .)` is a polynomial.
pub fn polynomial_degree(a: Complex64) -> Option<u64> {
    nonpositive_integer(a)
}

/// `M(a, c, zeta)`.
///
/// # Errors
///
/// * [`Error::PoleArgument`] if `c` is a nonpositive integer.
/// * [`Error::NonConvergent`] if no regime reaches [`ACCEPT_REL_ERR`].
/// * [`Error::NonFinite`] on overflow.
pub fn kummer_m(a: Complex64, c: Complex64, zeta: Complex64) -> Result<Complex64> {
    let est = kummer_m_estimate(a, c, zeta)?;
    finite(est.value, "kummer_m")
}

/// `dM/dzeta = (a/c) M(a+1, c+1, zeta)`.
pub fn kummer_m_prime(a: Complex64, c: Complex64, zeta: Complex64) -> Result<Complex64> {
    if nonpositive_integer(c).is_some() {
        return Err(Error::PoleArgument(c));
    }
    if a == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(a / c * kummer_m(a + 1.0, c + 1.0, zeta)?)
}

/// `M(a, c, zeta)` with the error estimate of the regime that produced it.
pub fn kummer_m_estimate(a: Complex64, c: Complex64, zeta: Complex64) -> Result<Estimate> {
    if nonpositive_integer(c).is_some() {
        return Err(Error::PoleArgument(c));
    }
    if zeta == Complex64::new(0.0, 0.0) {
        return Ok(Estimate { value: Complex64::new(1.0, 0.0), rel_err: 0.0 });
    }
    if let Some(n) = polynomial_degree(a) {
        let a = Complex64::new(-(n as f64), 0.0);
        return taylor_dd(a, c, zeta, n as usize + 1);
    }
    if zeta.norm() <= CROSSOVER {
        return taylor_transformed(a, c, zeta);
    }
    let asym = large_argument(a, c, zeta)?;
    if asym.rel_err <= 1e-14 {
        return Ok(asym);
    }
    let taylor_est = if zeta.norm() < 700.0 { taylor_transformed(a, c, zeta).ok() } else { None };
    let best = match taylor_est {
        Some(t) if t.rel_err < asym.rel_err => t,
        _ => asym,
    };
    if best.rel_err > ACCEPT_REL_ERR {
        return Err(Error::NonConvergent(format!(
            "M({a}, {c}, {zeta}): best relative error estimate {:e}",
            best.rel_err
        )));
    }
    Ok(best)
}

fn taylor_transformed(a: Complex64, c: Complex64, zeta: Complex64) -> Result<Estimate> {
    if zeta.re < 0.0 {
        let inner = match polynomial_degree(c - a) {
            Some(n) => taylor_dd(Complex64::new(-(n as f64), 0.0), c, -zeta, n as usize + 1)?,
            None => taylor(c - a, c, -zeta)?,
        };
        Ok(Estimate { value: zeta.exp() * inner.value, rel_err: inner.rel_err })
    } else {
        taylor(a, c, zeta)
    }
}

/// Taylor series in whichever precision the expected cancellation requires.
pub fn taylor(a: Complex64, c: Complex64, zeta: Complex64) -> Result<Estimate> {
    let loss = (zeta.norm() - zeta.re).exp();
    if loss > DD_LOSS_THRESHOLD {
        taylor_dd(a, c, zeta, TAYLOR_MAX_TERMS)
    } else {
        taylor_f64(a, c, zeta)
    }
}

fn taylor_f64(a: Complex64, c: Complex64, zeta: Complex64) -> Result<Estimate> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut max_term: f64 = 1.0;
    let mut small = 0;
    for n in 0..TAYLOR_MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * zeta / ((c + nf) * (nf + 1.0));
        // Neumaier summation per component
        let t = sum + term;
        comp.re += if sum.re.abs() >= term.re.abs() {
            (sum.re - t.re) + term.re
        } else {
            (term.re - t.re) + sum.re
        };
        comp.im += if sum.im.abs() >= term.im.abs() {
            (sum.im - t.im) + term.im
        } else {
            (term.im - t.im) + sum.im
        };
        sum = t;
        let tn = term.norm();
        max_term = max_term.max(tn);
        if tn < TAYLOR_STOP * (sum + comp).norm() {
            small += 1;
            if small == 3 {
                let value = sum + comp;
                let rel_err = 4.0 * f64::EPSILON * (n as f64).sqrt() * max_term / value.norm();
                return Ok(Estimate { value, rel_err });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergent(format!("Taylor series of M({a}, {c}, {zeta})")))
}

fn taylor_dd(a: Complex64, c: Complex64, zeta: Complex64, max_terms: usize) -> Result<Estimate> {
    let z = CDd::from_c64(zeta);
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut max_term: f64 = 1.0;
    let mut small = 0;
    for n in 0..max_terms {
        let nf = Dd::from_f64(n as f64);
        let an = CDd { re: Dd::from_f64(a.re).add(nf), im: Dd::from_f64(a.im) };
        let cn = CDd { re: Dd::from_f64(c.re).add(nf), im: Dd::from_f64(c.im) };
        let n1 = CDd { re: Dd::from_f64(n as f64 + 1.0), im: Dd::ZERO };
        term = term.mul(an).mul(z).div(cn.mul(n1));
        sum = sum.add(term);
        let tn = term.abs_approx();
        if tn == 0.0 {
            break;
        }
        max_term = max_term.max(tn);
        if tn < TAYLOR_STOP * sum.abs_approx() {
            small += 1;
            if small == 3 {
                break;
            }
        } else {
            small = 0;
        }
        if n + 1 == max_terms && max_terms == TAYLOR_MAX_TERMS {
            return Err(Error::NonConvergent(format!("Taylor series of M({a}, {c}, {zeta})")));
        }
    }
    let value = sum.to_c64();
    let rel_err = f64::EPSILON / 2.0 + 1e-31 * max_term / value.norm();
    Ok(Estimate { value, rel_err })
}

/// Optimally truncated `sum_s (p)_s (q)_s / s! * w^s`; returns the sum and
/// the magnitude of the first omitted term.
fn divergent_series(p: Complex64, q: Complex64, w: Complex64) -> (Complex64, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for s in 0..ASYMPTOTIC_MAX_TERMS {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) / (sf + 1.0) * w;
        let nn = next.norm();
        if nn == 0.0 {
            return (sum, 0.0);
        }
        if nn >= term.norm() {
            return (sum, nn);
        }
        sum += next;
        term = next;
        if nn < TAYLOR_STOP * sum.norm() {
            return (sum, nn);
        }
    }
    (sum, term.norm())
}

/// Large-argument expansion of `M(a, c, zeta)`, valid for `|zeta|` large in any
/// direction: the exponential series `e^zeta zeta^(a-c) / Gamma(a)` plus the
/// algebraic series `e^(+-i pi a) zeta^(-a) / Gamma(c-a)`, the sign following
/// the half-plane of `zeta`.
pub fn large_argument(a: Complex64, c: Complex64, zeta: Complex64) -> Result<Estimate> {
    let gc = gamma_c(c)?;
    let ln_z = zeta.ln();
    let side = if zeta.arg() >= 0.0 { 1.0 } else { -1.0 };
    let i = Complex64::new(0.0, 1.0);

    let (s_alg, e_alg) = divergent_series(a, a - c + 1.0, -1.0 / zeta);
    let pre_alg = gc * rgamma_c(c - a) * (side * i * PI * a - a * ln_z).exp();

    let (s_exp, e_exp) = divergent_series(c - a, 1.0 - a, 1.0 / zeta);
    let pre_exp = gc * rgamma_c(a) * (zeta + (a - c) * ln_z).exp();

    let value = pre_alg * s_alg + pre_exp * s_exp;
    let err = 4.0 * (pre_alg.norm() * e_alg + pre_exp.norm() * e_exp);
    let scale = value.norm();
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::NonFinite(format!("M({a}, {c}, {zeta}) large-argument expansion")));
    }
    Ok(Estimate { value, rel_err: err / scale + f64::EPSILON })
}
