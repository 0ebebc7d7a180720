//! Solutions of the oscillator equation `-psi'' + eta^2 psi = (mu + 2) psi`
//! and the ladder operators `A_up = eta - d/deta`, `A_down = eta + d/deta`.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::quadrature::{cauchy_derivative, DerivOptions};
use crate::specfun::{erf_c, kummer_m, kummer_m_prime};
use crate::{c64, finite, Branch, Error, Result};

fn first_params(mu: Complex64) -> (Complex64, Complex64) {
    (-(1.0 + mu) / 4.0, c64(0.5, 0.0))
}

fn second_params(mu: Complex64) -> (Complex64, Complex64) {
    ((1.0 - mu) / 4.0, c64(1.5, 0.0))
}

/// `psi_{mu,1} = M(-(1+mu)/4, 1/2, eta^2) e^{-eta^2/2}` and
/// `psi_{mu,2} = eta M((1-mu)/4, 3/2, eta^2) e^{-eta^2/2}`.
pub fn psi_mu(mu: Complex64, branch: Branch, eta: Complex64) -> Result<Complex64> {
    let e2 = eta * eta;
    let gauss = (-0.5 * e2).exp();
    let v = match branch {
        Branch::One => {
            let (a, c) = first_params(mu);
            kummer_m(a, c, e2)? * gauss
        }
        Branch::Two => {
            let (a, c) = second_params(mu);
            eta * kummer_m(a, c, e2)? * gauss
        }
    };
    finite(v, "psi_mu")
}

/// Derivative of [`psi_mu`] in `eta` (product rule with `M' = (a/c) M(a+1, c+1, .)`).
pub fn psi_mu_prime(mu: Complex64, branch: Branch, eta: Complex64) -> Result<Complex64> {
    let e2 = eta * eta;
    let gauss = (-0.5 * e2).exp();
    let v = match branch {
        Branch::One => {
            let (a, c) = first_params(mu);
            let m = kummer_m(a, c, e2)?;
            let mp = kummer_m_prime(a, c, e2)?;
            eta * (2.0 * mp - m) * gauss
        }
        Branch::Two => {
            let (a, c) = second_params(mu);
            let m = kummer_m(a, c, e2)?;
            let mp = kummer_m_prime(a, c, e2)?;
            (m + e2 * (2.0 * mp - m)) * gauss
        }
    };
    finite(v, "psi_mu_prime")
}

/// `g(eta) = e^{eta^2/2} erf(eta)`, spanning with `psi_{1,1}` the kernel used at `mu = 1`.
pub fn g_mu1(eta: Complex64) -> Result<Complex64> {
    finite((0.5 * eta * eta).exp() * erf_c(eta)?, "g_mu1")
}

/// `g'(eta) = eta g(eta) + (2/sqrt pi) e^{-eta^2/2}`.
pub fn g_mu1_prime(eta: Complex64) -> Result<Complex64> {
    let e2 = eta * eta;
    finite(eta * (0.5 * e2).exp() * erf_c(eta)? + FRAC_2_SQRT_PI * (-0.5 * e2).exp(), "g_mu1_prime")
}

/// The two solutions at `mu = -(2m+3)`: `I` is `p_m e^{eta^2/2}`, `J` carries the
/// error-function factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegOddBranch {
    I,
    J,
}

impl NegOddBranch {
    /// Kummer branch the solution coincides with: `I` is even for even `m`.
    pub fn kummer_branch(self, m: u32) -> Branch {
        let even = m.is_multiple_of(2);
        match (self, even) {
            (NegOddBranch::I, true) | (NegOddBranch::J, false) => Branch::One,
            _ => Branch::Two,
        }
    }
}

/// Integer coefficient vectors (lowest degree first) of `A_down^m` applied to
/// `e^{eta^2/2}` and to `e^{eta^2/2} int_0^eta e^{-xi^2}`:
///
/// ```text
/// A_down^m e^{eta^2/2}                = p(eta) e^{eta^2/2}
/// A_down^m (e^{eta^2/2} E(eta))       = q(eta) e^{eta^2/2} E(eta) + q~(eta) e^{-eta^2/2}
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegOddPolys {
    pub m: u32,
    pub p: Vec<i128>,
    pub q: Vec<i128>,
    pub q_tilde: Vec<i128>,
}

/// Largest `m` whose ladder polynomials fit the integer coefficients.
pub const NEG_ODD_MAX_M: u32 = 24;

fn derivative(p: &[i128]) -> Vec<i128> {
    p.iter().enumerate().skip(1).map(|(k, &c)| c * k as i128).collect()
}

fn add(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len().max(b.len());
    (0..n).map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)).collect()
}

fn times_two_eta(p: &[i128]) -> Vec<i128> {
    let mut out = vec![0];
    out.extend(p.iter().map(|c| 2 * c));
    out
}

fn trim(mut p: Vec<i128>) -> Vec<i128> {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn neg_odd_table() -> &'static [NegOddPolys] {
    static TABLE: OnceLock<Vec<NegOddPolys>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(NEG_ODD_MAX_M as usize + 1);
        let (mut p, mut q, mut qt) = (vec![1i128], vec![1i128], vec![0i128]);
        for m in 0..=NEG_ODD_MAX_M {
            out.push(NegOddPolys { m, p: p.clone(), q: q.clone(), q_tilde: qt.clone() });
            // A_down (f e^{eta^2/2}) = (2 eta f + f') e^{eta^2/2}
            // A_down (f e^{-eta^2/2}) = f' e^{-eta^2/2}
            let next_p = trim(add(&times_two_eta(&p), &derivative(&p)));
            let next_q = trim(add(&times_two_eta(&q), &derivative(&q)));
            let next_qt = trim(add(&q, &derivative(&qt)));
            p = next_p;
            q = next_q;
            qt = next_qt;
        }
        out
    })
}

/// Ladder polynomials for `mu = -(2m+3)`.
pub fn neg_odd_polys(m: u32) -> Result<&'static NegOddPolys> {
    neg_odd_table()
        .get(m as usize)
        .ok_or_else(|| Error::InvalidArgument(format!("m = {m} exceeds {NEG_ODD_MAX_M}")))
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Normalising factor of branch `I` as a fraction: `ceil(m/2)! / (2 ceil(m/2))!`.
pub fn neg_odd_norm_i(m: u32) -> (u128, u128) {
    let h = m.div_ceil(2);
    (factorial(h), factorial(2 * h))
}

/// Normalising factor of branch `J` as a fraction: `1 / (h! 4^h)`, `h = ceil((m-1)/2)`.
pub fn neg_odd_norm_j(m: u32) -> (u128, u128) {
    let h = m / 2;
    (1, factorial(h) * 4u128.pow(h))
}

fn horner(p: &[i128], x: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c as f64)
}

/// Semi-explicit oscillator solution at `mu = -(2m+3)`, normalised so that it
/// coincides with `psi_mu(mu, branch.kummer_branch(m), .)`.
pub fn psi_neg_odd(m: u32, branch: NegOddBranch, eta: Complex64) -> Result<Complex64> {
    let polys = neg_odd_polys(m)?;
    let e2 = eta * eta;
    let v = match branch {
        NegOddBranch::I => {
            let (n, d) = neg_odd_norm_i(m);
            horner(&polys.p, eta) * (0.5 * e2).exp() * (n as f64 / d as f64)
        }
        NegOddBranch::J => {
            let (n, d) = neg_odd_norm_j(m);
            let integral = 0.5 * PI.sqrt() * erf_c(eta)?;
            let body = horner(&polys.q, eta) * (0.5 * e2).exp() * integral + horner(&polys.q_tilde, eta) * (-0.5 * e2).exp();
            body * (n as f64 / d as f64)
        }
    };
    finite(v, "psi_neg_odd")
}

/// Ladder direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// `A_up = eta - d/deta`, raises `mu` by 2.
    Up,
    /// `A_down = eta + d/deta`, lowers `mu` by 2.
    Down,
}

/// `(A f)(eta)` with `f'` from a Cauchy-integral derivative.
pub fn ladder<F>(direction: Ladder, f: F, eta: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let fv = f(eta)?;
    let d = cauchy_derivative(&f, eta, 1, &DerivOptions::default())?;
    Ok(match direction {
        Ladder::Up => eta * fv - d,
        Ladder::Down => eta * fv + d,
    })
}
