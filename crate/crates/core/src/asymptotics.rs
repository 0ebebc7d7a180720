//! Large-`z` forms of Kummer's `M`, of the `Upsilon` basis, and the growth
//! classification that singles out `mu = -1`.
//!
//! Powers `(b^2 z^2)^gamma` are single valued: `(|b|^2 z^2)^gamma e^{i gamma arg(b^2)}`
//! with `arg(b) = -+pi/8`, `arg(b^2) = -+pi/4` for `sgn k = +-1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::modes::UpsilonBasis;
use crate::quadrature::{integrate_segment, QuadOptions};
use crate::specfun::{gamma_c, nonpositive_integer, rgamma_c};
use crate::{c64, cis, finite, Branch, Error, Result};

/// Half-width `delta` cut from the sector `|arg zeta| < pi/2`.
pub const SECTOR_DELTA: f64 = 0.05;
/// Tolerance used to recognise odd integers.
pub const ODD_TOL: f64 = 1e-10;
/// Side ratio above which a combination counts as divergent.
pub const DIVERGENCE_RATIO: f64 = 1e3;

/// `C_1 = Gamma(1/2)/Gamma(-(mu+1)/4)`, `C_2 = Gamma(3/2)/Gamma((1-mu)/4)` and
/// the rotation `b` for a given frequency sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticConstants {
    pub mu: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub b: Complex64,
    pub arg_b2: f64,
}

impl AsymptoticConstants {
    pub fn new(mu: Complex64, sign_k: i8) -> Self {
        let s = if sign_k < 0 { -1.0 } else { 1.0 };
        AsymptoticConstants {
            mu,
            c1: PI.sqrt() * rgamma_c(-(mu + 1.0) / 4.0),
            c2: 0.5 * PI.sqrt() * rgamma_c((1.0 - mu) / 4.0),
            b: cis(-s * PI / 8.0),
            arg_b2: -s * PI / 4.0,
        }
    }

    /// `(b^2 z^2)^gamma`, even in `z`.
    pub fn power(&self, z: f64, gamma: Complex64) -> Complex64 {
        power(z, gamma, self.arg_b2)
    }

    /// `e^{b^2 z^2 / 2}`.
    pub fn gaussian(&self, z: f64) -> Complex64 {
        (0.5 * self.b * self.b * z * z).exp()
    }
}

fn power(z: f64, gamma: Complex64, arg_b2: f64) -> Complex64 {
    (gamma * c64((z * z).ln(), arg_b2)).exp()
}

/// `Gamma(c)/Gamma(a) e^zeta zeta^{a-c} sum_{n<terms} (1-a)_n (c-a)_n / (n! zeta^n)`.
///
/// # Errors
///
/// [`Error::SectorViolation`] for `|arg zeta| >= pi/2 - SECTOR_DELTA`,
/// [`Error::ExcludedParameter`] for `a` a nonpositive integer or `c - a` a
/// nonpositive even integer.
pub fn kummer_asymptotic(a: Complex64, c: Complex64, zeta: Complex64, terms: usize) -> Result<Complex64> {
    if zeta == Complex64::new(0.0, 0.0) || zeta.arg().abs() >= PI / 2.0 - SECTOR_DELTA {
        return Err(Error::SectorViolation(zeta));
    }
    if nonpositive_integer(a).is_some() {
        return Err(Error::ExcludedParameter(format!("a = {a} is a nonpositive integer")));
    }
    if nonpositive_integer(c - a).is_some_and(|n| n % 2 == 0) {
        return Err(Error::ExcludedParameter(format!("c - a = {} is a nonpositive even integer", c - a)));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 0..terms.max(1) {
        sum += term;
        let k = n as f64;
        term *= (1.0 - a + k) * (c - a + k) / ((k + 1.0) * zeta);
    }
    let lead = gamma_c(c)? * rgamma_c(a) * (zeta + (a - c) * zeta.ln()).exp();
    finite(lead * sum, "kummer_asymptotic")
}

/// Leading form `e^{b^2 z^2/2} (b^2 z^2)^gamma / (b^2 z)` of
/// `int_{sgn z}^{z} e^{b^2 x^2/2} (b^2 x^2)^gamma dx`.
pub fn integral_asymptotic(gamma: Complex64, sign_k: i8, z: f64) -> Complex64 {
    let k = AsymptoticConstants::new(Complex64::new(0.0, 0.0), sign_k);
    k.gaussian(z) * k.power(z, gamma) / (k.b * k.b * z)
}

/// The same integral by quadrature along the real segment from `sgn z` to `z`.
pub fn integral_exact(gamma: Complex64, sign_k: i8, z: f64) -> Result<Complex64> {
    let k = AsymptoticConstants::new(Complex64::new(0.0, 0.0), sign_k);
    let f = |x: Complex64| Ok(k.gaussian(x.re) * k.power(x.re, gamma));
    let from = c64(z.signum(), 0.0);
    Ok(integrate_segment(f, from, c64(z, 0.0), &QuadOptions::default())?.value)
}

/// `Some(n)` when `mu` is within [`ODD_TOL`] of the odd integer `2n - 1`.
fn odd_index(mu: Complex64) -> Option<i64> {
    let r = mu.re.round();
    if (mu - r).norm() < ODD_TOL && (r as i64).rem_euclid(2) == 1 {
        Some((r as i64 + 1) / 2)
    } else {
        None
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn ceil_half(m: i64) -> u32 {
    (m + 1).div_euclid(2).max(0) as u32
}

/// Prefactors `(L_i, L_j)` of the two odd-negative branches at `mu = -(2m+3)`.
pub fn neg_odd_prefactors(m: u32) -> (f64, f64) {
    let ci = ceil_half(m as i64);
    let cj = ceil_half(m as i64 - 1);
    let two_m = 2f64.powi(m as i32);
    (two_m * factorial(ci) / factorial(2 * ci), two_m / (factorial(cj) * 4f64.powi(cj as i32)))
}

/// Which Kummer branch carries the polynomial (`i`) factor at `mu = -(2m+3)`.
pub fn neg_odd_i_branch(m: u32) -> Branch {
    if m.is_multiple_of(2) {
        Branch::One
    } else {
        Branch::Two
    }
}

fn leading(mu: Complex64, branch: Branch, sign_k: i8, z: f64) -> Result<Complex64> {
    if z == 0.0 {
        return Err(Error::InvalidArgument("z must be nonzero".into()));
    }
    let k = AsymptoticConstants::new(mu, sign_k);
    let bz = k.b * z;
    match odd_index(mu) {
        Some(n) if n >= 0 => Err(Error::UnsupportedMu(mu)),
        Some(n) => {
            let m = (-n - 1) as u32;
            let (li, lj) = neg_odd_prefactors(m);
            let shape = bz.powi(m as i32 - 1) * k.gaussian(z);
            if branch == neg_odd_i_branch(m) {
                Ok(2.0 * li * shape)
            } else {
                Ok(z.signum() * PI.sqrt() * lj * shape)
            }
        }
        None => Ok(match branch {
            Branch::One => 2.0 * k.c1 * k.gaussian(z) * k.power(z, -(mu + 3.0) / 4.0) / bz,
            Branch::Two => 2.0 * k.c2 * k.gaussian(z) * k.power(z, -(mu + 5.0) / 4.0),
        }),
    }
}

/// Leading-order `Upsilon_{mu,0,i}(b z)` as `z -> +-infinity`.
///
/// # Errors
///
/// [`Error::UnsupportedMu`] for `mu` in `{-1, 1, 3, ...}`, where the exact
/// evaluator applies.
pub fn upsilon_asymptotic_leading(mu: Complex64, branch: Branch, sign_k: i8, z: f64) -> Result<Complex64> {
    finite(leading(mu, branch, sign_k, z)?, "upsilon_asymptotic_leading")
}

/// [`upsilon_asymptotic_leading`] times the first correction
/// `1 + (mu+5)(mu+15)/(16 b^2 z^2)`.
pub fn upsilon_asymptotic(mu: Complex64, branch: Branch, sign_k: i8, z: f64) -> Result<Complex64> {
    let lead = leading(mu, branch, sign_k, z)?;
    let b = AsymptoticConstants::new(mu, sign_k).b;
    let e2 = b * b * z * z;
    finite(lead * (1.0 + (mu + 5.0) * (mu + 15.0) / (16.0 * e2)), "upsilon_asymptotic")
}

/// Growth class of the `Upsilon` basis at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Growth {
    /// `mu = 2n - 1` with `n != 1`: one branch collapses to a polynomial times a Gaussian.
    BoundState(u32),
    /// `mu = 1`, where the second branch is built from `g`.
    SpecialMuOne,
    /// Every combination with `(c1, c2) != (0, 0)` outgrows `mu - eta^2` on at
    /// least one end of the real line.
    GenericExponential,
}

pub fn classify_growth(mu: Complex64) -> Growth {
    match odd_index(mu) {
        Some(1) => Growth::SpecialMuOne,
        Some(n) if n >= 0 => Growth::BoundState(n as u32),
        _ => Growth::GenericExponential,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Admissible,
    Divergent,
}

/// One grid point of [`criterion_uniqueness_scan`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub mu: Complex64,
    /// `|Upsilon/(mu - eta^2)|` at `eta = b(-Z)` and `eta = b(+Z)` for the
    /// unit combination `(c1, c2)` that is smallest at both ends.
    pub side_ratios: [f64; 2],
    /// Smallest singular value of the side-ratio matrix.
    pub sigma_min: f64,
    pub verdict: Verdict,
}

/// Smallest singular value and its right singular vector of a 2x2 matrix.
fn min_singular(m: [[Complex64; 2]; 2]) -> (f64, [Complex64; 2]) {
    let col = |j: usize| [m[0][j], m[1][j]];
    let dot = |a: [Complex64; 2], b: [Complex64; 2]| a[0].conj() * b[0] + a[1].conj() * b[1];
    let (a, b) = (col(0), col(1));
    let g11 = dot(a, a).re;
    let g22 = dot(b, b).re;
    let g12 = dot(a, b);
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
    let disc = ((g11 - g22).powi(2) + 4.0 * g12.norm_sqr()).sqrt();
    let l_max = 0.5 * (g11 + g22 + disc);
    let s_min = if l_max > 0.0 { det / l_max.sqrt() } else { 0.0 };
    let l_min = s_min * s_min;
    // eigenvector of the Gram matrix for l_min
    let v = if (g11 - l_min).abs() + g12.norm() > (g22 - l_min).abs() + g12.norm() {
        [-g12, c64(g11 - l_min, 0.0)]
    } else {
        [c64(g22 - l_min, 0.0), -g12.conj()]
    };
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if n == 0.0 {
        return (s_min, [c64(1.0, 0.0), c64(0.0, 0.0)]);
    }
    (s_min, [v[0] / n, v[1] / n])
}

/// Side ratios of the `eta* = 0` basis at `eta = b(+-z_far)` for one `mu`.
pub fn scan_point(mu: Complex64, z_far: f64) -> Result<ScanRecord> {
    let basis = UpsilonBasis::new(mu, Complex64::new(0.0, 0.0));
    let b = cis(-PI / 8.0);
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (row, side) in [-1.0, 1.0].into_iter().enumerate() {
        let eta = b * (side * z_far);
        let q = basis.quadratic(eta);
        for (j, branch) in [Branch::One, Branch::Two].into_iter().enumerate() {
            m[row][j] = basis.upsilon(branch, eta)? / q;
        }
    }
    let (s_min, v) = min_singular(m);
    let side = |r: usize| (m[r][0] * v[0] + m[r][1] * v[1]).norm();
    let verdict = if s_min / 2f64.sqrt() > DIVERGENCE_RATIO { Verdict::Divergent } else { Verdict::Admissible };
    Ok(ScanRecord { mu, side_ratios: [side(0), side(1)], sigma_min: s_min, verdict })
}

/// Runs [`scan_point`] over `grid` in parallel; records keep the grid order.
pub fn criterion_uniqueness_scan(grid: &[Complex64], z_far: f64) -> Result<Vec<ScanRecord>> {
    grid.par_iter().map(|&mu| scan_point(mu, z_far)).collect()
}

/// The 21 x 21 grid `tau = r e^{i theta}`, `r = (k+1)/7`, `theta = -pi (j+2)/24`,
/// mapped to `mu = tau e^{-i pi/4}`.
pub fn default_scan_grid() -> Vec<Complex64> {
    let mut grid = Vec::with_capacity(441);
    for k in 0..21 {
        for j in 0..21 {
            let tau = Complex64::from_polar((k + 1) as f64 / 7.0, -PI * (j + 2) as f64 / 24.0);
            grid.push(tau * cis(-PI / 4.0));
        }
    }
    grid
}
