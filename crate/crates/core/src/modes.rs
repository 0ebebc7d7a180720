//! Quasi-eigenmodes: the `Upsilon` basis, the no-slip coefficient solve, the
//! stream function `phi_k` and the velocity field.
//!
//! ```text
//! Upsilon_i(eta) = int_{eta*}^{eta} (1 + (eta^2 - xi^2)/2) psi_i(xi) dxi - psi_i'(eta*)/2
//! phi_k(y)       = c0 (mu - eta(y)^2) + c1 Upsilon_1(eta(y)) + c2 Upsilon_2(eta(y))
//! ```
//!
//! At `mu = 1` the second branch is built from `g = e^{eta^2/2} erf(eta)`,
//! which solves the oscillator equation at `mu - 2` instead of `mu + 2`; the
//! kernel then reads `-1 + (eta^2 - xi^2)/2`. Both forms equal
//! `B_mu int_{eta*}^{eta} psi / 2` with `B_mu = -d^2 + eta^2 - mu`.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::frames::Frame;
use crate::shearlayer::CriticalPoint;
use crate::quadrature::{integrate_segment, QuadOptions};
use crate::solutions::{g_mu1, g_mu1_prime, psi_mu, psi_mu_prime};
use crate::{Branch, Error, Result};

/// `|mu - 1|` below which the second branch switches to `g`.
pub const MU_ONE_TOL: f64 = 1e-12;
/// Relative singular-value threshold for the boundary-system rank.
pub const RANK_TOL: f64 = 1e-10;
/// Row norm below which the boundary system counts as zero.
pub const ZERO_ROW_TOL: f64 = 1e-14;

/// Weights of `(mu - eta^2, Upsilon_1, Upsilon_2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTriple {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl CoefficientTriple {
    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64) -> Self {
        CoefficientTriple { c0, c1, c2 }
    }

    pub fn as_array(&self) -> [Complex64; 3] {
        [self.c0, self.c1, self.c2]
    }
}

/// The three solutions spanning the kernel of `-Y''' + (eta^2 - mu) Y' - 2 eta Y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpsilonBasis {
    pub mu: Complex64,
    pub eta_star: Complex64,
    /// Set iff `|mu - 1| < MU_ONE_TOL`; the second branch then uses `g`.
    pub special_mu1: bool,
    pub quad: QuadOptions,
}

impl UpsilonBasis {
    pub fn new(mu: Complex64, eta_star: Complex64) -> Self {
        UpsilonBasis { mu, eta_star, special_mu1: (mu - 1.0).norm() < MU_ONE_TOL, quad: QuadOptions::default() }
    }

    pub fn with_quadrature(mut self, quad: QuadOptions) -> Self {
        self.quad = quad;
        self
    }

    /// Oscillator solution behind branch `i` (`g` for branch 2 when `mu = 1`).
    pub fn psi(&self, branch: Branch, eta: Complex64) -> Result<Complex64> {
        match (branch, self.special_mu1) {
            (Branch::Two, true) => g_mu1(eta),
            _ => psi_mu(self.mu, branch, eta),
        }
    }

    pub fn psi_prime(&self, branch: Branch, eta: Complex64) -> Result<Complex64> {
        match (branch, self.special_mu1) {
            (Branch::Two, true) => g_mu1_prime(eta),
            _ => psi_mu_prime(self.mu, branch, eta),
        }
    }

    pub fn quadratic(&self, eta: Complex64) -> Complex64 {
        self.mu - eta * eta
    }

    /// `+1`, or `-1` for the `g` branch at `mu = 1`.
    pub fn kernel_sign(&self, branch: Branch) -> f64 {
        match (branch, self.special_mu1) {
            (Branch::Two, true) => -1.0,
            _ => 1.0,
        }
    }

    /// `Upsilon_{mu,eta*,i}(eta)` by adaptive quadrature of the kernel integrand.
    pub fn upsilon(&self, branch: Branch, eta: Complex64) -> Result<Complex64> {
        let e2 = eta * eta;
        let s = self.kernel_sign(branch);
        let integrand = |xi: Complex64| -> Result<Complex64> { Ok((s + 0.5 * (e2 - xi * xi)) * self.psi(branch, xi)?) };
        let integral = integrate_segment(integrand, self.eta_star, eta, &self.quad)?.value;
        Ok(integral - 0.5 * self.psi_prime(branch, self.eta_star)?)
    }

    /// `Upsilon_i'(eta) = +-psi_i(eta) + eta int_{eta*}^{eta} psi_i`.
    pub fn upsilon_prime(&self, branch: Branch, eta: Complex64) -> Result<Complex64> {
        let integral = integrate_segment(|xi| self.psi(branch, xi), self.eta_star, eta, &self.quad)?.value;
        Ok(self.kernel_sign(branch) * self.psi(branch, eta)? + eta * integral)
    }

    /// `c0 (mu - eta^2) + c1 Upsilon_1 + c2 Upsilon_2`, skipping zero weights.
    pub fn combination(&self, coeffs: &CoefficientTriple, eta: Complex64) -> Result<Complex64> {
        let mut v = coeffs.c0 * self.quadratic(eta);
        if coeffs.c1 != Complex64::new(0.0, 0.0) {
            v += coeffs.c1 * self.upsilon(Branch::One, eta)?;
        }
        if coeffs.c2 != Complex64::new(0.0, 0.0) {
            v += coeffs.c2 * self.upsilon(Branch::Two, eta)?;
        }
        Ok(v)
    }

    /// `d/deta` of [`UpsilonBasis::combination`].
    pub fn combination_prime(&self, coeffs: &CoefficientTriple, eta: Complex64) -> Result<Complex64> {
        let mut v = -2.0 * coeffs.c0 * eta;
        if coeffs.c1 != Complex64::new(0.0, 0.0) {
            v += coeffs.c1 * self.upsilon_prime(Branch::One, eta)?;
        }
        if coeffs.c2 != Complex64::new(0.0, 0.0) {
            v += coeffs.c2 * self.upsilon_prime(Branch::Two, eta)?;
        }
        Ok(v)
    }

    /// The 2x3 boundary matrix whose nullspace gives `Upsilon(eta*) = Upsilon'(eta*) = 0`.
    pub fn boundary_matrix(&self) -> Result<[[Complex64; 3]; 2]> {
        let s = self.eta_star;
        Ok([
            [self.quadratic(s), -0.5 * self.psi_prime(Branch::One, s)?, -0.5 * self.psi_prime(Branch::Two, s)?],
            [-2.0 * s, self.psi(Branch::One, s)?, self.kernel_sign(Branch::Two) * self.psi(Branch::Two, s)?],
        ])
    }
}

/// `Upsilon_{mu,eta*,i}(eta)` for a freshly built basis.
pub fn upsilon(basis: &UpsilonBasis, branch: Branch, eta: Complex64) -> Result<Complex64> {
    basis.upsilon(branch, eta)
}

fn row_norm(r: &[Complex64; 3]) -> f64 {
    r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: [Complex64; 3]) -> [Complex64; 3] {
    let pivot = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or_default();
    if pivot.norm() == 0.0 {
        return v;
    }
    v.map(|c| c / pivot)
}

/// Singular values `(s_max, s_min)` of a 2x3 complex matrix.
pub fn singular_values(m: &[[Complex64; 3]; 2]) -> (f64, f64) {
    let dot = |a: &[Complex64; 3], b: &[Complex64; 3]| -> Complex64 { a.iter().zip(b).map(|(x, y)| x * y.conj()).sum() };
    let g11 = dot(&m[0], &m[0]).re;
    let g22 = dot(&m[1], &m[1]).re;
    let g12 = dot(&m[0], &m[1]);
    let tr = g11 + g22;
    // det of the Gram matrix = |r1 x r2|^2, accurate even when nearly singular
    let cross = cross(&m[0], &m[1]);
    let det = row_norm(&cross).powi(2);
    let disc = ((g11 - g22).powi(2) + 4.0 * g12.norm_sqr()).sqrt();
    let l1 = 0.5 * (tr + disc);
    let l2 = if l1 > 0.0 { det / l1 } else { 0.0 };
    (l1.sqrt(), l2.max(0.0).sqrt())
}

fn cross(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Basis of `{v : m v = 0}` (bilinear, no conjugation), each vector scaled so
/// that its largest component is exactly 1.
pub fn nullspace(m: &[[Complex64; 3]; 2]) -> Result<Vec<[Complex64; 3]>> {
    let n0 = row_norm(&m[0]);
    let n1 = row_norm(&m[1]);
    if n0 < ZERO_ROW_TOL && n1 < ZERO_ROW_TOL {
        return Err(Error::DegenerateSystem);
    }
    let (s_max, s_min) = singular_values(m);
    if s_min > RANK_TOL * s_max {
        return Ok(vec![normalize(cross(&m[0], &m[1]))]);
    }
    let r = if n0 >= n1 { &m[0] } else { &m[1] };
    let p = (0..3).max_by(|&i, &j| r[i].norm().total_cmp(&r[j].norm())).expect("three columns");
    let mut out = Vec::with_capacity(2);
    for q in (0..3).filter(|&q| q != p) {
        let mut v = [Complex64::new(0.0, 0.0); 3];
        v[q] = Complex64::new(1.0, 0.0);
        v[p] = -r[q] / r[p];
        out.push(normalize(v));
    }
    Ok(out)
}

/// Coefficient triples giving `phi_k(0) = phi_k'(0) = 0` for the basis at `(mu, eta*)`.
pub fn solve_boundary_coefficients(mu: Complex64, eta_star: Complex64) -> Result<Vec<CoefficientTriple>> {
    let m = UpsilonBasis::new(mu, eta_star).boundary_matrix()?;
    Ok(nullspace(&m)?.into_iter().map(|v| CoefficientTriple::new(v[0], v[1], v[2])).collect())
}

/// A stream function `phi_k` attached to a frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub frame: Frame,
    pub coeffs: CoefficientTriple,
    pub basis: UpsilonBasis,
}

impl Mode {
    /// Basis anchored at the frame's boundary image `eta*`.
    pub fn new(frame: Frame, coeffs: CoefficientTriple) -> Self {
        Mode { frame, coeffs, basis: UpsilonBasis::new(frame.mu, frame.eta_star) }
    }

    /// Basis anchored at an arbitrary `eta*`.
    pub fn with_eta_star(frame: Frame, coeffs: CoefficientTriple, eta_star: Complex64) -> Self {
        Mode { frame, coeffs, basis: UpsilonBasis::new(frame.mu, eta_star) }
    }

    /// No-slip mode: first nullspace triple of the boundary system at the frame's `eta*`.
    pub fn no_slip(frame: Frame) -> Result<Self> {
        let triples = solve_boundary_coefficients(frame.mu, frame.eta_star)?;
        Ok(Mode::new(frame, triples[0]))
    }

    pub fn with_quadrature(mut self, quad: QuadOptions) -> Self {
        self.basis = self.basis.with_quadrature(quad);
        self
    }

    fn check_y(y: f64) -> Result<()> {
        if y >= 0.0 && y.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("y = {y} must be nonnegative")))
        }
    }

    /// `phi_k(y)`.
    pub fn stream_function(&self, y: f64) -> Result<Complex64> {
        Self::check_y(y)?;
        self.basis.combination(&self.coeffs, self.frame.y_to_eta(y))
    }

    /// `phi_k'(y)` by the chain rule with the analytic `eta`-derivative.
    pub fn stream_function_prime(&self, y: f64) -> Result<Complex64> {
        Self::check_y(y)?;
        Ok(self.frame.deta_dy() * self.basis.combination_prime(&self.coeffs, self.frame.y_to_eta(y))?)
    }

    /// `(u, v) = (phi', -i k phi) e^{i k x + sigma sqrt|k| t}`.
    pub fn velocity_field(&self, t: f64, x: f64, y: f64) -> Result<(Complex64, Complex64)> {
        let k = self.frame.mode.k as f64;
        let phase = (Complex64::new(0.0, k * x) + self.frame.time_rate() * t).exp();
        let u = self.stream_function_prime(y)? * phase;
        let v = Complex64::new(0.0, -k) * self.stream_function(y)? * phase;
        Ok((u, v))
    }

    /// `phi_k` on `n` uniformly spaced points of `[y_min, y_max]`.
    pub fn sample_profile(&self, y_min: f64, y_max: f64, n: usize) -> Result<SampledProfile> {
        if !(0.0 <= y_min && y_min < y_max && y_max.is_finite()) || n < 2 {
            return Err(Error::InvalidArgument(format!("grid [{y_min}, {y_max}] with {n} points")));
        }
        let rows = sample_grid(y_min, y_max, n, |y| self.stream_function(y))?;
        Ok(SampledProfile {
            coord: "y".into(),
            rows,
            meta: ProfileMeta {
                frame: Some(self.frame),
                coeffs: Some(self.coeffs),
                eta_star: Some(self.basis.eta_star),
                ..ProfileMeta::default()
            },
        })
    }
}

/// `n` uniform points of `[lo, hi]` with exact endpoints.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { hi } else { lo + h * i as f64 }).collect()
}

/// Evaluates `f` on a uniform grid in parallel; rows come back in grid order.
pub fn sample_grid<F>(lo: f64, hi: f64, n: usize, f: F) -> Result<Vec<(f64, Complex64)>>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    uniform_grid(lo, hi, n).into_par_iter().map(|x| Ok((x, f(x)?))).collect()
}

/// Frame and coefficient snapshot written beside a CSV.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ProfileMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Frame>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<CoefficientTriple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_star: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_point: Option<CriticalPoint>,
}

/// Ordered `(coordinate, value)` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub coord: String,
    pub rows: Vec<(f64, Complex64)>,
    pub meta: ProfileMeta,
}

/// Formats with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

impl SampledProfile {
    /// CSV with header `<coord>,re,im`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv output: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record([self.coord.as_str(), "re", "im"]).map_err(io)?;
        for (x, v) in &self.rows {
            w.write_record([fmt17(*x), fmt17(v.re), fmt17(v.im)]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::InvalidArgument(format!("csv output: {e}")))
    }

    /// Writes `path` and the sidecar `<stem>.meta.json`; returns the sidecar path.
    pub fn write_files(&self, path: &Path) -> Result<PathBuf> {
        let io = |e: std::io::Error| Error::InvalidArgument(format!("{}: {e}", path.display()));
        let file = std::fs::File::create(path).map_err(io)?;
        self.write_csv(std::io::BufWriter::new(file))?;
        let sidecar = sidecar_path(path);
        let json = serde_json::to_string_pretty(&self.meta)
            .map_err(|e| Error::InvalidArgument(format!("metadata: {e}")))?;
        std::fs::write(&sidecar, json + "\n").map_err(io)?;
        Ok(sidecar)
    }
}

/// `<dir>/<stem>.meta.json` beside `path`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "profile".into());
    path.with_file_name(format!("{stem}.meta.json"))
}
