//! Straight-segment path integrals and Cauchy-integral derivatives of
//! holomorphic functions.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Largest permitted bisection depth.
pub const MAX_DEPTH_LIMIT: u32 = 40;
/// Highest order accepted by [`cauchy_derivatives`].
pub const MAX_DERIVATIVE_ORDER: u32 = 4;

/// Tolerances for [`integrate_segment`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { rel_tol: 1e-11, abs_tol: 1e-13, max_depth: MAX_DEPTH_LIMIT }
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    from: Complex64,
    to: Complex64,
    value: Complex64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F>(f: &F, from: Complex64, to: Complex64) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let center = 0.5 * (from + to);
    let half = 0.5 * (to - from);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx)? + f(center + dx)?;
        kronrod += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    Ok((kronrod, (kronrod - gauss).norm()))
}

/// Integral of `f` along the straight segment `from -> to`.
///
/// Globally adaptive 7/15-point Gauss–Kronrod: the panel with the largest
/// error estimate `|K15 - G7|` is bisected until the summed estimate drops
/// below `max(rel_tol |value|, abs_tol)`.
///
/// # Errors
///
/// [`Error::MaxDepthExceeded`] carries the best estimate when a panel would
/// have to be split beyond `max_depth`; evaluation errors of `f` propagate.
pub fn integrate_segment<F>(f: F, from: Complex64, to: Complex64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(opts.rel_tol > 0.0 && opts.abs_tol > 0.0) || opts.max_depth > MAX_DEPTH_LIMIT {
        return Err(Error::InvalidArgument(format!("quadrature options {opts:?}")));
    }
    if from == to {
        return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 });
    }
    let (value, error) = gauss_kronrod(&f, from, to)?;
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { from, to, value, error, depth: 0 });
    let mut total = value;
    let mut total_err = error;
    loop {
        if total_err <= (opts.rel_tol * total.norm()).max(opts.abs_tol) {
            break;
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        if worst.depth >= opts.max_depth {
            return Err(Error::MaxDepthExceeded { estimate: total, error: total_err });
        }
        let mid = 0.5 * (worst.from + worst.to);
        let (v1, e1) = gauss_kronrod(&f, worst.from, mid)?;
        let (v2, e2) = gauss_kronrod(&f, mid, worst.to)?;
        evaluations += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { from: worst.from, to: mid, value: v1, error: e1, depth: worst.depth + 1 });
        heap.push(Panel { from: mid, to: worst.to, value: v2, error: e2, depth: worst.depth + 1 });
    }
    // re-sum to shed the drift of the running updates
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(QuadResult { value, error, evaluations })
}

/// Settings for [`cauchy_derivative`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivOptions {
    pub radius: f64,
    pub rel_tol: f64,
    pub initial_nodes: usize,
    pub max_nodes: usize,
}

impl Default for DerivOptions {
    fn default() -> Self {
        DerivOptions { radius: 0.5, rel_tol: 1e-11, initial_nodes: 64, max_nodes: 4096 }
    }
}

impl DerivOptions {
    /// Shrinks the radius to `0.4 * dist(center, nearest singularity)` when that is below the current radius.
    pub fn avoiding(mut self, center: Complex64, singularities: &[Complex64]) -> Self {
        let dist = singularities.iter().map(|s| (s - center).norm()).fold(f64::INFINITY, f64::min);
        self.radius = self.radius.min(0.4 * dist);
        self
    }
}

/// `n`-th derivative (`1 <= n <= 4`) of a holomorphic `f` at `center`:
/// `n!/(2 pi i) \oint f(w)/(w - center)^(n+1) dw` by the trapezoidal rule on
/// a circle. Starts at `initial_nodes` (at least 128 from the third
/// derivative on) and doubles, reusing earlier nodes, until successive
/// estimates agree.
///
/// # Errors
///
/// [`Error::NonConvergent`] when at `max_nodes` the last doubling still moved
/// the result by more than `10 rel_tol` of its natural scale
/// `n! max|f| / r^n`.
pub fn cauchy_derivative<F>(f: F, center: Complex64, order: u32, opts: &DerivOptions) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if order == 0 {
        return Err(Error::InvalidArgument("derivative order 0".into()));
    }
    Ok(cauchy_derivatives(f, center, order, opts)?[order as usize])
}

/// `[f(c), f'(c), ..., f^(max_order)(c)]` from one shared set of contour
/// samples; `f(c)` itself is evaluated directly.
pub fn cauchy_derivatives<F>(f: F, center: Complex64, max_order: u32, opts: &DerivOptions) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(1..=MAX_DERIVATIVE_ORDER).contains(&max_order) {
        return Err(Error::InvalidArgument(format!("derivative order {max_order}")));
    }
    if !(opts.radius > 0.0) || opts.initial_nodes < 32 || !opts.initial_nodes.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("derivative options {opts:?}")));
    }
    let r = opts.radius;
    let orders = max_order as usize;
    let mut nodes = if max_order >= 3 { opts.initial_nodes.max(128) } else { opts.initial_nodes };

    // per order n: sum over k of f(c + r w^k) w^{-kn}, w = e^{2 pi i / N}
    let mut sums = vec![Complex64::new(0.0, 0.0); orders];
    let mut fmax: f64 = 0.0;
    let add = |k: usize, total: usize, sums: &mut [Complex64]| -> Result<f64> {
        let theta = 2.0 * PI * k as f64 / total as f64;
        let fz = f(center + Complex64::from_polar(r, theta))?;
        for (i, s) in sums.iter_mut().enumerate() {
            *s += fz * Complex64::from_polar(1.0, -((i + 1) as f64) * theta);
        }
        Ok(fz.norm())
    };
    for k in 0..nodes {
        fmax = fmax.max(add(k, nodes, &mut sums)?);
    }
    let factorial = |n: usize| (1..=n).product::<usize>() as f64;
    let finish = |sums: &[Complex64], nodes: usize| -> Vec<Complex64> {
        sums.iter().enumerate().map(|(i, s)| s * factorial(i + 1) / (nodes as f64 * r.powi(i as i32 + 1))).collect()
    };
    let mut estimate = finish(&sums, nodes);
    loop {
        let doubled = nodes * 2;
        for k in (1..doubled).step_by(2) {
            fmax = fmax.max(add(k, doubled, &mut sums)?);
        }
        let next = finish(&sums, doubled);
        nodes = doubled;
        // worst change relative to each order's natural scale n! max|f| / r^n
        let worst = next
            .iter()
            .zip(&estimate)
            .enumerate()
            .map(|(i, (a, b))| (a - b).norm() / (factorial(i + 1) * fmax / r.powi(i as i32 + 1)))
            .fold(0.0, f64::max);
        estimate = next;
        if worst <= opts.rel_tol || (nodes >= opts.max_nodes && worst <= 10.0 * opts.rel_tol) {
            let mut out = Vec::with_capacity(orders + 1);
            out.push(f(center)?);
            out.extend(estimate);
            return Ok(out);
        }
        if nodes >= opts.max_nodes {
            return Err(Error::NonConvergent(format!(
                "Cauchy derivatives up to order {max_order} at {center}: relative change {worst:e} at {nodes} nodes"
            )));
        }
    }
}
