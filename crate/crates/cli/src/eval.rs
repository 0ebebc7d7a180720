//! Named evaluators reachable from `prandtl-modes eval`.

use num_complex::Complex64;
use prandtl_modes::asymptotics::upsilon_asymptotic;
use prandtl_modes::modes::UpsilonBasis;
use prandtl_modes::shearlayer::{example_flow_critical_point, shear_layer_V, CriticalPoint};
use prandtl_modes::solutions::{
    g_mu1, psi_mu, psi_mu_prime, r_series, tau_criterion, upsilon_m1_explicit, w_criterion, w_criterion_prime, x_tau,
    y_mu, R_SERIES_TERMS,
};
use prandtl_modes::specfun::{erf_c, erfi_c, gamma_c, kummer_m, kummer_m_prime, rgamma_c};
use prandtl_modes::{c64, Branch, Error, Result};

/// Parameters shared by the evaluators; unused ones are ignored.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub a: Complex64,
    pub c: Complex64,
    pub tau: Complex64,
    pub mu: Complex64,
    pub eta_star: Complex64,
    pub upp: Option<f64>,
    pub sign: i8,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            a: c64(0.0, 0.0),
            c: c64(1.0, 0.0),
            tau: tau_criterion(),
            mu: c64(-1.0, 0.0),
            eta_star: c64(0.0, 0.0),
            upp: None,
            sign: 1,
        }
    }
}

/// Registered names, in help order.
pub const FUNCTIONS: &[&str] = &[
    "kummer_m",
    "kummer_m_prime",
    "erf",
    "erfi",
    "gamma",
    "rgamma",
    "x_tau1",
    "x_tau2",
    "y_mu1",
    "y_mu2",
    "r_mu1",
    "r_mu2",
    "psi1",
    "psi2",
    "psi1_prime",
    "psi2_prime",
    "g_mu1",
    "w_criterion",
    "w_criterion_prime",
    "tau_criterion",
    "upsilon1",
    "upsilon2",
    "upsilon_m1_1",
    "upsilon_m1_2",
    "upsilon_asym1",
    "upsilon_asym2",
    "V",
];

pub fn is_known(name: &str) -> bool {
    FUNCTIONS.contains(&name)
}

fn real(x: Complex64, name: &str) -> Result<f64> {
    if x.im != 0.0 {
        return Err(Error::InvalidArgument(format!("{name} takes a real argument, got {x}")));
    }
    Ok(x.re)
}

/// Evaluates `name` at `x`; `None` for an unknown name.
pub fn evaluate(name: &str, x: Complex64, p: &Params) -> Option<Result<Complex64>> {
    let upsilon = |b: Branch| UpsilonBasis::new(p.mu, p.eta_star).upsilon(b, x);
    Some(match name {
        "kummer_m" => kummer_m(p.a, p.c, x),
        "kummer_m_prime" => kummer_m_prime(p.a, p.c, x),
        "erf" => erf_c(x),
        "erfi" => erfi_c(x),
        "gamma" => gamma_c(x),
        "rgamma" => Ok(rgamma_c(x)),
        "x_tau1" => x_tau(p.tau, Branch::One, x),
        "x_tau2" => x_tau(p.tau, Branch::Two, x),
        "y_mu1" => y_mu(p.mu, Branch::One, x),
        "y_mu2" => y_mu(p.mu, Branch::Two, x),
        "r_mu1" => r_series(p.mu, Branch::One, x, R_SERIES_TERMS),
        "r_mu2" => r_series(p.mu, Branch::Two, x, R_SERIES_TERMS),
        "psi1" => psi_mu(p.mu, Branch::One, x),
        "psi2" => psi_mu(p.mu, Branch::Two, x),
        "psi1_prime" => psi_mu_prime(p.mu, Branch::One, x),
        "psi2_prime" => psi_mu_prime(p.mu, Branch::Two, x),
        "g_mu1" => g_mu1(x),
        "w_criterion" => w_criterion(x),
        "w_criterion_prime" => w_criterion_prime(x),
        "tau_criterion" => Ok(tau_criterion()),
        "upsilon1" => upsilon(Branch::One),
        "upsilon2" => upsilon(Branch::Two),
        "upsilon_m1_1" => upsilon_m1_explicit(Branch::One, x),
        "upsilon_m1_2" => upsilon_m1_explicit(Branch::Two, x),
        "upsilon_asym1" => real(x, name).and_then(|z| upsilon_asymptotic(p.mu, Branch::One, p.sign, z)),
        "upsilon_asym2" => real(x, name).and_then(|z| upsilon_asymptotic(p.mu, Branch::Two, p.sign, z)),
        "V" => real(x, name).and_then(|z| {
            let cp = match p.upp {
                Some(upp) => CriticalPoint::new(0.0, upp)?,
                None => example_flow_critical_point(),
            };
            shear_layer_V(&cp, z)
        }),
        _ => return None,
    })
}
