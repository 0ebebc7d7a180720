//! Closed-form solution families.

mod criterion;
mod explicit;
mod oscillator;
mod series;

pub use criterion::{
    criterion_eta, tau_criterion, w_criterion, w_criterion_prime, x_tau, y_mu, TauConstants, SINGULAR_GUARD,
};
pub use explicit::upsilon_m1_explicit;
pub use oscillator::{
    g_mu1, g_mu1_prime, ladder, neg_odd_norm_i, neg_odd_norm_j, neg_odd_polys, psi_mu, psi_mu_prime, psi_neg_odd,
    Ladder, NegOddBranch, NegOddPolys, NEG_ODD_MAX_M,
};
pub use series::{
    r_series, series_coeff, series_coeff_scaled, series_coeffs_scaled, CoeffKind, Scaled, SeriesCoeffs,
    R_SERIES_TERMS,
};
