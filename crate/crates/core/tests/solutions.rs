use std::f64::consts::PI;

use prandtl_modes::oracle::{
    cleared_disc_points, cleared_points, ladder_residual, random_tau, residual, series_equivalence, Ode,
};
use prandtl_modes::quadrature::{cauchy_derivative, DerivOptions};
use prandtl_modes::solutions::{
    neg_odd_norm_i, neg_odd_norm_j, neg_odd_polys, psi_mu, psi_neg_odd, r_series, tau_criterion, upsilon_m1_explicit,
    w_criterion, w_criterion_prime, x_tau, y_mu, Ladder, NegOddBranch, R_SERIES_TERMS,
};
use prandtl_modes::{c64, cis, Branch, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5EED)
}

#[test]
fn x_solutions_solve_their_equation_and_have_parity() {
    let mut r = rng();
    for _ in 0..10 {
        let tau = random_tau(&mut r);
        let pts = cleared_points(&mut r, 30, tau);
        for branch in [Branch::One, Branch::Two] {
            let rep = residual(Ode::X { tau }, |z| x_tau(tau, branch, z), &pts).unwrap();
            assert!(rep.max_rel_residual < 1e-8, "tau = {tau}: {:e}", rep.max_rel_residual);
        }
        for z in &pts {
            let (p, m) = (x_tau(tau, Branch::One, *z).unwrap(), x_tau(tau, Branch::One, -z).unwrap());
            assert!((p - m).norm() <= 1e-12 * p.norm());
            let (p, m) = (x_tau(tau, Branch::Two, *z).unwrap(), x_tau(tau, Branch::Two, -z).unwrap());
            assert!((p + m).norm() <= 1e-12 * p.norm());
        }
    }
}

#[test]
fn rotated_frames_agree_up_to_constants() {
    let mut r = rng();
    for _ in 0..8 {
        let tau = random_tau(&mut r);
        let mu = tau * cis(-PI / 4.0);
        let z = c64(r.gen_range(-3.0..3.0), 0.0);
        if (tau - z * z).norm() < 0.3 {
            continue;
        }
        let eta = cis(-PI / 8.0) * z;
        let y1 = y_mu(mu, Branch::One, eta).unwrap();
        let y2 = y_mu(mu, Branch::Two, eta).unwrap();
        let x1 = cis(PI / 4.0) * x_tau(tau, Branch::One, z).unwrap();
        let x2 = cis(3.0 * PI / 8.0) * x_tau(tau, Branch::Two, z).unwrap();
        assert!((y1 - x1).norm() < 1e-12 * y1.norm().max(1e-300), "{y1} vs {x1}");
        assert!((y2 - x2).norm() < 1e-12 * y2.norm().max(1e-300), "{y2} vs {x2}");
    }
}

#[test]
fn y_and_r_solve_their_equations() {
    let mut r = rng();
    for _ in 0..5 {
        let mu = c64(r.gen_range(-3.0..3.0), r.gen_range(-2.0..2.0));
        let pts = cleared_disc_points(&mut r, 5, 2.8, mu);
        for branch in [Branch::One, Branch::Two] {
            let y = residual(Ode::Y { mu }, |e| y_mu(mu, branch, e), &pts).unwrap();
            let s = residual(Ode::R { mu }, |e| r_series(mu, branch, e, R_SERIES_TERMS), &pts).unwrap();
            assert!(y.max_rel_residual < 1e-8 && s.max_rel_residual < 1e-8);
            let eq = series_equivalence(mu, branch, &pts).unwrap();
            assert!(eq.max_rel_residual < 1e-10, "{:e}", eq.max_rel_residual);
        }
    }
}

#[test]
fn criterion_derivative_matches_numerical() {
    for x in [-3.0, -0.7, 0.0, 1.1, 2.9] {
        let z = c64(x, 0.0);
        let num = cauchy_derivative(w_criterion, z, 1, &DerivOptions::default().avoiding(z, &[
            cis(PI / 8.0) * Complex64::i(),
            -cis(PI / 8.0) * Complex64::i(),
        ]))
        .unwrap();
        let ana = w_criterion_prime(z).unwrap();
        assert!((num - ana).norm() < 1e-10 * ana.norm(), "z = {x}");
    }
    let w = residual(Ode::W { tau: tau_criterion() }, w_criterion, &[c64(0.5, 0.0), c64(-2.0, 0.0)]).unwrap();
    assert!(w.max_rel_residual < 1e-8);
}

#[test]
fn negative_odd_normalisation_is_exact() {
    for m in 0..=8u32 {
        let p = neg_odd_polys(m).unwrap();
        let (ni, di) = neg_odd_norm_i(m);
        let (nj, dj) = neg_odd_norm_j(m);
        // I: value at 0 for even m, slope at 0 for odd m
        let lead_i = if m % 2 == 0 { p.p[0] } else { p.p[1] };
        assert_eq!(lead_i as u128 * ni, di, "I, m = {m}");
        // J = q e^{eta^2/2} E + q~ e^{-eta^2/2}, E(0) = 0, E'(0) = 1
        let qt = |k: usize| p.q_tilde.get(k).copied().unwrap_or(0);
        let lead_j = if m % 2 == 1 { qt(0) } else { p.q[0] + qt(1) };
        assert_eq!(lead_j as u128 * nj, dj, "J, m = {m}");
    }
}

#[test]
fn negative_odd_solutions_match_kummer_forms() {
    for m in 0..=8u32 {
        let mu = c64(-(2.0 * m as f64 + 3.0), 0.0);
        for b in [NegOddBranch::I, NegOddBranch::J] {
            for eta in [c64(0.4, 0.2), c64(-1.3, 0.5), c64(2.0, -0.1)] {
                let semi = psi_neg_odd(m, b, eta).unwrap();
                let kummer = psi_mu(mu, b.kummer_branch(m), eta).unwrap();
                assert!((semi - kummer).norm() < 1e-11 * kummer.norm(), "m = {m}, {b:?}: {semi} vs {kummer}");
            }
        }
    }
}

#[test]
fn oscillator_solutions_and_ladders() {
    let mut r = rng();
    let pts = [c64(0.4, 0.2), c64(-1.1, 0.5), c64(1.6, -0.3)];
    for _ in 0..4 {
        let mu = c64(r.gen_range(-3.0..3.0), r.gen_range(-2.0..2.0));
        for branch in [Branch::One, Branch::Two] {
            let s = residual(Ode::Schrodinger { mu }, |e| psi_mu(mu, branch, e), &pts).unwrap();
            assert!(s.max_rel_residual < 1e-8);
            for dir in [Ladder::Up, Ladder::Down] {
                let l = ladder_residual(dir, mu, |e| psi_mu(mu, branch, e), &pts).unwrap();
                assert!(l.max_rel_residual < 1e-8, "{dir:?}: {:e}", l.max_rel_residual);
            }
        }
    }
}

#[test]
fn explicit_minus_one_solutions_solve_the_eigenproblem() {
    let pts = [c64(0.5, 0.2), c64(-1.4, 0.3), c64(2.2, -0.6)];
    for branch in [Branch::One, Branch::Two] {
        let rep = residual(Ode::Upsilon { mu: c64(-1.0, 0.0) }, |e| upsilon_m1_explicit(branch, e), &pts).unwrap();
        assert!(rep.max_rel_residual < 1e-8);
    }
}
