//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;

use common::kummer_reference;
use prandtl_modes::asymptotics::{
    criterion_uniqueness_scan, default_scan_grid, integral_asymptotic, integral_exact, Verdict,
};
use prandtl_modes::modes::{solve_boundary_coefficients, CoefficientTriple, Mode, UpsilonBasis};
use prandtl_modes::oracle::{
    asymptotic_ratio_error, boundary_residual, check_recurrences, cleared_points, criterion_ode_report,
    example_frame, generic_mus, ladder_residual, random_tau, recurrence_mus, residual, series_equivalence, Ode,
};
use prandtl_modes::shearlayer::{
    example_flow_critical_point, sample_profile, shear_layer_V, shear_layer_V_via_w,
};
use prandtl_modes::solutions::{
    neg_odd_norm_i, neg_odd_norm_j, neg_odd_polys, psi_mu, r_series, tau_criterion, upsilon_m1_explicit,
    w_criterion, x_tau, y_mu, Ladder, R_SERIES_TERMS,
};
use prandtl_modes::specfun::{erf_c, kummer_m};
use prandtl_modes::{c64, cis, Branch, Complex64, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5EED)
}

/// `(pass, detail)` for one criterion.
type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn criterion_pair() -> Outcome {
    let tau = tau_criterion();
    let dev = (tau.re + 0.706).abs().max((tau.im + 0.706).abs());
    let w8 = (w_criterion(c64(8.0, 0.0))? - 1.0).norm();
    let wm8 = w_criterion(c64(-8.0, 0.0))?.norm();
    let ode = criterion_ode_report(100)?.max_rel_residual;
    Ok((
        dev < 2e-3 && w8 < 1e-6 && wm8 < 1e-6 && ode < 1e-8,
        format!("tau dev {dev:.2e}, |W(8)-1| {w8:.1e}, |W(-8)| {wm8:.1e}, W ODE {ode:.1e}"),
    ))
}

fn kummer_form_solutions() -> Outcome {
    let mut r = rng();
    let (mut worst, mut parity) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let tau = random_tau(&mut r);
        let pts = cleared_points(&mut r, 30, tau);
        for branch in [Branch::One, Branch::Two] {
            worst = worst.max(residual(Ode::X { tau }, |z| x_tau(tau, branch, z), &pts)?.max_rel_residual);
        }
        for z in &pts {
            let a = x_tau(tau, Branch::One, *z)?;
            parity = parity.max((a - x_tau(tau, Branch::One, -z)?).norm() / a.norm());
            let b = x_tau(tau, Branch::Two, *z)?;
            parity = parity.max((b + x_tau(tau, Branch::Two, -z)?).norm() / b.norm());
        }
    }
    Ok((worst < 1e-8 && parity < 1e-12, format!("X ODE {worst:.1e}, parity {parity:.1e}")))
}

fn recurrences() -> Outcome {
    let worst = recurrence_mus()
        .into_iter()
        .map(|mu| check_recurrences(mu, 200).map(|r| r.max_rel_residual))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok((worst < 1e-12, format!("n <= 200, worst {worst:.1e}")))
}

fn series_kummer_equivalence() -> Outcome {
    let mut r = rng();
    let (mut eq, mut ode) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let mu = c64(r.gen_range(-3.0..3.0), r.gen_range(-2.0..2.0));
        let eta = loop {
            let e = Complex64::from_polar(r.gen_range(0.0..3.0), r.gen_range(-PI..PI));
            let root = mu.sqrt();
            if (e - root).norm() >= 0.3 && (e + root).norm() >= 0.3 {
                break e;
            }
        };
        for branch in [Branch::One, Branch::Two] {
            eq = eq.max(series_equivalence(mu, branch, &[eta])?.max_rel_residual);
            let series = residual(Ode::R { mu }, |e| r_series(mu, branch, e, R_SERIES_TERMS), &[eta])?;
            let compact = residual(
                Ode::R { mu },
                |e| {
                    let p = mu - e * e;
                    Ok(y_mu(mu, branch, e)? * p * p * (0.5 * e * e).exp())
                },
                &[eta],
            )?;
            ode = ode.max(series.max_rel_residual).max(compact.max_rel_residual);
        }
    }
    Ok((eq < 1e-10 && ode < 1e-8, format!("series vs compact {eq:.1e}, R ODE {ode:.1e}")))
}

fn oscillator_layer() -> Outcome {
    let mut r = rng();
    let pts = [c64(0.4, 0.2), c64(-1.1, 0.5), c64(1.6, -0.3)];
    let (mut sch, mut lad) = (0.0f64, 0.0f64);
    for _ in 0..4 {
        let mu = c64(r.gen_range(-3.0..3.0), r.gen_range(-2.0..2.0));
        for branch in [Branch::One, Branch::Two] {
            sch = sch.max(residual(Ode::Schrodinger { mu }, |e| psi_mu(mu, branch, e), &pts)?.max_rel_residual);
            for dir in [Ladder::Up, Ladder::Down] {
                lad = lad.max(ladder_residual(dir, mu, |e| psi_mu(mu, branch, e), &pts)?.max_rel_residual);
            }
        }
    }
    let mut exact = true;
    for m in 0..=8u32 {
        let p = neg_odd_polys(m)?;
        let (ni, di) = neg_odd_norm_i(m);
        let (nj, dj) = neg_odd_norm_j(m);
        let lead_i = if m % 2 == 0 { p.p[0] } else { p.p[1] };
        let qt = |k: usize| p.q_tilde.get(k).copied().unwrap_or(0);
        let lead_j = if m % 2 == 1 { qt(0) } else { p.q[0] + qt(1) };
        exact &= lead_i as u128 * ni == di && lead_j as u128 * nj == dj;
    }
    Ok((
        sch < 1e-8 && lad < 1e-8 && exact,
        format!("Schrodinger {sch:.1e}, ladder {lad:.1e}, m <= 8 leading coefficients exact: {exact}"),
    ))
}

fn mode_construction() -> Outcome {
    let basis = UpsilonBasis::new(c64(-1.0, 0.0), c64(0.0, 0.0));
    let mut closed = 0.0f64;
    for i in 0..50 {
        let eta = cis(-PI / 8.0) * (-4.0 + 8.0 * i as f64 / 49.0);
        for branch in [Branch::One, Branch::Two] {
            let e = upsilon_m1_explicit(branch, eta)?;
            closed = closed.max((basis.upsilon(branch, eta)? - e).norm() / e.norm().max(1.0));
        }
    }
    let mut r = rng();
    let mut ode = 0.0f64;
    let mut wall = 0.0f64;
    for _ in 0..4 {
        let mu = c64(r.gen_range(-3.0..3.0), r.gen_range(-2.0..2.0));
        let eta_star = c64(r.gen_range(-1.0..1.0), r.gen_range(-0.5..0.5));
        let b = UpsilonBasis::new(mu, eta_star);
        let pts = [c64(r.gen_range(-2.0..2.0), r.gen_range(-1.0..1.0))];
        for branch in [Branch::One, Branch::Two] {
            ode = ode.max(residual(Ode::Upsilon { mu }, |e| b.upsilon(branch, e), &pts)?.max_rel_residual);
        }
        for t in solve_boundary_coefficients(mu, eta_star)? {
            wall = wall.max(b.combination(&t, eta_star)?.norm()).max(b.combination_prime(&t, eta_star)?.norm());
        }
    }
    for k in [1, 10, 100] {
        let f = example_frame(k)?;
        let m = Mode::no_slip(f)?;
        let rep = boundary_residual(&f, &m.coeffs)?;
        wall = wall.max(rep.phi0.norm()).max(rep.dphi0.norm());
    }
    Ok((
        closed < 1e-10 && ode < 1e-8 && wall < 1e-10,
        format!("closed form {closed:.1e}, eigenproblem {ode:.1e}, wall {wall:.1e}"),
    ))
}

fn log_slope_in_y2(m: &Mode) -> Result<f64> {
    let p = m.sample_profile(2.5, 4.5, 21)?;
    let xs: Vec<f64> = p.rows.iter().map(|(y, _)| y * y).collect();
    let ys: Vec<f64> = p.rows.iter().map(|(_, v)| v.norm().ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

fn worked_examples() -> Outcome {
    let s = (PI / 2.0).sqrt();
    let free = CoefficientTriple::new(c64(s, 0.0), c64(2.0, 0.0), c64(0.0, 0.0));
    let phi0 = Mode::new(example_frame(1)?, free).stream_function(0.0)?;
    let free_ok = (phi0 + s).norm() < 1e-12;
    for k in [1, 100, 1_000_000] {
        Mode::new(example_frame(k)?, free).sample_profile(0.0, 3.0, 301)?;
    }
    let t = Mode::no_slip(example_frame(1)?)?.coeffs;
    let ratio = t.c0 / t.c2;
    let triple_ok = (ratio + 0.5).norm() < 1e-12 && t.c1.norm() < 1e-12 * t.c2.norm();
    for k in [1, 10, 100] {
        Mode::no_slip(example_frame(k)?)?.sample_profile(0.0, 3.0, 301)?;
    }
    let slope = log_slope_in_y2(&Mode::no_slip(example_frame(100)?)?)?;
    let want = 10.0 / (2.0 * 2f64.sqrt());
    let growth = (slope / want - 1.0).abs();
    Ok((
        free_ok && triple_ok && growth < 0.05,
        format!("phi(0) + sqrt(pi/2) = {:.1e}, c0/c2 = {ratio:.3}, growth slope off by {:.1}%", (phi0 + s).norm(), 100.0 * growth),
    ))
}

fn asymptotics() -> Outcome {
    let mut mus = generic_mus(10);
    mus.extend([c64(-3.0, 0.0), c64(-5.0, 0.0)]);
    let mut worst = 0.0f64;
    for mu in mus {
        for branch in [Branch::One, Branch::Two] {
            for z in [-8.0, 8.0] {
                worst = worst.max(asymptotic_ratio_error(mu, branch, z)?);
            }
        }
    }
    let mut integral = 0.0f64;
    for g in [c64(0.0, 0.0), c64(-1.0, 0.0), c64(0.7, 0.1)] {
        for z in [-10.0, 10.0] {
            integral = integral.max((integral_exact(g, 1, z)? / integral_asymptotic(g, 1, z) - 1.0).norm());
        }
    }
    Ok((worst < 0.05 && integral < 0.05, format!("Upsilon ratio {worst:.1e} at z = 8, integral ratio {integral:.1e} at z = 10")))
}

fn uniqueness_scan() -> Outcome {
    let grid = default_scan_grid();
    let report = criterion_uniqueness_scan(&grid, 8.0)?;
    let admissible: Vec<_> = report.iter().filter(|r| r.verdict == Verdict::Admissible).collect();
    let only_minus_one = admissible.len() == 1 && (admissible[0].mu + 1.0).norm() < 1e-6;
    let others = report.iter().filter(|r| r.verdict == Verdict::Divergent);
    let min_one_sided = others.map(|r| r.side_ratios[0].max(r.side_ratios[1])).fold(f64::INFINITY, f64::min);
    Ok((
        only_minus_one && min_one_sided > 1e3,
        format!("{} points, {} admissible, smallest one-sided ratio elsewhere {min_one_sided:.1e}", grid.len(), admissible.len()),
    ))
}

fn shear_layer() -> Outcome {
    let cp = example_flow_critical_point();
    let mut identity = 0.0f64;
    let mut sup = 0.0f64;
    for i in 0..=1200 {
        let z = -6.0 + 0.01 * i as f64;
        let v = shear_layer_V(&cp, z)?;
        identity = identity.max((v - shear_layer_V_via_w(&cp, z)?).norm() / v.norm().max(1.0));
        sup = sup.max(v.norm());
    }
    let tails = shear_layer_V(&cp, -6.0)?.norm().max(shear_layer_V(&cp, 6.0)?.norm()) / sup;
    let jump = (shear_layer_V(&cp, -1e-300)? - shear_layer_V(&cp, 1e-300)?).norm();
    let jump_err = (jump - cp.upp.abs().sqrt() / 2f64.sqrt()).abs();
    let csv = |p: &prandtl_modes::modes::SampledProfile| -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        p.write_csv(&mut buf)?;
        Ok(buf)
    };
    let a = csv(&sample_profile(&cp, -6.0, 6.0, 601)?)?;
    let b = csv(&sample_profile(&cp, -6.0, 6.0, 601)?)?;
    Ok((
        identity < 1e-12 && tails < 1e-3 && jump_err < 1e-12 && a == b,
        format!("W identity {identity:.1e}, tails/sup {tails:.1e}, jump error {jump_err:.1e}, deterministic: {}", a == b),
    ))
}

fn special_function_floor() -> Outcome {
    let mut r = rng();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = c64(r.gen_range(-3.0..3.0), r.gen_range(-2.0..2.0));
        let c = c64(r.gen_range(0.2..3.0), r.gen_range(-2.0..2.0));
        let zeta = Complex64::from_polar(10.0 * r.gen_range(0.0f64..1.0).sqrt(), r.gen_range(-PI..PI));
        let want = kummer_reference(a, c, zeta);
        worst = worst.max((kummer_m(a, c, zeta)? - want).norm() / want.norm());
    }
    let mut erf = 0.0f64;
    for _ in 0..100 {
        let z = c64(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let via = 2.0 * z / PI.sqrt() * kummer_m(c64(0.5, 0.0), c64(1.5, 0.0), -z * z)?;
        let e = erf_c(z)?;
        erf = erf.max((e - via).norm() / e.norm().max(1.0));
    }
    Ok((worst < 1e-12 && erf < 1e-13, format!("Kummer vs 320-bit reference {worst:.1e}, erf identity {erf:.1e}")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("criterion pair", criterion_pair),
        ("Kummer-form solutions", kummer_form_solutions),
        ("recurrences", recurrences),
        ("series/Kummer equivalence", series_kummer_equivalence),
        ("oscillator layer", oscillator_layer),
        ("mode construction", mode_construction),
        ("worked examples", worked_examples),
        ("asymptotics", asymptotics),
        ("uniqueness scan", uniqueness_scan),
        ("shear layer", shear_layer),
        ("special-function floor", special_function_floor),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = match check() {
            Ok(o) => o,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!("{} criterion {:2} ({name}): {detail}", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
