use prandtl_modes::frames::{build_frame, ModeSpec, ShearFlow};
use prandtl_modes::modes::{fmt17, UpsilonBasis};
use prandtl_modes::shearlayer::{shear_layer_V, CriticalPoint};
use prandtl_modes::solutions::w_criterion;
use prandtl_modes::specfun::kummer_m;
use prandtl_modes::{c64, Complex64};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn kummer_transformation(ar in -2.0..2.0f64, ai in -1.0..1.0f64, cr in 0.3..3.0f64, ci in -1.0..1.0f64,
                             r in 0.0..10.0f64, th in -3.1..3.1f64) {
        let (a, c, z) = (c64(ar, ai), c64(cr, ci), Complex64::from_polar(r, th));
        let lhs = kummer_m(a, c, z).unwrap();
        let rhs = z.exp() * kummer_m(c - a, c, -z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * lhs.norm().max(rhs.norm()).max(1e-300));
    }

    #[test]
    fn criterion_function_is_odd_about_one_half(x in -6.0..6.0f64) {
        let s = w_criterion(c64(x, 0.0)).unwrap() + w_criterion(c64(-x, 0.0)).unwrap();
        prop_assert!((s - 1.0).norm() < 1e-14);
    }

    #[test]
    fn frame_round_trip(beta in -5.0..-0.1f64, a in 0.0..2.0f64, alpha in -1.0..1.0f64,
                        k in prop::sample::select(vec![-50i64, -3, -1, 1, 2, 17, 400]), y in 0.0..4.0f64) {
        let f = build_frame(ShearFlow::new(alpha, beta, a).unwrap(), ModeSpec::new(k, c64(0.3, -0.8)).unwrap()).unwrap();
        prop_assert!((f.z_to_y(f.y_to_z(y)) - y).abs() < 1e-12 * (1.0 + y));
        prop_assert!((f.eta_to_y(f.y_to_eta(y)) - y).abs() < 1e-12 * (1.0 + y));
        let link = if k > 0 { c64(0.0, -1.0) * prandtl_modes::cis(std::f64::consts::PI / 4.0) }
                   else { c64(0.0, -1.0) * prandtl_modes::cis(-std::f64::consts::PI / 4.0) };
        prop_assert!((f.mu - link * f.tau).norm() < 1e-14 * f.tau.norm().max(1.0));
    }

    #[test]
    fn boundary_nullspace_annihilates(mr in -3.0..3.0f64, mi in -2.0..2.0f64, er in -1.5..1.5f64, ei in -0.6..0.6f64) {
        let basis = UpsilonBasis::new(c64(mr, mi), c64(er, ei));
        let m = basis.boundary_matrix().unwrap();
        let triples = prandtl_modes::modes::nullspace(&m).unwrap();
        prop_assert!(!triples.is_empty());
        let scale = m.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
        for t in triples {
            for row in &m {
                let r: Complex64 = row.iter().zip(&t).map(|(a, b)| a * b).sum();
                prop_assert!(r.norm() < 1e-12 * scale);
            }
        }
    }

    #[test]
    fn decimal_output_round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
        prop_assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn shear_profile_ignores_location(a1 in -3.0..3.0f64, a2 in -3.0..3.0f64, upp in -10.0..-0.1f64, z in -6.0..6.0f64) {
        let p = CriticalPoint::new(a1, upp).unwrap();
        let q = CriticalPoint::new(a2, upp).unwrap();
        prop_assert_eq!(shear_layer_V(&p, z).unwrap(), shear_layer_V(&q, z).unwrap());
    }
}
