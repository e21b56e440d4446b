use std::f64::consts::PI;

use fig8_jones::special::{
    hyperbolic_gamma, hyperbolic_gamma_quadrature, lobachevsky, lobachevsky_fourier, lobachevsky_quadrature,
    phi, theta, PrecisionConfig, Radians,
};
use proptest::prelude::*;

fn lam(x: f64) -> f64 {
    lobachevsky(Radians::new(x).unwrap(), &PrecisionConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn odd(x in -10.0f64..10.0) {
        prop_assert!((lam(-x) + lam(x)).abs() < 1e-12);
    }

    #[test]
    fn pi_periodic(x in -10.0f64..10.0) {
        prop_assert!((lam(x + PI) - lam(x)).abs() < 1e-12);
    }

    #[test]
    fn duplication(x in -10.0f64..10.0) {
        prop_assert!((lam(2.0 * x) - 2.0 * lam(x) - 2.0 * lam(x + PI / 2.0)).abs() < 1e-11);
    }

    #[test]
    fn theta_symmetric_and_in_range(r in 0.667f64..1.333) {
        let a = theta(r).unwrap().value();
        prop_assert!((0.0..=PI).contains(&a));
        prop_assert!((a - theta(2.0 - r).unwrap().value()).abs() < 1e-14);
    }

    #[test]
    fn phi_symmetric_and_in_range(r in 0.1667f64..0.8333) {
        let a = phi(r).unwrap().value();
        prop_assert!((0.0..=PI).contains(&a));
        prop_assert!((a - phi(2.0 - r).unwrap().value()).abs() < 1e-14);
    }
}

#[test]
fn series_and_quadrature_agree_on_grid() {
    let cfg = PrecisionConfig::default();
    for i in 0..100 {
        let x = -5.0 + 10.0 * i as f64 / 99.0;
        let q = lobachevsky_quadrature(x, &cfg).unwrap();
        assert!((lam(x) - q).abs() < 1e-11, "x={x}");
        let z = 0.05 * (i + 1) as f64;
        let a = hyperbolic_gamma(z, &cfg).unwrap();
        let b = hyperbolic_gamma_quadrature(z, &cfg).unwrap();
        assert!((a - b).abs() < 1e-11, "z={z}");
    }
}

#[test]
fn fourier_series_is_a_coarse_match() {
    for x in [0.1, 0.5, 1.0, 2.5] {
        assert!((lobachevsky_fourier(x, 20_000) - lam(x)).abs() < 1e-4);
    }
}

#[test]
fn lambda_at_pi_over_six() {
    assert!((lam(PI / 6.0) - 0.507_470_803_204_826_8).abs() < 1e-12);
    assert!((lam(PI + 0.3) - lam(0.3)).abs() < 1e-15);
    assert!(lobachevsky(Radians::new(0.0).unwrap(), &PrecisionConfig::default()).is_ok());
    assert!(Radians::new(f64::NAN).is_err());
}
