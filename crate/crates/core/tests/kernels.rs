use proptest::prelude::*;

use plancherel::kernels::{
    discrete_bessel_ratio, discrete_bessel_series, extended_kernel_contour, extended_kernel_series, rho_det,
    ContourSpec, ExtendedKernel,
};
use plancherel::{HalfInt, SpaceTimePoint};

fn h(k: i64) -> HalfInt {
    HalfInt::new(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ratio_matches_series(theta in 0.05f64..25.0, x in -30i64..30, y in -30i64..30) {
        let r = discrete_bessel_ratio(theta, h(x), h(y)).unwrap().value;
        let s = discrete_bessel_series(theta, h(x), h(y)).unwrap().value;
        prop_assert!((r - s).abs() < 1e-10, "{r} vs {s}");
    }

    #[test]
    fn static_kernel_is_symmetric(theta in 0.05f64..25.0, x in -30i64..30, y in -30i64..30) {
        let a = discrete_bessel_ratio(theta, h(x), h(y)).unwrap().value;
        let b = discrete_bessel_ratio(theta, h(y), h(x)).unwrap().value;
        prop_assert!((a - b).abs() < 1e-14);
    }

    /// K is the kernel of an orthogonal projection on ℓ²(Z′).
    #[test]
    fn static_kernel_is_a_projection(theta in 0.1f64..4.0, x in -6i64..6, y in -6i64..6) {
        let sq: f64 = (-40..40)
            .map(|z| discrete_bessel_series(theta, h(x), h(z)).unwrap().value
                * discrete_bessel_series(theta, h(z), h(y)).unwrap().value)
            .sum();
        let k = discrete_bessel_series(theta, h(x), h(y)).unwrap().value;
        prop_assert!((sq - k).abs() < 1e-12, "{sq} vs {k}");
    }

    #[test]
    fn one_point_density_is_a_probability(theta in 0.05f64..25.0, x in -30i64..30) {
        let k = ExtendedKernel::stationary(theta).unwrap();
        let rho = rho_det(&k, &[SpaceTimePoint::new(0.0, h(x))]).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&rho));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn contour_matches_series(
        theta_s in 0.3f64..3.0,
        theta_t in 0.3f64..3.0,
        lag in prop_oneof![-2.0f64..-0.3, 0.3f64..2.0],
        x in -4i64..4,
        y in -4i64..4,
    ) {
        let series = extended_kernel_series(theta_s, theta_t, lag, 0.0, h(x), h(y)).unwrap().value;
        let (contour, diag) =
            extended_kernel_contour(theta_s, theta_t, lag, 0.0, h(x), h(y), ContourSpec::default_for(lag, 0.0)).unwrap();
        prop_assert!((contour.value - series).abs() < 1e-8, "{} vs {series}", contour.value);
        prop_assert!(diag.imaginary_residue < 1e-10);
    }

    /// K(s, ·; t, ·) for s > t is a Markov-type semigroup in the stationary
    /// case: composing through an intermediate time gives the same kernel.
    #[test]
    fn forward_kernel_composes(theta in 0.3f64..3.0, a in 0.1f64..1.0, b in 0.1f64..1.0, x in -4i64..4, y in -4i64..4) {
        let k = |s: f64, p: i64, t: f64, q: i64| extended_kernel_series(theta, theta, s, t, h(p), h(q)).unwrap().value;
        let direct = k(a + b, x, 0.0, y);
        let via: f64 = (-40..40).map(|z| k(a + b, x, b, z) * k(b, z, 0.0, y)).sum();
        prop_assert!((direct - via).abs() < 1e-12, "{direct} vs {via}");
    }
}

#[test]
fn equal_time_reduces_to_static() {
    for x in -5..5 {
        for y in -5..5 {
            let e = extended_kernel_series(1.5, 1.5, 0.0, 0.0, h(x), h(y)).unwrap().value;
            let s = discrete_bessel_ratio(1.5, h(x), h(y)).unwrap().value;
            assert!((e - s).abs() < 1e-12);
        }
    }
}
