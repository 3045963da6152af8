use std::f64::consts::PI;
use std::sync::Arc;

use approx::assert_relative_eq;
use proptest::prelude::*;

use lane_emden_lab::asymptotics::{fit_rate, green, limit_w, limit_w_second};
use lane_emden_lab::lane_emden::{rescale_to_length, solve_unit, sup_norm_closed_form};
use lane_emden_lab::spectral::{dirichlet_eigs, Potential};
use lane_emden_lab::stability::{classify_cylinder, cylinder_lambda, StabilityAnalyzer};
use lane_emden_lab::{CrossSection, Exponent};

fn section() -> impl Strategy<Value = CrossSection> {
    prop_oneof![
        (0.1f64..10.0).prop_map(|length| CrossSection::Interval { length }),
        (0.1f64..10.0, 0.1f64..10.0).prop_map(|(a, b)| CrossSection::Rectangle { a, b }),
        (0.1f64..10.0).prop_map(|radius| CrossSection::Disk { radius }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solutions_satisfy_their_invariants(p in 1.02f64..120.0) {
        let e = Exponent::new(p).unwrap();
        let sol = solve_unit(e, 257).unwrap();
        let inv = sol.invariants();
        prop_assert!(inv.center_slope < 1e-12);
        prop_assert!(inv.boundary_value == 0.0);
        prop_assert!(inv.energy_residual < 1e-8);
        prop_assert!(inv.strictly_decreasing);
        let closed = sup_norm_closed_form(e).unwrap();
        prop_assert!((sol.log_sup_norm() - closed.log_value).abs() < 1e-8);
        prop_assert!(closed.power >= PI * PI / 4.0);
    }

    #[test]
    fn rescaling_follows_the_power_law(p in 1.1f64..20.0, length in 0.05f64..20.0) {
        let sol = solve_unit(Exponent::new(p).unwrap(), 65).unwrap();
        let r = rescale_to_length(&sol, length).unwrap();
        assert_relative_eq!(r.sup_norm(), sol.sup_norm() * length.powf(-2.0 / (p - 1.0)), max_relative = 1e-12);
        assert_relative_eq!(
            r.boundary_slope(),
            sol.boundary_slope() * length.powf(-(p + 1.0) / (p - 1.0)),
            max_relative = 1e-12
        );
    }

    #[test]
    fn dilation_covariance(sec in section(), s in 0.1f64..10.0) {
        let base = sec.lambda1().unwrap();
        let scaled = sec.scaled(s).unwrap().lambda1().unwrap();
        prop_assert!(base > 0.0);
        assert_relative_eq!(scaled, base / (s * s), max_relative = 1e-14);
    }

    #[test]
    fn green_is_symmetric(t in -1.0f64..=1.0, tau in -1.0f64..=1.0) {
        prop_assert_eq!(green(t, tau).unwrap(), green(tau, t).unwrap());
        prop_assert!(green(t, tau).unwrap() >= 0.0);
    }

    #[test]
    fn w_solves_the_liouville_equation(s in -40.0f64..40.0) {
        let (w, dw) = limit_w(s);
        prop_assert!((-limit_w_second(s) - w.exp()).abs() < 1e-12);
        prop_assert!(w <= 0.0);
        prop_assert!(dw * s <= 0.0);
    }

    #[test]
    fn rate_fit_recovers_power_laws(k in -3.0f64..3.0, c in 0.1f64..10.0) {
        let x = [1.0, 2.0, 5.0, 10.0, 30.0];
        let y = x.map(|v: f64| c * v.powf(k));
        let fit = fit_rate(&x, &y).unwrap();
        prop_assert!((fit.slope - k).abs() < 1e-10);
        prop_assert!((fit.intercept - c.ln()).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn constant_shift_covariance(p in 1.1f64..8.0, c in -3.0f64..3.0) {
        let q = Potential::lane_emden(Arc::new(solve_unit(Exponent::new(p).unwrap(), 513).unwrap()));
        let base = dirichlet_eigs(&q, 3, 1025).unwrap();
        let shifted = dirichlet_eigs(&q.shifted(c), 3, 1025).unwrap();
        for (b, s) in base.iter().zip(&shifted) {
            prop_assert!((s.eigenvalue - (b.eigenvalue - c)).abs() < 1e-8);
        }
        prop_assert!(base.windows(2).all(|w| w[0].eigenvalue < w[1].eigenvalue));
        prop_assert!(base[0].values[1..1024].iter().all(|v| *v > 0.0));
    }

    #[test]
    fn cylinder_reduction_is_exact(p in 1.05f64..6.0, length in 0.1f64..3.0, sec in section()) {
        let e = Exponent::new(p).unwrap();
        let an = StabilityAnalyzer::new(e).unwrap();
        let direct = an.classify(cylinder_lambda(length, &sec).unwrap()).unwrap();
        prop_assert_eq!(classify_cylinder(e, length, &sec).unwrap(), direct);
    }

    #[test]
    fn h_is_positive_in_the_admissible_window(p in 1.01f64..12.0, frac in 0.001f64..1.0) {
        let an = StabilityAnalyzer::new(Exponent::new(p).unwrap()).unwrap();
        let (lo, hi) = an.threshold_window();
        let lambda = lo + frac * (hi - lo);
        let h = an.solve_h(lambda, 129).unwrap();
        prop_assert!(h.min_value() > 0.0);
        prop_assert_eq!(h.derivs[0], 0.0);
        prop_assert!((h.values[128] - h.boundary_datum).abs() <= 1e-10 * h.boundary_datum);
    }
}
