use std::f64::consts::PI;

use lane_emden_lab::asymptotics::{rescale_near_peak, report_large_p, report_near_one, NU1};
use lane_emden_lab::quadrature::{integrate, QuadOptions};
use lane_emden_lab::spectral::{
    alpha1, alpha1_at_length, alpha1_with, mixed_eigs_direct, nondegeneracy_report, resolved_solution, Potential,
};
use lane_emden_lab::stability::{classify, phase_diagram, solve_h, StabilityAnalyzer, ThresholdResult, Verdict};
use lane_emden_lab::{Exponent, Settings};

fn e(p: f64) -> Exponent {
    Exponent::new(p).unwrap()
}

#[test]
fn alpha1_examples() {
    assert!(alpha1(e(50.0)).unwrap() < 0.0);
    let near = alpha1(e(1.01)).unwrap();
    assert!(near.abs() < 0.1 && near <= NU1);
    for p in [1.05, 2.0, 7.0, 30.0] {
        let a = alpha1_with(e(p), &Settings::default()).unwrap();
        let (sol, _) = resolved_solution(e(p), &Settings::default()).unwrap();
        assert!(a.value > -p * sol.sup_norm_power());
        assert!((a.finite_difference - a.prufer).abs() < 1e-6 * a.value.abs().max(1.0));
    }
}

#[test]
fn alpha1_at_length_examples() {
    let a3 = alpha1(e(3.0)).unwrap();
    assert_eq!(alpha1_at_length(e(3.0), 1.0).unwrap(), a3);
    assert!((alpha1_at_length(e(3.0), 2.0).unwrap() - a3 / 4.0).abs() < 1e-9);
    let (sol, fd_nodes) = resolved_solution(e(3.0), &Settings::default()).unwrap();
    let direct = mixed_eigs_direct(&Potential::lane_emden(sol), 2.0, 1, (fd_nodes - 1) / 2, &Settings::default()).unwrap()[0];
    assert!((direct - a3 / 4.0).abs() < 1e-5 * (a3 / 4.0).abs());
    assert!(alpha1_at_length(e(3.0), 0.0).is_err());
}

#[test]
fn nondegeneracy_examples() {
    let r = nondegeneracy_report(e(1.01), 1.0, PI * PI).unwrap();
    assert!(r.margin > 0.0 && r.nondegenerate);
    let r2 = nondegeneracy_report(e(1.01), 1.0, PI * PI + 1.5).unwrap();
    assert!((r2.margin - r.margin - 1.5).abs() < 1e-12);
    assert!(nondegeneracy_report(e(2.0), 1.0, PI * PI).unwrap().zero_gap > 0.0);
    assert_eq!(r.half_interval_eigenvalues.len(), 5);
    assert!(nondegeneracy_report(e(2.0), 1.0, 0.0).is_err());
}

#[test]
fn solve_h_examples() {
    let an = StabilityAnalyzer::new(e(2.0)).unwrap();
    let top = 2.0 * an.solution().sup_norm_power();
    for lambda in [top, 1.5 * top, 4.0 * top] {
        assert!(an.solve_h(lambda, 65).unwrap().end_slope > 0.0);
    }
    let h = solve_h(e(1.01), 2.0, 401).unwrap();
    assert!(h.min_value() > 0.0);
}

#[test]
fn classify_examples() {
    let an = StabilityAnalyzer::new(e(2.0)).unwrap();
    let top = 2.0 * 2.0 * an.solution().sup_norm_power();
    assert!((top - 11.797).abs() < 1e-3);
    assert_eq!(an.classify(top).unwrap().verdict, Verdict::Stable);
    assert_eq!(
        an.classify(-an.alpha1() - 0.1).unwrap().verdict,
        Verdict::CriterionInapplicable
    );
    assert_eq!(classify(e(1.01), 2.0).unwrap().verdict, Verdict::Unstable);
    assert_eq!(classify(e(1.01), 3.0).unwrap().verdict, Verdict::Stable);
}

#[test]
fn threshold_flip_property() {
    let an = StabilityAnalyzer::new(e(1.01)).unwrap();
    let ThresholdResult::Found { lambda_star, bracket, below, sign_changes } = an.threshold().unwrap() else {
        panic!("expected a threshold near p = 1");
    };
    assert!(bracket[1] - bracket[0] <= 1e-6);
    assert_eq!(below, Verdict::Unstable);
    assert_eq!(sign_changes, 1);
    assert_eq!(an.classify(lambda_star - 1e-4).unwrap().verdict, Verdict::Unstable);
    assert_eq!(an.classify(lambda_star + 1e-4).unwrap().verdict, Verdict::Stable);
}

#[test]
fn phase_diagram_examples() {
    let single = phase_diagram(&[2.0], &[5.0]).unwrap();
    let direct = classify(e(2.0), 5.0).unwrap();
    assert_eq!(single.verdicts[0][0], direct.verdict);
    assert_eq!(single.end_slopes[0][0], direct.end_slope);

    let lambdas: Vec<f64> = (0..6).map(|i| 2.0 + 0.2 * i as f64).collect();
    let row = phase_diagram(&[1.01], &lambdas).unwrap();
    let v = &row.verdicts[0];
    let flips = v.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(flips, 1);
    assert_eq!(v[0], Verdict::Unstable);
    assert_eq!(v[5], Verdict::Stable);
    assert!(row.thresholds[0].is_some());

    let d = phase_diagram(&[1.5, 2.0, 3.0], &[4.0, 8.0]).unwrap();
    assert_eq!((d.verdicts.len(), d.verdicts[0].len()), (3, 2));
}

#[test]
fn large_p_h_slope_changes_sign_once() {
    let an = StabilityAnalyzer::new(e(50.0)).unwrap();
    let (lo, hi) = an.threshold_window();
    for i in 0..5 {
        let lambda = lo + (hi - lo) * (i as f64 + 0.5) / 5.0;
        let h = an.solve_h(lambda, 801).unwrap();
        // sampled h' is <= 0 and then >= 0
        let first_pos = h.derivs.iter().position(|d| *d > 0.0).unwrap_or(h.derivs.len());
        assert!(h.derivs[..first_pos].iter().all(|d| *d <= 0.0));
        assert!(h.derivs[first_pos..].iter().all(|d| *d >= 0.0), "lambda = {lambda}");
        assert!(h.slope_sign_changes() <= 1);
    }
}

#[test]
fn near_one_inflection_point() {
    let an = StabilityAnalyzer::new(e(1.01)).unwrap();
    let sol = an.solution();
    let g: Vec<f64> = sol
        .grid()
        .iter()
        .map(|t| 2.0 - sol.potential_at(*t).unwrap())
        .collect();
    let idx = g.windows(2).position(|w| w[0] * w[1] <= 0.0).expect("sign change of lambda - q");
    assert!(sol.grid()[idx] > 0.9, "t_p = {}", sol.grid()[idx]);
}

#[test]
fn asymptotic_report_examples() {
    let r = report_large_p(&[20.0, 50.0, 100.0]).unwrap();
    let g = r.metric("err_green").unwrap();
    assert!(g[1] < g[0] && g[2] < g[1]);

    let r = report_near_one(&[1.1, 1.05, 1.01]).unwrap();
    assert!(r.metric("err_phi1").unwrap()[2] < 1e-2);
    let a = r.metric("abs_alpha1").unwrap();
    assert!(a[1] < a[0] && a[2] < a[1]);

    let sol = lane_emden_lab::lane_emden::solve_unit(e(150.0), 8193).unwrap();
    let prof = rescale_near_peak(&sol, 5.0, 401).unwrap();
    assert!(prof.distance_to_w() < 0.15);
    assert_eq!(prof.values[200], 0.0);
}

#[test]
fn c_tilde_denominator_is_one() {
    let den = integrate(|t| (0.5 * PI * t).cos().powi(2), -1.0, 1.0, QuadOptions::default()).unwrap();
    assert!((den.value - 1.0).abs() < 1e-14);
}
