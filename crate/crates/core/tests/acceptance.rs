//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::f64::consts::{LN_2, PI};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lane_emden_lab::asymptotics::{
    c_tilde, ratio_pp1_closed_form, report_large_p, report_near_one, slope_estimate, NU1,
};
use lane_emden_lab::lane_emden::{solve_unit, sup_norm_closed_form};
use lane_emden_lab::spectral::{alpha1_for, dirichlet_eigs, nondegeneracy_report, prufer_eig_oracle, resolved_solution, Potential};
use lane_emden_lab::stability::{classify_cylinder, StabilityAnalyzer, ThresholdResult, Verdict};
use lane_emden_lab::{CrossSection, Exponent, Result, Settings};

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn e(p: f64) -> Exponent {
    Exponent::new(p).unwrap()
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for p in [1.01, 1.1, 2.0, 3.0, 5.0, 10.0, 50.0, 100.0] {
        let shoot = solve_unit(e(p), 1025)?;
        let closed = sup_norm_closed_form(e(p))?;
        worst = worst.max((shoot.log_sup_norm() - closed.log_value).exp_m1().abs());
    }
    let a3 = solve_unit(e(3.0), 1025)?.sup_norm();
    Ok((
        worst < 1e-8 && (a3 - 1.854075).abs() < 1e-5,
        format!("max relative gap {worst:.2e}, a(3) = {a3:.8}"),
    ))
}

fn lower_bound() -> Outcome {
    let mut min = f64::INFINITY;
    for p in [1.001, 1.01, 1.1, 2.0, 3.0, 5.0, 10.0, 50.0, 100.0, 300.0, 1000.0] {
        min = min.min(sup_norm_closed_form(e(p))?.power);
    }
    let near = sup_norm_closed_form(e(1.001))?.power;
    Ok((
        min >= NU1 && (near - 2.46788).abs() < 5e-4,
        format!("min a^(p-1) = {min:.6}, a(1.001)^0.001 = {near:.6}"),
    ))
}

fn green_limit() -> Outcome {
    let r = report_large_p(&[20.0, 50.0, 100.0])?;
    let dev = r.metric("sup_norm_deviation").unwrap();
    let green = r.metric("err_green").unwrap();
    Ok((
        strictly_decreasing(dev) && strictly_decreasing(green),
        format!("|a-1| = {dev:.4?}, sup|u-(1-|t|)| = {green:.4?}"),
    ))
}

fn ratio_limit() -> Outcome {
    let r: Vec<f64> = [100.0, 300.0, 1000.0]
        .iter()
        .map(|&p| ratio_pp1_closed_form(e(p)))
        .collect::<Result<_>>()?;
    Ok((
        (r[2] - 1.0).abs() < 0.02 && strictly_decreasing(&r),
        format!("2a^(p+1)/p = {r:.5?}"),
    ))
}

fn liouville_limit() -> Outcome {
    let r = report_large_p(&[50.0, 100.0, 150.0])?;
    let w = r.metric("err_w").unwrap();
    Ok((w[2] < 0.15 && strictly_decreasing(w), format!("sup|u~ - W| = {w:.5?}")))
}

fn eigenvalue_limit() -> Outcome {
    let r = report_large_p(&[20.0, 50.0, 100.0, 200.0])?;
    let x = r.metric("alpha1_mu2").unwrap();
    let dist: Vec<f64> = x[1..].iter().map(|v| (v + 0.5).abs()).collect();
    Ok((
        x.iter().all(|v| *v > -1.0 && *v < 0.0) && dist[2] < 0.2 && strictly_decreasing(&dist),
        format!("alpha1 mu^2 = {x:.6?}"),
    ))
}

fn c_tilde_expansion() -> Outcome {
    let c = c_tilde()?;
    let slope = slope_estimate(e(1.001))?;
    let target = NU1 * c;
    let rel = (slope - target).abs() / target;
    Ok((
        (c - 0.193147).abs() < 1e-6 && (c - (LN_2 - 0.5)).abs() < 1e-8 && rel < 0.01,
        format!("c~ = {c:.9}, slope = {slope:.6} vs {target:.6} (rel {rel:.1e})"),
    ))
}

fn near_one_limits() -> Outcome {
    let r = report_near_one(&[1.1, 1.05, 1.01])?;
    let phi = r.metric("err_phi1").unwrap()[2];
    let q = r.metric("err_q").unwrap()[2];
    let alpha = r.metric("abs_alpha1").unwrap();
    Ok((
        phi < 1e-2 && q < 2e-2 && strictly_decreasing(alpha),
        format!("C1 distance {phi:.2e}, sup|p u^(p-1) - pi^2/4| = {q:.4e} (needs < 2e-2), |alpha1| = {alpha:.4?}"),
    ))
}

fn criterion_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut ok = true;
    let mut min_h = f64::INFINITY;
    for _ in 0..20 {
        let p = 1.0 + 10f64.powf(rng.gen_range(-2.0..1.0));
        let an = StabilityAnalyzer::new(e(p))?;
        let top = p * an.solution().sup_norm_power();
        let lo = (-an.alpha1()).max(0.0) + 1e-3 * an.alpha1().abs().max(1.0);
        let lambda = rng.gen_range(lo..2.0 * top);
        let h = an.solve_h(lambda, 257)?;
        min_h = min_h.min(h.min_value());
        ok &= h.min_value() > 0.0;
        let convex = top * rng.gen_range(1.0..3.0);
        ok &= an.classify(convex)?.verdict == Verdict::Stable;
        let base = h.end_slope.signum();
        for factor in [1e-6, 3.0, 1e6] {
            let scaled = an.solve_h_with_datum(lambda, 257, h.boundary_datum * factor)?;
            ok &= scaled.end_slope.signum() == base;
        }
    }
    Ok((ok, format!("min h over 20 pairs {min_h:.3e}")))
}

fn near_one_thresholds() -> Outcome {
    let an = StabilityAnalyzer::new(e(1.01))?;
    let v2 = an.classify(2.0)?.verdict;
    let v3 = an.classify(3.0)?.verdict;
    let star = an.threshold()?.lambda_star();
    let interval = CrossSection::Interval { length: 1.0 };
    let short = classify_cylinder(e(1.01), 0.25, &interval)?.verdict;
    let long = classify_cylinder(e(1.01), 1.0, &interval)?.verdict;
    let ok = v2 == Verdict::Unstable
        && v3 == Verdict::Stable
        && star.is_some_and(|s| (s - 2.467).abs() < 0.1)
        && short == Verdict::Unstable
        && long == Verdict::Stable;
    Ok((ok, format!("lambda* = {star:?}, L=0.25 {short}, L=1 {long}")))
}

fn large_p_stability() -> Outcome {
    let an = StabilityAnalyzer::new(e(50.0))?;
    let lo = -an.alpha1() * (1.0 + 1e-3);
    let hi = 2.0 * 50.0 * an.solution().sup_norm_power();
    let mut all = true;
    for i in 0..25 {
        let lambda = lo + (hi - lo) * (i as f64 + 0.5) / 25.0;
        all &= an.classify(lambda)?.verdict == Verdict::Stable;
    }
    let none = matches!(an.threshold()?, ThresholdResult::NoThresholdFound { .. });
    Ok((all && none, format!("window ({lo:.3}, {hi:.3}), all stable {all}, no threshold {none}")))
}

fn h_limit() -> Outcome {
    let an = StabilityAnalyzer::new(e(1.005))?;
    let h = an.solve_h(2.0, 1001)?;
    let k = (NU1 - 2.0).sqrt();
    let err = h
        .grid
        .iter()
        .zip(&h.values)
        .filter(|(t, _)| **t <= 0.9)
        .map(|(t, v)| (v / h.values[0] - (k * t).cos()).abs())
        .fold(0.0, f64::max);
    Ok((err < 0.05, format!("sup |h/h(0) - H| = {err:.3e}")))
}

fn spectral_cross_validation() -> Outcome {
    let settings = Settings::default();
    let mut worst = 0.0f64;
    for q in [Potential::zero(), Potential::constant(1.5), Potential::constant(-2.0)] {
        let fd = dirichlet_eigs(&q, 1, 4097)?[0].eigenvalue;
        let pr = prufer_eig_oracle(&q, 1)?;
        let exact = NU1 - q.bounds().0;
        worst = worst.max((fd - pr).abs()).max((fd - exact).abs());
    }
    for p in [2.0, 5.0] {
        let (sol, fd_nodes) = resolved_solution(e(p), &settings)?;
        let a = alpha1_for(&Potential::lane_emden(sol), fd_nodes, &settings)?;
        worst = worst.max((a.finite_difference - a.prufer).abs());
    }
    Ok((worst < 1e-6, format!("max disagreement {worst:.2e}")))
}

fn nondegeneracy() -> Outcome {
    let mut gaps = Vec::new();
    for p in [1.01, 2.0, 5.0, 50.0] {
        gaps.push(nondegeneracy_report(e(p), 1.0, PI * PI)?.zero_gap);
    }
    Ok((gaps.iter().all(|g| *g > 1e-4), format!("zero gaps {gaps:.4?}")))
}

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_lel");
    let selfcheck = Command::new(bin)
        .arg("selfcheck")
        .env_remove("LEL_CONFIG")
        .output()
        .expect("run lel");
    let phase = || {
        Command::new(bin)
            .args([
                "phase", "--p-min", "1.01", "--p-max", "3", "--p-steps", "4", "--lambda-min", "0.5",
                "--lambda-max", "12", "--lambda-steps", "12",
            ])
            .env_remove("LEL_CONFIG")
            .output()
            .expect("run lel")
    };
    let (a, b) = (phase(), phase());
    let ok = selfcheck.status.code() == Some(0)
        && a.status.success()
        && a.stdout == b.stdout
        && !a.stdout.is_empty();
    Ok((
        ok,
        format!(
            "selfcheck exit {:?}, phase runs identical: {} ({} bytes)",
            selfcheck.status.code(),
            a.stdout == b.stdout,
            a.stdout.len()
        ),
    ))
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("shooting vs closed-form sup-norm", oracle_equivalence),
        ("a^(p-1) >= pi^2/4, tight as p -> 1", lower_bound),
        ("|a - 1| and Green-profile error decrease", green_limit),
        ("2a^(p+1)/p -> 1", ratio_limit),
        ("rescaled peak -> Liouville profile W", liouville_limit),
        ("alpha1 mu^2 -> -1/2", eigenvalue_limit),
        ("c~ and first-order expansion near p = 1", c_tilde_expansion),
        ("u/a -> cos(pi t/2), p u^(p-1) -> pi^2/4, alpha1 -> 0", near_one_limits),
        ("h positivity, convex case, scale invariance", criterion_properties),
        ("verdicts and threshold near p = 1", near_one_thresholds),
        ("no instability for p = 50", large_p_stability),
        ("h/h(0) -> H_lambda", h_limit),
        ("finite differences vs Pruefer", spectral_cross_validation),
        ("zero is not an eigenvalue", nondegeneracy),
        ("CLI selfcheck and determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (passed, detail) = f().unwrap_or_else(|err| (false, format!("error: {err}")));
        if !passed {
            failed += 1;
        }
        println!("{} {:>2} {name}: {detail}", if passed { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
