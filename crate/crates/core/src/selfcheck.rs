//! Invariant suite run by `lel selfcheck`.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::asymptotics::{
    c_tilde, green, liouville_mass, limit_h_derivs, limit_w, limit_w_second, rescale_near_peak, C_TILDE_EXACT, NU1,
};
use crate::cross_sections::{bessel_j1_prime, bessel_j1prime_root, lambda1, CrossSection};
use crate::error::Result;
use crate::lane_emden::{integral_identities, rescale_to_length, solve_unit_with, sup_norm_closed_form_with, Exponent};
use crate::settings::Settings;
use crate::spectral::{alpha1_for, dirichlet_eigs_with, prufer_eig_with, resolved_solution, Potential};
use crate::stability::{cylinder_lambda, StabilityAnalyzer, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, name: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn e(p: f64) -> Exponent {
    Exponent::new(p).expect("literal exponent")
}

/// Run every check; never panics on numerical failure (it becomes a failed
/// check).
pub fn run(settings: &Settings) -> Vec<Check> {
    let mut s = Suite { checks: Vec::new() };

    s.record("shooting matches closed-form sup-norm", (|| {
        let mut worst = 0.0f64;
        for p in [1.01, 1.1, 2.0, 3.0, 5.0, 10.0, 50.0, 100.0] {
            let sol = solve_unit_with(e(p), settings.solution_nodes, settings)?;
            let cf = sup_norm_closed_form_with(e(p), settings)?;
            worst = worst.max(((sol.log_sup_norm() - cf.log_value).exp_m1()).abs());
        }
        Ok((worst < 1e-8, format!("max relative gap {worst:.2e}")))
    })());

    s.record("boundary conditions, energy and shape of u_p", (|| {
        let mut ok = true;
        let mut worst = 0.0f64;
        for p in [1.1, 2.0, 5.0, 20.0] {
            let inv = solve_unit_with(e(p), settings.solution_nodes, settings)?.invariants();
            worst = worst
                .max(inv.center_slope)
                .max(inv.boundary_value)
                .max(inv.energy_residual)
                .max(inv.boundary_residual);
            ok &= inv.strictly_decreasing && inv.concave;
        }
        Ok((ok && worst < 1e-8, format!("max residual {worst:.2e}")))
    })());

    s.record("integral identities", (|| {
        let mut worst = 0.0f64;
        for p in [2.0, 3.0, 5.0] {
            let sol = solve_unit_with(e(p), settings.solution_nodes, settings)?;
            let id = integral_identities(&sol);
            worst = worst.max(((id.grad_sq - id.power_integral) / id.grad_sq).abs());
        }
        Ok((worst < 1e-6, format!("max relative gap {worst:.2e}")))
    })());

    s.record("a^(p-1) >= pi^2/4", (|| {
        let mut min = f64::INFINITY;
        for p in [1.001, 1.01, 1.5, 2.0, 10.0, 100.0, 1000.0] {
            min = min.min(sup_norm_closed_form_with(e(p), settings)?.power);
        }
        Ok((min >= NU1, format!("min a^(p-1) = {min:.6}")))
    })());

    s.record("rescaling to length L", (|| {
        let sol = solve_unit_with(e(3.0), settings.solution_nodes, settings)?;
        let r = rescale_to_length(&sol, 2.0)?;
        let expect = sol.sup_norm() * 2f64.powf(-2.0 / 2.0);
        let gap = (r.sup_norm() - expect).abs();
        Ok((gap < 1e-12, format!("sup-norm gap {gap:.2e}")))
    })());

    s.record("free and constant spectra, both methods", (|| {
        let mut worst = 0.0f64;
        for c in [-1.0, 0.0, 2.0] {
            let q = Potential::constant(c);
            let fd = dirichlet_eigs_with(&q, 3, settings.fd_nodes, settings)?;
            for (k, pair) in fd.iter().enumerate() {
                let exact = ((k + 1) as f64 * PI / 2.0).powi(2) - c;
                let pr = prufer_eig_with(&q, k + 1, settings)?;
                worst = worst.max((pair.eigenvalue - exact).abs()).max((pr - exact).abs());
            }
        }
        Ok((worst < 1e-6, format!("max error {worst:.2e}")))
    })());

    s.record("linearized spectrum: order, positivity, shift, agreement", (|| {
        let mut ok = true;
        let mut notes = Vec::new();
        for p in [2.0, 5.0] {
            let (sol, fd_nodes) = resolved_solution(e(p), settings)?;
            let q = Potential::lane_emden(sol.clone());
            let eigs = dirichlet_eigs_with(&q, 4, fd_nodes, settings)?;
            ok &= eigs.windows(2).all(|w| w[0].eigenvalue < w[1].eigenvalue);
            let n = eigs[0].values.len();
            ok &= eigs[0].values[1..n - 1].iter().all(|v| *v > 0.0);
            let shifted = dirichlet_eigs_with(&q.shifted(2.0), 4, fd_nodes, settings)?;
            let shift_gap = eigs
                .iter()
                .zip(&shifted)
                .map(|(a, b)| (a.eigenvalue - 2.0 - b.eigenvalue).abs())
                .fold(0.0, f64::max);
            ok &= shift_gap < 1e-8;
            let a = alpha1_for(&q, fd_nodes, settings)?;
            let bound = -p * sol.sup_norm_power();
            ok &= a.value > bound;
            notes.push(format!("p={p}: alpha1={:.6}", a.value));
        }
        Ok((ok, notes.join(", ")))
    })());

    s.record("alpha1 * mu^2 in (-1, 0) at p = 20", (|| {
        let (sol, fd_nodes) = resolved_solution(e(20.0), settings)?;
        let mu = sol.peak_scale();
        let a = alpha1_for(&Potential::lane_emden(sol), fd_nodes, settings)?.value;
        let x = a * mu * mu;
        Ok((x > -1.0 && x < 0.0, format!("{x:.6}")))
    })());

    s.record("h profile: positivity, boundary data, convex case", (|| {
        let mut ok = true;
        for (p, lams) in [(1.01, [2.0, 3.0, 4.0]), (2.0, [3.0, 5.0, 20.0]), (5.0, [12.0, 30.0, 60.0])] {
            let an = StabilityAnalyzer::with_settings(e(p), settings)?;
            for lam in lams {
                let h = an.solve_h(lam, 201)?;
                ok &= h.min_value() > 0.0;
                ok &= h.derivs[0] == 0.0;
                ok &= (h.values[200] - h.boundary_datum).abs() <= 1e-10 * h.boundary_datum;
            }
            let convex = p * an.solution().sup_norm_power();
            ok &= an.classify(convex)?.verdict == Verdict::Stable;
        }
        Ok((ok, String::new()))
    })());

    s.record("cylinder reduction and verdicts near p = 1", (|| {
        let an = StabilityAnalyzer::with_settings(e(1.01), settings)?;
        let section = CrossSection::Interval { length: 1.0 };
        let lam = cylinder_lambda(0.25, &section)?;
        let ok = an.classify(2.0)?.verdict == Verdict::Unstable
            && an.classify(3.0)?.verdict == Verdict::Stable
            && an.classify(lam)?.verdict == Verdict::Unstable
            && an.classify(cylinder_lambda(1.0, &section)?)?.verdict == Verdict::Stable
            && an.classify(-an.alpha1() - 0.1)?.verdict == Verdict::CriterionInapplicable;
        Ok((ok, String::new()))
    })());

    s.record("limit profiles G, W, H", (|| {
        let mut worst = 0.0f64;
        for i in 0..=20 {
            let t = -1.0 + 0.1 * i as f64;
            for j in 0..=20 {
                let tau = -1.0 + 0.1 * j as f64;
                worst = worst.max((green(t, tau)? - green(tau, t)?).abs());
            }
            worst = worst.max((2.0 * green(t, 0.0)? - (1.0 - t.abs())).abs());
            let (h, _, h2) = limit_h_derivs(2.0, t)?;
            worst = worst.max((h2 - (2.0 - NU1) * h).abs());
        }
        for x in [-3.0, -1.0, 0.0, 1.0, 3.0] {
            worst = worst.max((-limit_w_second(x) - limit_w(x).0.exp()).abs());
        }
        let mass = (liouville_mass()? - SQRT_2).abs();
        Ok((worst < 1e-12 && mass < 1e-6, format!("max residual {worst:.2e}, mass gap {mass:.2e}")))
    })());

    s.record("rescaled peak profile bounds", (|| {
        let sol = solve_unit_with(e(20.0), 2049, settings)?;
        let r = rescale_near_peak(&sol, settings.peak_window, settings.peak_samples)?;
        let ok = r.values.iter().all(|u| *u <= 0.0 && *u >= -20.0);
        Ok((ok, String::new()))
    })());

    s.record("c-tilde = ln 2 - 1/2", (|| {
        let c = c_tilde()?;
        Ok(((c - C_TILDE_EXACT).abs() < 1e-8 && c > 0.0, format!("{c:.10}")))
    })());

    s.record("cross-section catalog", (|| {
        let root = bessel_j1prime_root()?;
        let mut ok = (root - 1.841184).abs() < 1e-6 && bessel_j1_prime(root).abs() < 1e-10;
        for sec in [
            CrossSection::Interval { length: 1.3 },
            CrossSection::Rectangle { a: 1.0, b: 2.0 },
            CrossSection::Disk { radius: 0.7 },
        ] {
            let base = lambda1(&sec)?;
            let scaled = lambda1(&sec.scaled(3.0)?)?;
            ok &= base > 0.0 && ((scaled - base / 9.0) / base).abs() < 1e-14;
        }
        ok &= lambda1(&CrossSection::Rectangle { a: 2.0, b: 2.0 })? == lambda1(&CrossSection::Interval { length: 2.0 })?;
        Ok((ok, format!("j'_11 = {root:.8}")))
    })());

    s.checks
}

/// Aligned pass/fail table.
pub fn render(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{mark}  {:<width$}  {}\n", c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    out
}
