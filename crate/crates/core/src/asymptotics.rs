//! Limit profiles for `p → ∞` and `p → 1`, and convergence reports that
//! measure how far the computed solutions are from them.

use std::f64::consts::{LN_2, PI, SQRT_2};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lane_emden::{pos_pow, sup_norm_closed_form_with, Exponent, LaneEmdenSolution};
use crate::quadrature::{integrate, QuadOptions};
use crate::settings::Settings;
use crate::spectral::{alpha1_for, resolved_solution, Potential};

/// Dirichlet Green's function of `-d²/dt²` on `(-1, 1)`.
pub fn green(t: f64, tau: f64) -> Result<f64> {
    for (name, x) in [("t", t), ("tau", tau)] {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::domain(format!("{name} = {x} outside [-1, 1]")));
        }
    }
    let (lo, hi) = if t <= tau { (t, tau) } else { (tau, t) };
    Ok(0.5 * (1.0 + lo) * (1.0 - hi))
}

/// `W(s) = log(4 e^{√2 s} / (1 + e^{√2 s})²)` and `W'(s)`, the even solution
/// of `-W'' = e^W` with `W(0) = W'(0) = 0`. Stable for any finite `s`.
pub fn limit_w(s: f64) -> (f64, f64) {
    let x = SQRT_2 * s.abs();
    let w = 2.0 * LN_2 - x - 2.0 * (-x).exp().ln_1p();
    let dw = -SQRT_2 * (s / SQRT_2).tanh();
    (w, dw)
}

/// `W''(s) = -e^{W(s)}` in closed form (`-sech²(s/√2)`).
pub fn limit_w_second(s: f64) -> f64 {
    let c = (s / SQRT_2).cosh();
    -1.0 / (c * c)
}

/// First Dirichlet eigenfunction `φ₁(t) = cos(πt/2)` and its derivative.
pub fn phi1(t: f64) -> (f64, f64) {
    let (s, c) = (0.5 * PI * t).sin_cos();
    (c, -0.5 * PI * s)
}

/// `π²/4`.
pub const NU1: f64 = PI * PI / 4.0;

/// `H_λ(t) = cos(√(π²/4 - λ) t)` with its first and second derivatives.
pub fn limit_h_derivs(lambda: f64, t: f64) -> Result<(f64, f64, f64)> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(lambda < NU1) {
        return Err(Error::domain(format!(
            "limit profile needs lambda < pi^2/4, got {lambda}"
        )));
    }
    let k = (NU1 - lambda).sqrt();
    let (s, c) = (k * t).sin_cos();
    Ok((c, -k * s, -k * k * c))
}

pub fn limit_h(lambda: f64, t: f64) -> Result<f64> {
    limit_h_derivs(lambda, t).map(|h| h.0)
}

/// `ũ_p(s) = p (u_p(μ_p s) - u_p(0)) / u_p(0)` sampled on `[-S, S]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RescaledProfile {
    pub p: f64,
    pub mu: f64,
    pub s: Vec<f64>,
    pub values: Vec<f64>,
    pub derivs: Vec<f64>,
}

impl RescaledProfile {
    /// `max |ũ_p - W|` over the samples.
    pub fn distance_to_w(&self) -> f64 {
        self.s
            .iter()
            .zip(&self.values)
            .map(|(&s, &u)| (u - limit_w(s).0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn rescale_near_peak(sol: &LaneEmdenSolution, half_width: f64, samples: usize) -> Result<RescaledProfile> {
    let mu = sol.peak_scale();
    if !(half_width > 0.0 && half_width * mu <= 1.0) {
        return Err(Error::domain(format!(
            "half-width {half_width} must lie in (0, 1/mu_p = {}]",
            1.0 / mu
        )));
    }
    if samples < 2 {
        return Err(Error::domain("rescaled profile needs at least 2 samples"));
    }
    let p = sol.p().get();
    let mut s = Vec::with_capacity(samples);
    let mut values = Vec::with_capacity(samples);
    let mut derivs = Vec::with_capacity(samples);
    for i in 0..samples {
        let si = -half_width + 2.0 * half_width * i as f64 / (samples - 1) as f64;
        let (v, dv) = sol.evaluate_shape((mu * si.abs()).min(1.0))?;
        s.push(si);
        values.push(p * (v - 1.0));
        derivs.push(p * mu * dv * si.signum());
    }
    Ok(RescaledProfile {
        p,
        mu,
        s,
        values,
        derivs,
    })
}

/// `c̃ = ∫φ₁² |log φ₁| / ∫φ₁²` over `(-1, 1)` by adaptive quadrature.
pub fn c_tilde() -> Result<f64> {
    let opts = QuadOptions::with_tolerances(1e-13, 1e-13);
    let num = integrate(
        |t| {
            let c = (0.5 * PI * t).cos();
            if c <= 0.0 {
                0.0
            } else {
                -c * c * c.ln()
            }
        },
        0.0,
        1.0,
        opts,
    )?;
    let den = integrate(|t| (0.5 * PI * t).cos().powi(2), 0.0, 1.0, opts)?;
    Ok(num.value / den.value)
}

/// Closed form of [`c_tilde`].
pub const C_TILDE_EXACT: f64 = LN_2 - 0.5;

/// `∫₀^∞ e^{W(s)} ds` by quadrature over `[0, 60]` (the tail is below 1e-35).
pub fn liouville_mass() -> Result<f64> {
    integrate(|s| limit_w(s).0.exp(), 0.0, 60.0, QuadOptions::with_tolerances(1e-13, 1e-13)).map(|q| q.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitConstants {
    pub c_tilde: f64,
    /// Limit of `α₁(p) μ_p²` as `p → ∞`.
    pub beta1: f64,
    /// `π²/4`, the first Dirichlet eigenvalue of `-d²/dt²` on `(-1, 1)`.
    pub nu1: f64,
    /// `∫₀^∞ e^W`.
    pub sqrt2_mass: f64,
}

impl LimitConstants {
    pub fn compute() -> Result<Self> {
        Ok(LimitConstants {
            c_tilde: c_tilde()?,
            beta1: -0.5,
            nu1: NU1,
            sqrt2_mass: liouville_mass()?,
        })
    }
}

/// Least-squares line through `(log x, log y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Euclidean norm of the log-space residuals.
    pub residual: f64,
}

pub fn fit_rate(x: &[f64], y: &[f64]) -> Result<RateFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::domain("fit_rate needs two equal-length lists of at least 2 points"));
    }
    if x.iter().chain(y).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::domain("fit_rate needs positive finite entries"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("fit_rate needs at least two distinct x values"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(RateFit {
        slope,
        intercept,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    LargeP,
    NearOne,
}

/// One named metric across the `p` list, with a power-law fit in `p`
/// (large `p`) or `p - 1` (near one) when every value is positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricSeries {
    pub name: String,
    pub values: Vec<f64>,
    pub rate: Option<RateFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub regime: Regime,
    pub p_values: Vec<f64>,
    pub metrics: Vec<MetricSeries>,
}

impl ConvergenceReport {
    pub fn metric(&self, name: &str) -> Option<&[f64]> {
        self.metrics
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.values.as_slice())
    }

    fn build(regime: Regime, p_values: Vec<f64>, names: &[&str], rows: Vec<Vec<f64>>) -> Self {
        let x: Vec<f64> = match regime {
            Regime::LargeP => p_values.clone(),
            Regime::NearOne => p_values.iter().map(|p| p - 1.0).collect(),
        };
        let metrics = names
            .iter()
            .enumerate()
            .map(|(j, name)| {
                let values: Vec<f64> = rows.iter().map(|r| r[j]).collect();
                MetricSeries {
                    name: name.to_string(),
                    rate: fit_rate(&x, &values).ok(),
                    values,
                }
            })
            .collect();
        ConvergenceReport {
            regime,
            p_values,
            metrics,
        }
    }
}

pub const LARGE_P_METRICS: [&str; 5] = ["err_green", "err_w", "ratio_pp1", "alpha1_mu2", "sup_norm_deviation"];
pub const NEAR_ONE_METRICS: [&str; 4] = ["err_phi1", "err_q", "abs_alpha1", "slope_est"];

fn exponents(p_list: &[f64], ok: impl Fn(f64) -> bool, msg: &str) -> Result<Vec<Exponent>> {
    if p_list.is_empty() {
        return Err(Error::domain("p list is empty"));
    }
    p_list
        .iter()
        .map(|&p| {
            if ok(p) {
                Exponent::new(p)
            } else {
                Err(Error::domain(format!("p = {p}: {msg}")))
            }
        })
        .collect()
}

pub fn report_large_p(p_list: &[f64]) -> Result<ConvergenceReport> {
    report_large_p_with(p_list, &Settings::default())
}

/// Metrics per `p`: `err_green = max|u_p - (1 - |t|)|`,
/// `err_w = max_{|s| ≤ S} |ũ_p - W|`, `ratio_pp1 = 2 a^{p+1}/p`,
/// `alpha1_mu2 = α₁ μ_p²` and `sup_norm_deviation = |a - 1|`.
/// Maxima are over sample nodes.
pub fn report_large_p_with(p_list: &[f64], settings: &Settings) -> Result<ConvergenceReport> {
    let exps = exponents(p_list, |p| p > 10.0, "large-p report needs p > 10")?;
    let rows = exps
        .par_iter()
        .map(|&e| -> Result<Vec<f64>> {
            let p = e.get();
            let (sol, fd_nodes) = resolved_solution(e, settings)?;
            let a = sol.sup_norm();
            let err_green = sol
                .grid()
                .iter()
                .zip(sol.shape())
                .map(|(t, v)| (a * v - (1.0 - t)).abs())
                .fold(0.0, f64::max);
            let err_w = rescale_near_peak(&sol, settings.peak_window, settings.peak_samples)?.distance_to_w();
            let ratio_pp1 = 2.0 * ((p + 1.0) * sol.log_sup_norm()).exp() / p;
            let mu = sol.peak_scale();
            let alpha = alpha1_for(&Potential::lane_emden(sol.clone()), fd_nodes, settings)?.value;
            Ok(vec![err_green, err_w, ratio_pp1, alpha * mu * mu, (a - 1.0).abs()])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::build(Regime::LargeP, p_list.to_vec(), &LARGE_P_METRICS, rows))
}

/// `2 a^{p+1}/p` from the closed form alone (no profile), usable for any `p`.
pub fn ratio_pp1_closed_form(p: Exponent) -> Result<f64> {
    let sup = sup_norm_closed_form_with(p, &Settings::default())?;
    Ok(2.0 * ((p.get() + 1.0) * sup.log_value).exp() / p.get())
}

/// `(a^{p-1} - π²/4)/(p - 1)` from the closed form.
pub fn slope_estimate(p: Exponent) -> Result<f64> {
    let sup = sup_norm_closed_form_with(p, &Settings::default())?;
    Ok((sup.power - NU1) / (p.get() - 1.0))
}

/// Half-width of the window used for the `p u^{p-1}` comparison near one.
pub const NEAR_ONE_Q_WINDOW: f64 = 0.9;

pub fn report_near_one(p_list: &[f64]) -> Result<ConvergenceReport> {
    report_near_one_with(p_list, &Settings::default())
}

/// Metrics per `p`: `err_phi1 = max(max|u/a - φ₁|, max|(u/a)' - φ₁'|)`,
/// `err_q = max_{|t| ≤ 0.9} |p u^{p-1} - π²/4|`, `abs_alpha1 = |α₁(p)|` and
/// `slope_est = (a^{p-1} - π²/4)/(p - 1)`. Maxima are over sample nodes.
pub fn report_near_one_with(p_list: &[f64], settings: &Settings) -> Result<ConvergenceReport> {
    let exps = exponents(p_list, |p| p > 1.0 && p < 1.5, "near-one report needs 1 < p < 1.5")?;
    let rows = exps
        .par_iter()
        .map(|&e| -> Result<Vec<f64>> {
            let p = e.get();
            let (sol, fd_nodes) = resolved_solution(e, settings)?;
            let mut err_phi1 = 0.0f64;
            let mut err_q = 0.0f64;
            for ((&t, &v), &dv) in sol.grid().iter().zip(sol.shape()).zip(sol.shape_deriv()) {
                let (f, df) = phi1(t);
                err_phi1 = err_phi1.max((v - f).abs()).max((dv - df).abs());
                if t <= NEAR_ONE_Q_WINDOW {
                    let q = p * sol.sup_norm_power() * pos_pow(v, p - 1.0);
                    err_q = err_q.max((q - NU1).abs());
                }
            }
            let alpha = alpha1_for(&Potential::lane_emden(sol.clone()), fd_nodes, settings)?.value;
            Ok(vec![err_phi1, err_q, alpha.abs(), (sol.sup_norm_power() - NU1) / (p - 1.0)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::build(Regime::NearOne, p_list.to_vec(), &NEAR_ONE_METRICS, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lane_emden::solve_unit;

    #[test]
    fn green_values() {
        assert_eq!(green(0.0, 0.0).unwrap(), 0.5);
        assert_eq!(green(1.0, 0.0).unwrap(), 0.0);
        assert_eq!(green(-1.0, 0.0).unwrap(), 0.0);
        assert!(green(1.1, 0.0).is_err());
        for i in 0..=20 {
            let t = -1.0 + 0.1 * i as f64;
            assert!((2.0 * green(t, 0.0).unwrap() - (1.0 - t.abs())).abs() < 1e-15);
        }
    }

    #[test]
    fn w_profile() {
        assert_eq!(limit_w(0.0), (0.0, 0.0));
        for s in [-3.0, -1.0, 0.0, 1.0, 3.0] {
            let (w, _) = limit_w(s);
            assert!((-limit_w_second(s) - w.exp()).abs() < 1e-12);
        }
        let (w, dw) = limit_w(500.0);
        assert!(w.is_finite() && (dw + SQRT_2).abs() < 1e-12);
        assert!((liouville_mass().unwrap() - SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn h_profile() {
        assert_eq!(limit_h(1.0, 0.0).unwrap(), 1.0);
        assert!(limit_h(NU1, 0.3).is_err());
        for t in [-0.7, 0.0, 0.4, 1.0] {
            assert!((limit_h(0.0, t).unwrap() - phi1(t).0).abs() < 1e-15);
            let (h, _, h2) = limit_h_derivs(2.0, t).unwrap();
            assert!((h2 - (2.0 - NU1) * h).abs() < 1e-12);
        }
    }

    #[test]
    fn c_tilde_matches_closed_form() {
        let c = c_tilde().unwrap();
        assert!((c - 0.193147).abs() < 1e-6);
        assert!((c - C_TILDE_EXACT).abs() < 1e-10, "{c}");
    }

    #[test]
    fn rate_fits() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let f = fit_rate(&x, &x.map(|v| v * v)).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && f.residual < 1e-12);
        let f = fit_rate(&x, &[3.0; 4]).unwrap();
        assert!(f.slope.abs() < 1e-12);
        assert!(fit_rate(&[1.0], &[1.0]).is_err());
        assert!(fit_rate(&[1.0, 2.0], &[1.0, -1.0]).is_err());
    }

    #[test]
    fn rescaled_profile_basics() {
        let sol = solve_unit(Exponent::new(20.0).unwrap(), 2049).unwrap();
        let r = rescale_near_peak(&sol, 5.0, 201).unwrap();
        assert_eq!(r.values[100], 0.0);
        assert_eq!(r.derivs[100], 0.0);
        assert!(r.values.iter().all(|u| *u <= 0.0 && *u >= -20.0));
        assert!(rescale_near_peak(&sol, 1.0 / r.mu + 1.0, 11).is_err());
    }
}
