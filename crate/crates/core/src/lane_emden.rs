//! Positive solution of `-u'' = u^p` on `(-1, 1)` with `u(±1) = 0`, sampled
//! on `[0, 1]`, and its rescalings to cylinders of height `L`.
//!
//! Two independent constructions are available:
//!
//! * **Shooting.** `v'' = -v^p`, `v(0) = 1`, `v'(0) = 0` is integrated until
//!   its first zero `T`; scale invariance then gives
//!   `u(t) = T^{2/(p-1)} v(T t)` and `‖u‖∞ = T^{2/(p-1)}`.
//! * **First-integral quadrature.** From `u'^2/2 + u^{p+1}/(p+1) = a^{p+1}/(p+1)`
//!   one gets `a^{(p-1)/2} = sqrt((p+1)/2) ∫₀¹ (1 - s^{p+1})^{-1/2} ds`, and the
//!   profile follows by inverting `t(u)`.
//!
//! Profiles are stored normalized by the sup-norm `a`, because `a` itself
//! leaves the `f64` range once `p` is within a few thousandths of 1
//! (`a ≈ (π²/4)^{1/(p-1)}`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{DormandPrince, Tolerance};
use crate::quadrature::{integrate, QuadOptions};
use crate::settings::{Settings, MIN_SOLUTION_NODES};

/// Above this exponent `solve_unit` switches to quadrature inversion.
pub const SHOOTING_MAX_EXPONENT: f64 = 300.0;

/// Exponent `p > 1` of the nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p > 1.0 {
            Ok(Exponent(p))
        } else {
            Err(Error::domain(format!("exponent must be finite and > 1, got {p}")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Exponent {
    type Error = Error;
    fn try_from(p: f64) -> Result<Self> {
        Exponent::new(p)
    }
}

impl From<Exponent> for f64 {
    fn from(p: Exponent) -> f64 {
        p.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `x^p` for `x >= 0`, with negative roundoff clamped to zero.
#[inline]
pub(crate) fn pos_pow(x: f64, p: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (p * x.ln()).exp()
    }
}

/// `1 - (1 - w²)^m` without cancellation for small `w`.
#[inline]
fn one_minus_pow(w: f64, m: f64) -> f64 {
    -(m * (-w * w).ln_1p()).exp_m1()
}

/// Integrand of `∫₀¹ (1 - s^m)^{-1/2} ds` after `s = 1 - w²`.
#[inline]
fn first_integral_density(w: f64, m: f64) -> f64 {
    if w * w < 1e-200 {
        return 2.0 / m.sqrt();
    }
    2.0 * w / one_minus_pow(w, m).sqrt()
}

/// Sup-norm `a(p) = u_p(0)` from the first-integral quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNorm {
    pub p: f64,
    /// `ln a`; always finite.
    pub log_value: f64,
    /// `a^{p-1}`; always finite.
    pub power: f64,
    /// `a^{(p-1)/2}`: the first zero of the normalized profile.
    pub shooting_length: f64,
    /// Estimated relative error of `a` propagated from the quadrature.
    pub relative_error: f64,
}

impl SupNorm {
    /// `a` itself; `+inf` when it exceeds the `f64` range (p very close to 1).
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

/// Closed-form sup-norm, default quadrature tolerances.
pub fn sup_norm_closed_form(p: Exponent) -> Result<SupNorm> {
    sup_norm_closed_form_with(p, &Settings::default())
}

pub fn sup_norm_closed_form_with(p: Exponent, settings: &Settings) -> Result<SupNorm> {
    let p = p.get();
    let m = p + 1.0;
    let q = integrate(
        |w| first_integral_density(w, m),
        0.0,
        1.0,
        settings.quad_options(),
    )?;
    let t_len = ((p + 1.0) / 2.0).sqrt() * q.value;
    let log_value = 2.0 * t_len.ln() / (p - 1.0);
    Ok(SupNorm {
        p,
        log_value,
        power: t_len * t_len,
        shooting_length: t_len,
        relative_error: 2.0 / (p - 1.0) * q.error / q.value,
    })
}

/// Which construction produced a [`LaneEmdenSolution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveMode {
    Shooting,
    QuadratureInversion,
}

/// Positive solution sampled on a uniform grid of `[0, 1]`.
///
/// Internally holds `v = u/a` and `v' = u'/a`; `u` is recovered through
/// [`values`](Self::values) and friends.
#[derive(Debug, Clone, PartialEq)]
pub struct LaneEmdenSolution {
    p: Exponent,
    grid: Vec<f64>,
    shape: Vec<f64>,
    shape_deriv: Vec<f64>,
    log_sup_norm: f64,
    sup_norm_power: f64,
    mode: SolveMode,
}

/// Pointwise invariant residuals of a solution (see [`LaneEmdenSolution::invariants`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionInvariants {
    /// `|u'(0)| / a`.
    pub center_slope: f64,
    /// `|u(1)| / a`.
    pub boundary_value: f64,
    /// `max |u'²/2 + u^{p+1}/(p+1) - a^{p+1}/(p+1)| / a^{p+1}` over the nodes.
    pub energy_residual: f64,
    /// Relative residual of `a^{p+1}/(p+1) = u'(1)²/2`.
    pub boundary_residual: f64,
    pub strictly_decreasing: bool,
    pub concave: bool,
}

impl LaneEmdenSolution {
    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn nodes(&self) -> usize {
        self.grid.len()
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn spacing(&self) -> f64 {
        1.0 / (self.grid.len() - 1) as f64
    }

    pub fn mode(&self) -> SolveMode {
        self.mode
    }

    /// `u / a` at the nodes.
    pub fn shape(&self) -> &[f64] {
        &self.shape
    }

    /// `u' / a` at the nodes.
    pub fn shape_deriv(&self) -> &[f64] {
        &self.shape_deriv
    }

    pub fn log_sup_norm(&self) -> f64 {
        self.log_sup_norm
    }

    /// `a = u(0)`; `+inf` if not representable.
    pub fn sup_norm(&self) -> f64 {
        self.log_sup_norm.exp()
    }

    /// `a^{p-1}`, finite for every `p > 1`.
    pub fn sup_norm_power(&self) -> f64 {
        self.sup_norm_power
    }

    /// Peak rescaling length `μ_p = (p a^{p-1})^{-1/2}`.
    pub fn peak_scale(&self) -> f64 {
        (self.p.get() * self.sup_norm_power).powf(-0.5)
    }

    pub fn values(&self) -> Vec<f64> {
        let a = self.sup_norm();
        self.shape.iter().map(|v| a * v).collect()
    }

    pub fn derivs(&self) -> Vec<f64> {
        let a = self.sup_norm();
        self.shape_deriv.iter().map(|v| a * v).collect()
    }

    /// `u'(1) < 0`.
    pub fn boundary_slope(&self) -> f64 {
        self.sup_norm() * self.shape_deriv[self.shape_deriv.len() - 1]
    }

    fn locate(&self, t: f64) -> Result<(usize, f64)> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::domain(format!("t = {t} outside [0, 1]")));
        }
        let cells = self.grid.len() - 1;
        let i = ((t * cells as f64).floor() as usize).min(cells - 1);
        if self.grid[i + 1] == t {
            return Ok((i + 1, 0.0));
        }
        if self.grid[i] == t {
            return Ok((i, 0.0));
        }
        Ok((i, (t - self.grid[i]) * cells as f64))
    }

    /// Cubic Hermite interpolation of `(u/a, u'/a)`.
    pub fn evaluate_shape(&self, t: f64) -> Result<(f64, f64)> {
        let (i, s) = self.locate(t)?;
        if s == 0.0 {
            return Ok((self.shape[i], self.shape_deriv[i]));
        }
        let h = self.spacing();
        let (y0, y1) = (self.shape[i], self.shape[i + 1]);
        let (d0, d1) = (self.shape_deriv[i], self.shape_deriv[i + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let value = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
        let g00 = (6.0 * s2 - 6.0 * s) / h;
        let g10 = 3.0 * s2 - 4.0 * s + 1.0;
        let g01 = (-6.0 * s2 + 6.0 * s) / h;
        let g11 = 3.0 * s2 - 2.0 * s;
        let deriv = g00 * y0 + g10 * h * d0 + g01 * y1 + g11 * h * d1;
        Ok((value, deriv))
    }

    /// `(u(t), u'(t))` by cubic Hermite interpolation; exact at nodes.
    pub fn evaluate(&self, t: f64) -> Result<(f64, f64)> {
        let (v, dv) = self.evaluate_shape(t)?;
        let a = self.sup_norm();
        Ok((a * v, a * dv))
    }

    /// Linearization potential `p u^{p-1}` at `t ∈ [-1, 1]` (even extension).
    pub fn potential_at(&self, t: f64) -> Result<f64> {
        let (v, _) = self.evaluate_shape(t.abs())?;
        let p = self.p.get();
        Ok(p * self.sup_norm_power * pos_pow(v, p - 1.0))
    }

    /// Residuals of the defining identities, all measured relative to the
    /// natural scale `a` or `a^{p+1}`.
    pub fn invariants(&self) -> SolutionInvariants {
        let p = self.p.get();
        let pw = self.sup_norm_power;
        let level = 1.0 / (p + 1.0);
        let energy_residual = self
            .shape
            .iter()
            .zip(&self.shape_deriv)
            .map(|(&v, &dv)| (dv * dv / (2.0 * pw) + pos_pow(v, p + 1.0) / (p + 1.0) - level).abs())
            .fold(0.0, f64::max);
        let end = self.shape_deriv[self.shape_deriv.len() - 1];
        let boundary_residual = (level - end * end / (2.0 * pw)).abs() / level;
        let strictly_decreasing = self.shape.windows(2).all(|w| w[1] < w[0]);
        // Near t = 1 the true second differences (h² v^p a^{p-1}) fall below
        // the integration noise, so concavity is checked up to that noise.
        let slack = 1e-10;
        let concave = self
            .shape
            .windows(3)
            .all(|w| w[0] - 2.0 * w[1] + w[2] <= slack);
        SolutionInvariants {
            center_slope: self.shape_deriv[0].abs(),
            boundary_value: self.shape[self.shape.len() - 1].abs(),
            energy_residual,
            boundary_residual,
            strictly_decreasing,
            concave,
        }
    }
}

/// Solve on the unit interval with default settings.
pub fn solve_unit(p: Exponent, n: usize) -> Result<LaneEmdenSolution> {
    solve_unit_with(p, n, &Settings::default())
}

/// Solve on the unit interval. Uses shooting for `p <= 300` and quadrature
/// inversion above.
pub fn solve_unit_with(p: Exponent, n: usize, settings: &Settings) -> Result<LaneEmdenSolution> {
    if n < MIN_SOLUTION_NODES {
        return Err(Error::domain(format!(
            "need at least {MIN_SOLUTION_NODES} sample nodes, got {n}"
        )));
    }
    if p.get() > SHOOTING_MAX_EXPONENT {
        solve_by_quadrature(p, n, settings)
    } else {
        solve_by_shooting(p, n, settings)
    }
}

fn uniform_grid(n: usize) -> Vec<f64> {
    let cells = (n - 1) as f64;
    (0..n).map(|i| i as f64 / cells).collect()
}

/// Tolerance used by the shooting integration. `a = T^{2/(p-1)}` amplifies
/// the relative error in `T` by `2/(p-1)`, so it is tightened near `p = 1`.
fn shooting_tolerance(p: f64, settings: &Settings) -> Tolerance {
    let factor = ((p - 1.0) / 2.0).min(1.0);
    Tolerance {
        abs: (settings.ivp_abs * factor).max(1e-16),
        rel: (settings.ivp_rel * factor).max(1e-14),
    }
}

fn solve_by_shooting(p: Exponent, n: usize, settings: &Settings) -> Result<LaneEmdenSolution> {
    let pv = p.get();
    let rhs = move |_s: f64, y: &[f64; 2]| [y[1], -pos_pow(y[0], pv)];
    let dp = DormandPrince::new(shooting_tolerance(pv, settings));

    let (t_len, _) = dp.until_zero(&rhs, 0.0, [1.0, 0.0], |y| y[0], 1e4, 1e-3)?;

    let grid = uniform_grid(n);
    let mut shape = Vec::with_capacity(n);
    let mut shape_deriv = Vec::with_capacity(n);
    shape.push(1.0);
    shape_deriv.push(0.0);
    let mut y = [1.0, 0.0];
    let mut s = 0.0;
    let mut h = 1e-3;
    for (i, &t) in grid.iter().enumerate().skip(1) {
        let target = if i == n - 1 { t_len } else { t_len * t };
        let (y_new, h_next) = dp.advance(&rhs, s, y, target, h)?;
        y = y_new;
        s = target;
        h = h_next;
        shape.push(y[0].clamp(0.0, 1.0));
        shape_deriv.push(t_len * y[1]);
    }
    shape[n - 1] = 0.0;

    Ok(LaneEmdenSolution {
        p,
        grid,
        shape,
        shape_deriv,
        log_sup_norm: 2.0 * t_len.ln() / (pv - 1.0),
        sup_norm_power: t_len * t_len,
        mode: SolveMode::Shooting,
    })
}

fn solve_by_quadrature(p: Exponent, n: usize, settings: &Settings) -> Result<LaneEmdenSolution> {
    let pv = p.get();
    let m = pv + 1.0;
    let sup = sup_norm_closed_form_with(p, settings)?;
    let opts = QuadOptions::with_tolerances(1e-16, settings.quad_rel);
    let density = |w: f64| first_integral_density(w, m);
    let total = integrate(density, 0.0, 1.0, opts)?.value;
    let slope_scale = sup.shooting_length * (2.0 / m).sqrt();

    let grid = uniform_grid(n);
    let mut shape = vec![1.0];
    let mut shape_deriv = vec![0.0];
    // F(w) = ∫₀^w density; t(w) = F(w)/F(1), with w = sqrt(1 - u/a).
    let mut w_prev = 0.0;
    let mut f_prev = 0.0;
    for &t in &grid[1..n - 1] {
        let target = t * total;
        let mut lo = w_prev;
        let mut hi = 1.0;
        let mut w = (w_prev + (target - f_prev) / density(w_prev)).clamp(lo, hi);
        let mut f_w = f_prev;
        let mut converged = false;
        for _ in 0..100 {
            f_w = f_prev + integrate(density, w_prev, w, opts)?.value;
            let resid = f_w - target;
            if resid.abs() <= 16.0 * f64::EPSILON * total {
                converged = true;
                break;
            }
            if resid > 0.0 {
                hi = w;
            } else {
                lo = w;
            }
            let newton = w - resid / density(w);
            w = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= f64::EPSILON {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::RootSearch(format!(
                "quadrature inversion did not converge at t = {t}"
            )));
        }
        w_prev = w;
        f_prev = f_w;
        shape.push(1.0 - w * w);
        shape_deriv.push(-slope_scale * one_minus_pow(w, m).sqrt());
    }
    shape.push(0.0);
    shape_deriv.push(-slope_scale);

    Ok(LaneEmdenSolution {
        p,
        grid,
        shape,
        shape_deriv,
        log_sup_norm: sup.log_value,
        sup_norm_power: sup.power,
        mode: SolveMode::QuadratureInversion,
    })
}

/// Solution on `(0, L)`: `u_{p,L}(y) = L^{-2/(p-1)} u_p(y/L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaledSolution {
    length: f64,
    base: LaneEmdenSolution,
    value_scale: f64,
    slope_scale: f64,
}

impl RescaledSolution {
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn base(&self) -> &LaneEmdenSolution {
        &self.base
    }

    pub fn grid(&self) -> Vec<f64> {
        self.base.grid.iter().map(|t| self.length * t).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.base.values().into_iter().map(|u| self.value_scale * u).collect()
    }

    pub fn derivs(&self) -> Vec<f64> {
        self.base.derivs().into_iter().map(|d| self.slope_scale * d).collect()
    }

    pub fn sup_norm(&self) -> f64 {
        self.value_scale * self.base.sup_norm()
    }

    /// `u'_{p,L}(L)`.
    pub fn boundary_slope(&self) -> f64 {
        self.slope_scale * self.base.boundary_slope()
    }

    /// `(u_{p,L}(y), u'_{p,L}(y))` for `y ∈ [0, L]`.
    pub fn evaluate(&self, y: f64) -> Result<(f64, f64)> {
        let (u, du) = self.base.evaluate(y / self.length)?;
        Ok((self.value_scale * u, self.slope_scale * du))
    }
}

pub fn rescale_to_length(sol: &LaneEmdenSolution, length: f64) -> Result<RescaledSolution> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::domain(format!("length must be positive, got {length}")));
    }
    let p = sol.p.get();
    Ok(RescaledSolution {
        length,
        base: sol.clone(),
        value_scale: length.powf(-2.0 / (p - 1.0)),
        slope_scale: length.powf(-(p + 1.0) / (p - 1.0)),
    })
}

/// Integral quantities over the even extension to `(-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralIdentities {
    /// `∫ (u')²`.
    pub grad_sq: f64,
    /// `∫ u^{p+1}`.
    pub power_integral: f64,
    /// Minimal value of the radial Sobolev quotient: `(∫ u^{p+1})^{(p-1)/(p+1)}`.
    pub i_p: f64,
    /// Relative residual of `a^{p+1}/(p+1) = u'(1)²/2`.
    pub boundary_residual: f64,
}

/// Endpoint-corrected trapezoid rule on the uniform grid.
fn corrected_trapezoid(f: &[f64], df_start: f64, df_end: f64, h: f64) -> f64 {
    let n = f.len();
    let interior: f64 = f[1..n - 1].iter().sum();
    h * (0.5 * (f[0] + f[n - 1]) + interior) - h * h / 12.0 * (df_end - df_start)
}

pub fn integral_identities(sol: &LaneEmdenSolution) -> IntegralIdentities {
    let p = sol.p.get();
    let h = sol.spacing();
    let pw = sol.sup_norm_power;
    let n = sol.nodes();
    let grad: Vec<f64> = sol.shape_deriv.iter().map(|d| d * d).collect();
    let power: Vec<f64> = sol.shape.iter().map(|&v| pos_pow(v, p + 1.0)).collect();
    // d/dt (v')² = -2 a^{p-1} v' v^p,   d/dt v^{p+1} = (p+1) v^p v'
    let dgrad = |i: usize| -2.0 * pw * sol.shape_deriv[i] * pos_pow(sol.shape[i], p);
    let dpower = |i: usize| (p + 1.0) * pos_pow(sol.shape[i], p) * sol.shape_deriv[i];
    let grad_norm = 2.0 * corrected_trapezoid(&grad, dgrad(0), dgrad(n - 1), h);
    let power_norm = 2.0 * corrected_trapezoid(&power, dpower(0), dpower(n - 1), h);
    let log_a = sol.log_sup_norm;
    let log_power = (p + 1.0) * log_a + power_norm.ln();
    IntegralIdentities {
        grad_sq: (2.0 * log_a).exp() * grad_norm,
        power_integral: log_power.exp(),
        i_p: ((p - 1.0) / (p + 1.0) * log_power).exp(),
        boundary_residual: sol.invariants().boundary_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn exponent_rejects_one_and_below() {
        assert!(Exponent::new(1.0).is_err());
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert!(Exponent::new(f64::INFINITY).is_err());
        assert!(Exponent::new(1.0 + 1e-12).is_ok());
    }

    #[test]
    fn closed_form_p3() {
        let a = sup_norm_closed_form(ex(3.0)).unwrap();
        assert!((a.value() - 1.854075).abs() < 1e-5, "{}", a.value());
    }

    #[test]
    fn closed_form_stays_finite_near_one() {
        let a = sup_norm_closed_form(ex(1.001)).unwrap();
        assert!(a.value().is_infinite());
        assert!(a.log_value.is_finite());
        assert!((a.power - 2.46788).abs() < 1e-4, "{}", a.power);
    }

    #[test]
    fn shooting_imposes_boundary_conditions() {
        let sol = solve_unit(ex(5.0), 1025).unwrap();
        let u = sol.values();
        let du = sol.derivs();
        assert!(u[1024].abs() < 1e-10);
        assert!(du[0].abs() < 1e-10);
        let inv = sol.invariants();
        assert!(inv.energy_residual < 1e-9, "{inv:?}");
        assert!(inv.boundary_residual < 1e-8, "{inv:?}");
        assert!(inv.strictly_decreasing && inv.concave);
    }

    #[test]
    fn rejects_tiny_grids() {
        assert!(solve_unit(ex(2.0), 32).is_err());
        assert!(solve_unit(ex(2.0), 33).is_ok());
    }

    #[test]
    fn quadrature_mode_above_300() {
        let sol = solve_unit(ex(400.0), 257).unwrap();
        assert_eq!(sol.mode(), SolveMode::QuadratureInversion);
        let inv = sol.invariants();
        assert!(inv.energy_residual < 1e-12, "{inv:?}");
        assert!(inv.strictly_decreasing);
    }

    #[test]
    fn both_modes_agree_on_profile() {
        let p = ex(250.0);
        let settings = Settings::default();
        let shot = solve_by_shooting(p, 513, &settings).unwrap();
        let quad = solve_by_quadrature(p, 513, &settings).unwrap();
        let diff = shot
            .shape()
            .iter()
            .zip(quad.shape())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-9, "{diff}");
        assert!((shot.log_sup_norm() - quad.log_sup_norm()).abs() < 1e-10);
    }

    #[test]
    fn evaluate_reproduces_nodes_and_center() {
        let sol = solve_unit(ex(3.0), 129).unwrap();
        let u = sol.values();
        let du = sol.derivs();
        for i in [0, 1, 64, 127, 128] {
            let (v, d) = sol.evaluate(sol.grid()[i]).unwrap();
            assert_eq!(v, u[i]);
            assert_eq!(d, du[i]);
        }
        let (a, slope) = sol.evaluate(0.0).unwrap();
        assert_eq!(a, sol.sup_norm());
        assert_eq!(slope, 0.0);
        assert!(sol.evaluate(1.0 + 1e-12).is_err());
        assert!(sol.evaluate(-1e-12).is_err());
    }

    #[test]
    fn rescale_identity_and_chain_rule() {
        let sol = solve_unit(ex(3.0), 257).unwrap();
        let same = rescale_to_length(&sol, 1.0).unwrap();
        assert_eq!(same.values(), sol.values());
        let r = rescale_to_length(&sol, 2.0).unwrap();
        assert!((r.sup_norm() - 0.927037).abs() < 1e-6);
        let expect = 2f64.powf(-4.0 / 2.0) * sol.boundary_slope();
        assert!((r.boundary_slope() - expect).abs() <= 4.0 * f64::EPSILON * expect.abs());
        assert_eq!(r.values()[256], 0.0);
        assert!(rescale_to_length(&sol, 0.0).is_err());
        assert!(rescale_to_length(&sol, -1.0).is_err());
    }

    #[test]
    fn identities_for_p2() {
        let sol = solve_unit(ex(2.0), 1025).unwrap();
        let id = integral_identities(&sol);
        assert!((id.grad_sq - id.power_integral).abs() < 1e-8 * id.power_integral);
        assert!(id.i_p <= 2f64.powf(1.0 / 3.0) * 4f64.powf(2.0 / 3.0));
    }
}
