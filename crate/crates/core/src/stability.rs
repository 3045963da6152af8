//! Stability of the one-dimensional solution in a cylinder `(0, L) × ω`.
//!
//! With `λ = L² λ₁(ω)` the pair is stable exactly when the solution of
//!
//! ```text
//! h'' = (λ - p u_p^{p-1}) h  on (0, 1),   h'(0) = 0,   h(1) = -u_p'(1)
//! ```
//!
//! has `h'(1) > 0`, and unstable when `h'(1) < 0`. This is asserted only when
//! `λ + α₁(p) > 0`; elsewhere the verdict is `CriterionInapplicable`.
//!
//! Since `u_p(0)` overflows as `p → 1`, every `h` here is divided by `u_p(0)`:
//! it is the solution for the boundary datum `-u_p'(1)/u_p(0)`. By linearity
//! this does not change any sign.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cross_sections::CrossSection;
use crate::error::{Error, Result};
use crate::lane_emden::{pos_pow, Exponent, LaneEmdenSolution};
use crate::ode::{DormandPrince, Tolerance};
use crate::roots::bisect;
use crate::settings::Settings;
use crate::spectral::{alpha1_for, resolved_solution, Alpha1, Potential};

/// Samples of `h/u_p(0)` and `h'/u_p(0)` on a uniform grid of `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HProfile {
    pub p: f64,
    pub lambda: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub derivs: Vec<f64>,
    /// `h'(1)/u_p(0)`.
    pub end_slope: f64,
    /// `-u_p'(1)/u_p(0)`, the imposed value at `t = 1`.
    pub boundary_datum: f64,
}

impl HProfile {
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Number of sign changes of the sampled `h'` (zeros skipped).
    pub fn slope_sign_changes(&self) -> usize {
        let signs: Vec<f64> = self
            .derivs
            .iter()
            .filter(|d| **d != 0.0)
            .map(|d| d.signum())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "STABLE")]
    Stable,
    #[serde(rename = "UNSTABLE")]
    Unstable,
    #[serde(rename = "MARGINAL")]
    Marginal,
    #[serde(rename = "INAPPLICABLE")]
    CriterionInapplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Stable => "STABLE",
            Verdict::Unstable => "UNSTABLE",
            Verdict::Marginal => "MARGINAL",
            Verdict::CriterionInapplicable => "INAPPLICABLE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    /// `h'(1)/u_p(0)`; absent when the criterion does not apply.
    pub end_slope: Option<f64>,
    /// `λ + α₁(p)`.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ThresholdResult {
    Found {
        lambda_star: f64,
        bracket: [f64; 2],
        /// Verdict just below the bracket.
        below: Verdict,
        /// Sign changes seen in the coarse scan; more than one is unexpected.
        sign_changes: usize,
    },
    NoThresholdFound {
        no_threshold: bool,
        window: [f64; 2],
    },
}

impl ThresholdResult {
    pub fn lambda_star(&self) -> Option<f64> {
        match self {
            ThresholdResult::Found { lambda_star, .. } => Some(*lambda_star),
            ThresholdResult::NoThresholdFound { .. } => None,
        }
    }
}

/// Points of the coarse scan in [`threshold_lambda`].
pub const THRESHOLD_SCAN_POINTS: usize = 40;
/// Width of the final threshold bracket.
pub const THRESHOLD_TOL: f64 = 1e-6;

/// Solution, potential and `α₁(p)` for one exponent, reused across many `λ`.
#[derive(Debug, Clone)]
pub struct StabilityAnalyzer {
    solution: Arc<LaneEmdenSolution>,
    alpha1: Alpha1,
    settings: Settings,
}

impl StabilityAnalyzer {
    pub fn new(p: Exponent) -> Result<Self> {
        Self::with_settings(p, &Settings::default())
    }

    pub fn with_settings(p: Exponent, settings: &Settings) -> Result<Self> {
        let (solution, fd_nodes) = resolved_solution(p, settings)?;
        let alpha1 = alpha1_for(&Potential::lane_emden(solution.clone()), fd_nodes, settings)?;
        Ok(StabilityAnalyzer {
            solution,
            alpha1,
            settings: *settings,
        })
    }

    pub fn p(&self) -> Exponent {
        self.solution.p()
    }

    pub fn solution(&self) -> &LaneEmdenSolution {
        &self.solution
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1.value
    }

    pub fn margin(&self, lambda: f64) -> f64 {
        lambda + self.alpha1.value
    }

    /// `|u_p'(1)|/u_p(0)`, the scale of the marginal band.
    fn slope_scale(&self) -> f64 {
        -self.solution.shape_deriv()[self.solution.nodes() - 1]
    }

    /// Unscaled shooting: `h₁(0) = 1`, `h₁'(0) = 0`, sampled on `n` nodes.
    /// The potential comes from integrating `v = u/u(0)` alongside, so it is
    /// exact up to the integrator tolerance rather than interpolated.
    fn shoot(&self, lambda: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        let p = self.p().get();
        let t2 = self.solution.sup_norm_power();
        let rhs = |_t: f64, y: &[f64; 4]| {
            let q = p * t2 * pos_pow(y[0], p - 1.0);
            [y[1], -t2 * pos_pow(y[0], p), y[3], (lambda - q) * y[2]]
        };
        let dp = DormandPrince::new(Tolerance {
            abs: self.settings.ivp_abs.min(1e-13),
            rel: self.settings.ivp_rel.min(1e-12),
        });
        let mut y = [1.0, 0.0, 1.0, 0.0];
        let mut h = 1e-3 * self.solution.peak_scale().min(1.0);
        let mut values = Vec::with_capacity(n);
        let mut derivs = Vec::with_capacity(n);
        values.push(1.0);
        derivs.push(0.0);
        let cells = (n - 1) as f64;
        for i in 1..n {
            let (t0, t1) = ((i - 1) as f64 / cells, i as f64 / cells);
            let (y_new, h_next) = dp.advance(&rhs, t0, y, t1, h)?;
            y = y_new;
            h = h_next;
            if !(y[2].is_finite() && y[3].is_finite()) {
                return Err(Error::Inconsistent(format!(
                    "h overflowed at t = {t1} for lambda = {lambda}"
                )));
            }
            values.push(y[2]);
            derivs.push(y[3]);
        }
        Ok((values, derivs))
    }

    pub fn solve_h(&self, lambda: f64, n: usize) -> Result<HProfile> {
        self.solve_h_with_datum(lambda, n, self.slope_scale())
    }

    /// As [`solve_h`](Self::solve_h) but with `h(1) = datum > 0`.
    pub fn solve_h_with_datum(&self, lambda: f64, n: usize, datum: f64) -> Result<HProfile> {
        if !(datum.is_finite() && datum > 0.0) {
            return Err(Error::domain(format!("boundary datum must be positive, got {datum}")));
        }
        if !lambda.is_finite() {
            return Err(Error::domain(format!("lambda must be finite, got {lambda}")));
        }
        if n < 2 {
            return Err(Error::domain("h profile needs at least 2 nodes"));
        }
        let margin = self.margin(lambda);
        if margin <= 0.0 {
            return Err(Error::Inapplicable { margin });
        }
        let (mut values, mut derivs) = self.shoot(lambda, n)?;
        let h1_end = values[n - 1];
        if h1_end <= 0.0 {
            return Err(Error::Inconsistent(format!(
                "h1(1) = {h1_end} <= 0 although lambda + alpha1 = {margin} > 0"
            )));
        }
        let c = datum / h1_end;
        values.iter_mut().for_each(|v| *v *= c);
        derivs.iter_mut().for_each(|v| *v *= c);
        values[n - 1] = datum;
        let cells = (n - 1) as f64;
        Ok(HProfile {
            p: self.p().get(),
            lambda,
            grid: (0..n).map(|i| i as f64 / cells).collect(),
            end_slope: derivs[n - 1],
            values,
            derivs,
            boundary_datum: datum,
        })
    }

    /// Sign of `h'(1)` without sampling; `None` when inapplicable.
    fn end_slope(&self, lambda: f64) -> Result<Option<f64>> {
        match self.solve_h(lambda, 2) {
            Ok(h) => Ok(Some(h.end_slope)),
            Err(Error::Inapplicable { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn classify(&self, lambda: f64) -> Result<StabilityVerdict> {
        let margin = self.margin(lambda);
        let Some(end_slope) = self.end_slope(lambda)? else {
            return Ok(StabilityVerdict {
                verdict: Verdict::CriterionInapplicable,
                end_slope: None,
                margin,
            });
        };
        let band = self.settings.marginal_band * self.slope_scale();
        let verdict = if end_slope > band {
            Verdict::Stable
        } else if end_slope < -band {
            Verdict::Unstable
        } else {
            Verdict::Marginal
        };
        Ok(StabilityVerdict {
            verdict,
            end_slope: Some(end_slope),
            margin,
        })
    }

    /// Admissible scan window `(max(0, -α₁) + ε, 2 p a^{p-1})`.
    pub fn threshold_window(&self) -> (f64, f64) {
        let a1 = self.alpha1();
        let eps = 1e-3 * a1.abs().max(1.0);
        (
            (-a1).max(0.0) + eps,
            2.0 * self.p().get() * self.solution.sup_norm_power(),
        )
    }

    pub fn threshold(&self) -> Result<ThresholdResult> {
        let (lo, hi) = self.threshold_window();
        self.threshold_in(lo, hi, THRESHOLD_SCAN_POINTS)
    }

    /// Scan `points` equispaced `λ` in `[lo, hi]`, then bisect the first sign
    /// change of `h'(1)`.
    pub fn threshold_in(&self, lo: f64, hi: f64, points: usize) -> Result<ThresholdResult> {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(lo < hi) || points < 2 {
            return Err(Error::domain(format!("bad threshold window [{lo}, {hi}]")));
        }
        let lambdas: Vec<f64> = (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect();
        let slopes = lambdas
            .iter()
            .map(|&l| self.end_slope(l))
            .collect::<Result<Vec<_>>>()?;
        let mut first = None;
        let mut sign_changes = 0;
        for i in 0..points - 1 {
            if let (Some(a), Some(b)) = (slopes[i], slopes[i + 1]) {
                if a.signum() != b.signum() {
                    sign_changes += 1;
                    first.get_or_insert(i);
                }
            }
        }
        let Some(i) = first else {
            return Ok(ThresholdResult::NoThresholdFound {
                no_threshold: true,
                window: [lo, hi],
            });
        };
        let bracket = self.bisect_slope(lambdas[i], lambdas[i + 1])?;
        let below = if slopes[i].unwrap_or(0.0) < 0.0 {
            Verdict::Unstable
        } else {
            Verdict::Stable
        };
        Ok(ThresholdResult::Found {
            lambda_star: bracket.0 + 0.5 * (bracket.1 - bracket.0),
            bracket: [bracket.0, bracket.1],
            below,
            sign_changes,
        })
    }

    fn bisect_slope(&self, lo: f64, hi: f64) -> Result<(f64, f64)> {
        let b = bisect(
            |l| self.end_slope(l).map(|s| s.unwrap_or(f64::NAN)),
            lo,
            hi,
            THRESHOLD_TOL,
            200,
        )?;
        Ok((b.lo, b.hi))
    }
}

/// `h` profile on `n` nodes for one `(p, λ)`.
pub fn solve_h(p: Exponent, lambda: f64, n: usize) -> Result<HProfile> {
    StabilityAnalyzer::new(p)?.solve_h(lambda, n)
}

pub fn classify(p: Exponent, lambda: f64) -> Result<StabilityVerdict> {
    StabilityAnalyzer::new(p)?.classify(lambda)
}

/// The cylinder `(0, L) × ω`: `classify(p, L² λ₁(ω))`.
pub fn classify_cylinder(p: Exponent, length: f64, section: &CrossSection) -> Result<StabilityVerdict> {
    StabilityAnalyzer::new(p)?.classify(cylinder_lambda(length, section)?)
}

/// `λ = L² λ₁(ω)`.
pub fn cylinder_lambda(length: f64, section: &CrossSection) -> Result<f64> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::domain(format!("length must be positive, got {length}")));
    }
    Ok(length * length * section.lambda1()?)
}

pub fn threshold_lambda(p: Exponent) -> Result<ThresholdResult> {
    StabilityAnalyzer::new(p)?.threshold()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseDiagram {
    pub p_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
    /// `verdicts[i][j]` for `(p_grid[i], lambda_grid[j])`.
    pub verdicts: Vec<Vec<Verdict>>,
    pub end_slopes: Vec<Vec<Option<f64>>>,
    /// Per row, the bisected `λ` of the first sign flip between adjacent cells.
    pub thresholds: Vec<Option<f64>>,
}

fn sorted_nonempty(name: &str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::domain(format!("{name} is empty")));
    }
    if xs.iter().any(|x| !x.is_finite()) || xs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain(format!("{name} must be finite and sorted")));
    }
    Ok(())
}

pub fn phase_diagram(p_grid: &[f64], lambda_grid: &[f64]) -> Result<PhaseDiagram> {
    phase_diagram_with(p_grid, lambda_grid, &Settings::default())
}

/// Rows are computed in parallel; the result does not depend on scheduling.
pub fn phase_diagram_with(p_grid: &[f64], lambda_grid: &[f64], settings: &Settings) -> Result<PhaseDiagram> {
    sorted_nonempty("p grid", p_grid)?;
    sorted_nonempty("lambda grid", lambda_grid)?;
    let exps = p_grid
        .iter()
        .map(|&p| Exponent::new(p))
        .collect::<Result<Vec<_>>>()?;
    let rows = exps
        .par_iter()
        .map(|&p| -> Result<(Vec<StabilityVerdict>, Option<f64>)> {
            let an = StabilityAnalyzer::with_settings(p, settings)?;
            let cells = lambda_grid
                .iter()
                .map(|&l| an.classify(l))
                .collect::<Result<Vec<_>>>()?;
            let mut threshold = None;
            for j in 0..cells.len().saturating_sub(1) {
                if let (Some(a), Some(b)) = (cells[j].end_slope, cells[j + 1].end_slope) {
                    if a.signum() != b.signum() {
                        let (lo, hi) = an.bisect_slope(lambda_grid[j], lambda_grid[j + 1])?;
                        threshold = Some(0.5 * (lo + hi));
                        break;
                    }
                }
            }
            Ok((cells, threshold))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut verdicts = Vec::with_capacity(rows.len());
    let mut end_slopes = Vec::with_capacity(rows.len());
    let mut thresholds = Vec::with_capacity(rows.len());
    for (cells, thr) in rows {
        verdicts.push(cells.iter().map(|c| c.verdict).collect());
        end_slopes.push(cells.iter().map(|c| c.end_slope).collect());
        thresholds.push(thr);
    }
    Ok(PhaseDiagram {
        p_grid: p_grid.to_vec(),
        lambda_grid: lambda_grid.to_vec(),
        verdicts,
        end_slopes,
        thresholds,
    })
}
