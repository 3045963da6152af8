//! Spectrum of the linearized operator `-d²/dt² - p u_p^{p-1}`.
//!
//! Eigenvalues come from two independent routes: second-order finite
//! differences with Sturm bisection and Richardson extrapolation, and Pruefer
//! phase shooting ([`prufer`]). The half-interval problem `z'(0) = z(L) = 0`
//! is handled through the even extension (authoritative) and cross-checked
//! with a ghost-node discretization on `(0, L)`.

pub mod prufer;
pub mod tridiag;

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lane_emden::{solve_unit_with, sup_norm_closed_form_with, Exponent, LaneEmdenSolution};
use crate::settings::{Settings, MIN_FD_NODES};
pub use prufer::{prufer_eig_oracle, prufer_eig_with};
use tridiag::SymTridiag;

#[derive(Debug, Clone)]
enum Source {
    Zero,
    LaneEmden(Arc<LaneEmdenSolution>),
}

/// Potential `q` of `-w'' - q w = α w` on `[-1, 1]`, plus a constant shift.
#[derive(Debug, Clone)]
pub struct Potential {
    source: Source,
    shift: f64,
}

impl Potential {
    pub fn zero() -> Self {
        Potential {
            source: Source::Zero,
            shift: 0.0,
        }
    }

    pub fn constant(c: f64) -> Self {
        Potential {
            source: Source::Zero,
            shift: c,
        }
    }

    /// `q(t) = p u_p(|t|)^{p-1}` from a sampled solution.
    pub fn lane_emden(sol: Arc<LaneEmdenSolution>) -> Self {
        Potential {
            source: Source::LaneEmden(sol),
            shift: 0.0,
        }
    }

    /// `q + c`.
    pub fn shifted(&self, c: f64) -> Self {
        Potential {
            source: self.source.clone(),
            shift: self.shift + c,
        }
    }

    pub fn exponent(&self) -> Option<Exponent> {
        self.solution().map(|s| s.p())
    }

    pub fn solution(&self) -> Option<&LaneEmdenSolution> {
        match &self.source {
            Source::LaneEmden(s) => Some(s),
            Source::Zero => None,
        }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&t) {
            return Err(Error::domain(format!("t = {t} outside [-1, 1]")));
        }
        let base = match &self.source {
            Source::Zero => 0.0,
            Source::LaneEmden(sol) => sol.potential_at(t)?,
        };
        Ok(base + self.shift)
    }

    /// Exact lower and upper bounds of `q` on `[-1, 1]`.
    pub fn bounds(&self) -> (f64, f64) {
        match &self.source {
            Source::Zero => (self.shift, self.shift),
            Source::LaneEmden(sol) => (
                self.shift,
                sol.p().get() * sol.sup_norm_power() + self.shift,
            ),
        }
    }

    /// Points where `q` may lose smoothness (sample nodes of the underlying
    /// solution, mirrored), always including `±1`.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.source {
            Source::Zero => vec![-1.0, 1.0],
            Source::LaneEmden(sol) => {
                let g = sol.grid();
                let mut pts: Vec<f64> = g.iter().rev().map(|t| -t).collect();
                pts.extend_from_slice(&g[1..]);
                pts
            }
        }
    }

    /// Values on the uniform grid of `n` nodes spanning `[-1, 1]`.
    pub fn samples(&self, n: usize) -> Result<Vec<f64>> {
        let cells = (n - 1) as f64;
        (0..n)
            .map(|i| self.value((-1.0 + 2.0 * i as f64 / cells).clamp(-1.0, 1.0)))
            .collect()
    }
}

/// Dirichlet eigenpair on `(-1, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    /// 1-based index.
    pub index: usize,
    /// Richardson-extrapolated eigenvalue.
    pub eigenvalue: f64,
    /// Eigenvalue of the coarse finite-difference matrix.
    pub grid_eigenvalue: f64,
    pub grid: Vec<f64>,
    /// Eigenfunction samples (including the zero boundary values), sup-norm 1.
    pub values: Vec<f64>,
    /// `‖(A_h - α_h) w‖∞` on the coarse grid.
    pub residual: f64,
}

impl EigenPair {
    /// Number of interior sign changes of the sampled eigenfunction.
    pub fn sign_changes(&self) -> usize {
        let n = self.values.len();
        self.values[1..n - 1]
            .windows(2)
            .filter(|w| w[0] * w[1] < 0.0)
            .count()
    }
}

fn dirichlet_matrix(q: &Potential, n: usize) -> Result<SymTridiag> {
    let h = 2.0 / (n - 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let qs = q.samples(n)?;
    let diag = qs[1..n - 1].iter().map(|qi| 2.0 * inv_h2 - qi).collect();
    Ok(SymTridiag::new(diag, vec![-inv_h2; n - 3]))
}

fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Largest `k_max` accepted for an `n`-node grid (at least four cells per
/// half wavelength).
pub fn resolvable_modes(n: usize) -> usize {
    (n - 1) / 4
}

/// First `k_max` Dirichlet eigenpairs, default settings.
pub fn dirichlet_eigs(q: &Potential, k_max: usize, n: usize) -> Result<Vec<EigenPair>> {
    dirichlet_eigs_with(q, k_max, n, &Settings::default())
}

/// First `k_max` Dirichlet eigenpairs from grids of `n` and `2n - 1` nodes.
pub fn dirichlet_eigs_with(
    q: &Potential,
    k_max: usize,
    n: usize,
    settings: &Settings,
) -> Result<Vec<EigenPair>> {
    if k_max == 0 {
        return Err(Error::domain("k_max must be at least 1"));
    }
    if n < MIN_FD_NODES {
        return Err(Error::domain(format!(
            "finite-difference grid needs at least {MIN_FD_NODES} nodes, got {n}"
        )));
    }
    if k_max > resolvable_modes(n) {
        return Err(Error::domain(format!(
            "k_max = {k_max} exceeds the {} modes resolvable with {n} nodes",
            resolvable_modes(n)
        )));
    }
    let coarse = dirichlet_matrix(q, n)?;
    let fine = dirichlet_matrix(q, 2 * n - 1)?;
    let h = 2.0 / (n - 1) as f64;
    let grid: Vec<f64> = (0..n).map(|i| -1.0 + i as f64 * h).collect();
    let mid = (n - 1) / 2;

    let mut pairs = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let (q_lo, q_hi) = q.bounds();
        let scale = q_lo.abs().max(q_hi.abs()).max(((k + 1) as f64 * PI / 2.0).powi(2)).max(1.0);
        let tol = settings.eig_tol * scale;
        let a_coarse = coarse.eigenvalue(k, tol)?;
        let a_fine = fine.eigenvalue(k, tol)?;
        let vec = coarse.eigenvector(a_coarse);
        let residual = coarse.residual(a_coarse, &vec);

        let mut values = Vec::with_capacity(n);
        values.push(0.0);
        values.extend_from_slice(&vec);
        values.push(0.0);
        // Sign convention: positive at t = 0, or rising through 0 for odd modes.
        let sup = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let at_center = values[mid];
        let flip = if at_center.abs() > 1e-8 * sup {
            at_center < 0.0
        } else {
            values[mid + 1] - values[mid - 1] < 0.0
        };
        let sign = if flip { -1.0 } else { 1.0 };
        values.iter_mut().for_each(|v| *v *= sign / sup);

        pairs.push(EigenPair {
            index: k + 1,
            eigenvalue: richardson(a_coarse, a_fine),
            grid_eigenvalue: a_coarse,
            grid: grid.clone(),
            values,
            residual,
        });
    }
    Ok(pairs)
}

/// Grid sizes resolving the peak of width `μ_p` (about 20 solution samples
/// and 60 finite-difference cells per `μ_p`), never below the configured
/// defaults. Sizes are of the form `2^k + 1`.
pub fn resolution_for(p: Exponent, settings: &Settings) -> Result<(usize, usize)> {
    let sup = sup_norm_closed_form_with(p, settings)?;
    let mu = (p.get() * sup.power).powf(-0.5);
    let pow2 = |cells: f64, floor: usize| -> usize {
        let mut n = 2usize;
        while ((n - 1) as f64) < cells {
            n = 2 * n - 1;
        }
        n.max(floor)
    };
    let sol_nodes = pow2(20.0 / mu, settings.solution_nodes);
    let fd_nodes = pow2(2.0 * 60.0 / mu, settings.fd_nodes);
    Ok((sol_nodes, fd_nodes))
}

/// First eigenvalue from both methods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alpha1 {
    /// Authoritative value (finite differences, extrapolated).
    pub value: f64,
    pub finite_difference: f64,
    pub prufer: f64,
}

/// `α₁` for an arbitrary potential, erroring when the two methods disagree by
/// more than `method_agreement · max(1, |α₁|)`.
pub fn alpha1_for(q: &Potential, fd_nodes: usize, settings: &Settings) -> Result<Alpha1> {
    let fd = dirichlet_eigs_with(q, 1, fd_nodes, settings)?[0].eigenvalue;
    let pr = prufer_eig_with(q, 1, settings)?;
    if (fd - pr).abs() > settings.method_agreement * fd.abs().max(1.0) {
        return Err(Error::MethodDisagreement { fd, prufer: pr });
    }
    Ok(Alpha1 {
        value: fd,
        finite_difference: fd,
        prufer: pr,
    })
}

/// Solve for `u_p` at a resolution adequate for spectral work.
pub fn resolved_solution(p: Exponent, settings: &Settings) -> Result<(Arc<LaneEmdenSolution>, usize)> {
    let (sol_nodes, fd_nodes) = resolution_for(p, settings)?;
    Ok((Arc::new(solve_unit_with(p, sol_nodes, settings)?), fd_nodes))
}

/// First Dirichlet eigenvalue `α₁(p)` of the linearized operator on `(-1, 1)`.
pub fn alpha1(p: Exponent) -> Result<f64> {
    alpha1_with(p, &Settings::default()).map(|a| a.value)
}

pub fn alpha1_with(p: Exponent, settings: &Settings) -> Result<Alpha1> {
    let (sol, fd_nodes) = resolved_solution(p, settings)?;
    alpha1_for(&Potential::lane_emden(sol), fd_nodes, settings)
}

/// Eigenvalues of `-z'' - q_L z = α z`, `z'(0) = z(L) = 0` on `(0, L)` with
/// `q_L(y) = L^{-2} q(y/L)`, discretized directly with a ghost node at `y = 0`
/// (`cells` and `2·cells` cells, Richardson-extrapolated).
pub fn mixed_eigs_direct(
    q: &Potential,
    length: f64,
    k_max: usize,
    cells: usize,
    settings: &Settings,
) -> Result<Vec<f64>> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::domain(format!("length must be positive, got {length}")));
    }
    if k_max == 0 || k_max > cells / 4 {
        return Err(Error::domain(format!("k_max = {k_max} not resolvable with {cells} cells")));
    }
    let build = |m: usize| -> Result<SymTridiag> {
        let h = length / m as f64;
        let inv_h2 = 1.0 / (h * h);
        let inv_l2 = 1.0 / (length * length);
        let diag = (0..m)
            .map(|j| Ok(2.0 * inv_h2 - inv_l2 * q.value(j as f64 / m as f64)?))
            .collect::<Result<Vec<_>>>()?;
        let mut off = vec![-inv_h2; m - 1];
        // Ghost node z_{-1} = z_1 makes row 0 carry -2/h²; symmetrized to -√2/h².
        off[0] = -std::f64::consts::SQRT_2 * inv_h2;
        Ok(SymTridiag::new(diag, off))
    };
    let coarse = build(cells)?;
    let fine = build(2 * cells)?;
    let (q_lo, q_hi) = q.bounds();
    let scale = (q_lo.abs().max(q_hi.abs()) / (length * length)).max(1.0);
    (0..k_max)
        .map(|k| {
            let tol = settings.eig_tol * scale.max(((2 * k + 1) as f64 * PI / (2.0 * length)).powi(2));
            Ok(richardson(coarse.eigenvalue(k, tol)?, fine.eigenvalue(k, tol)?))
        })
        .collect()
}

/// `α_{1,L}(p) = α₁(p)/L²`, cross-checked against the direct mixed solve.
pub fn alpha1_at_length(p: Exponent, length: f64) -> Result<f64> {
    alpha1_at_length_with(p, length, &Settings::default())
}

/// Relative tolerance of the direct mixed-boundary cross-check.
pub const MIXED_CROSSCHECK_TOL: f64 = 1e-5;

pub fn alpha1_at_length_with(p: Exponent, length: f64, settings: &Settings) -> Result<f64> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::domain(format!("length must be positive, got {length}")));
    }
    let (sol, fd_nodes) = resolved_solution(p, settings)?;
    let q = Potential::lane_emden(sol);
    let alpha = alpha1_for(&q, fd_nodes, settings)?.value;
    let scaled = alpha / (length * length);
    let direct = mixed_eigs_direct(&q, length, 1, (fd_nodes - 1) / 2, settings)?[0];
    if (direct - scaled).abs() > MIXED_CROSSCHECK_TOL * scaled.abs().max(1.0 / (length * length)) {
        return Err(Error::MethodDisagreement {
            fd: direct,
            prufer: scaled,
        });
    }
    Ok(scaled)
}

/// Nondegeneracy data of the one-dimensional solution in a cylinder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NondegeneracyReport {
    pub p: f64,
    pub length: f64,
    pub lambda1_omega: f64,
    /// `α_{1,L}(p)`.
    pub alpha1_length: f64,
    /// `λ₁(ω) + α_{1,L}(p)`.
    pub margin: f64,
    /// `min_k |α_{k,L}(p)|` over the first five half-interval eigenvalues.
    pub zero_gap: f64,
    /// The first five half-interval eigenvalues `α_{k,L}(p)`.
    pub half_interval_eigenvalues: Vec<f64>,
    /// Zero is not an eigenvalue of the half-interval problem.
    pub zero_free: bool,
    pub nondegenerate: bool,
}

pub fn nondegeneracy_report(p: Exponent, length: f64, lambda1_omega: f64) -> Result<NondegeneracyReport> {
    nondegeneracy_report_with(p, length, lambda1_omega, &Settings::default())
}

pub fn nondegeneracy_report_with(
    p: Exponent,
    length: f64,
    lambda1_omega: f64,
    settings: &Settings,
) -> Result<NondegeneracyReport> {
    if !(lambda1_omega.is_finite() && lambda1_omega > 0.0) {
        return Err(Error::domain(format!(
            "lambda1(omega) must be positive, got {lambda1_omega}"
        )));
    }
    let alpha1_length = alpha1_at_length_with(p, length, settings)?;
    let (sol, fd_nodes) = resolved_solution(p, settings)?;
    let q = Potential::lane_emden(sol);
    // Even Dirichlet modes on (-1, 1) are the half-interval modes: k = 1, 3, 5, ...
    let full = dirichlet_eigs_with(&q, 9, fd_nodes, settings)?;
    let inv_l2 = 1.0 / (length * length);
    let half_interval_eigenvalues: Vec<f64> =
        full.iter().step_by(2).map(|e| e.eigenvalue * inv_l2).collect();
    let zero_gap = half_interval_eigenvalues
        .iter()
        .fold(f64::INFINITY, |m, a| m.min(a.abs()));
    let margin = lambda1_omega + alpha1_length;
    let zero_free = zero_gap > settings.zero_tol;
    Ok(NondegeneracyReport {
        p: p.get(),
        length,
        lambda1_omega,
        alpha1_length,
        margin,
        zero_gap,
        half_interval_eigenvalues,
        zero_free,
        nondegenerate: zero_free && margin > 0.0,
    })
}
