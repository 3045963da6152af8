use serde::{Deserialize, Serialize};

use crate::ode::Tolerance;
use crate::quadrature::QuadOptions;

/// Numerical knobs shared by every solver. `Settings::default()` reproduces
/// the documented defaults; the CLI overlays config-file and flag values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    /// Absolute local error tolerance of the Runge-Kutta integrations.
    pub ivp_abs: f64,
    /// Relative local error tolerance of the Runge-Kutta integrations.
    pub ivp_rel: f64,
    /// Relative tolerance of the adaptive quadratures.
    pub quad_rel: f64,
    /// Absolute width at which eigenvalue bisections stop (scaled by
    /// `max(1, |alpha|)`).
    pub eig_tol: f64,
    /// Allowed finite-difference / Pruefer disagreement, relative to
    /// `max(1, |alpha|)`.
    pub method_agreement: f64,
    /// Half-width of the marginal band, relative to `|u'(1)|`.
    pub marginal_band: f64,
    /// Threshold below which an eigenvalue counts as zero.
    pub zero_tol: f64,
    /// Sample count of Lane-Emden profiles on [0, 1].
    pub solution_nodes: usize,
    /// Node count of the finite-difference grid on [-1, 1].
    pub fd_nodes: usize,
    /// Half-width of the window used to compare against the Liouville profile.
    pub peak_window: f64,
    /// Samples of rescaled peak profiles.
    pub peak_samples: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            ivp_abs: 1e-12,
            ivp_rel: 1e-10,
            quad_rel: 1e-14,
            eig_tol: 1e-10,
            method_agreement: 1e-6,
            marginal_band: 1e-8,
            zero_tol: 1e-6,
            solution_nodes: 1025,
            fd_nodes: 4097,
            peak_window: 5.0,
            peak_samples: 401,
        }
    }
}

/// Smallest admissible Lane-Emden sample count.
pub const MIN_SOLUTION_NODES: usize = 33;
/// Smallest admissible finite-difference grid.
pub const MIN_FD_NODES: usize = 257;

impl Settings {
    pub fn ivp_tolerance(&self) -> Tolerance {
        Tolerance {
            abs: self.ivp_abs,
            rel: self.ivp_rel,
        }
    }

    pub fn quad_options(&self) -> QuadOptions {
        QuadOptions::with_tolerances(self.quad_rel * 1e-2, self.quad_rel)
    }

    /// Check the documented invariants: positive tolerances and grids at or
    /// above their minima.
    pub fn validate(&self) -> Result<(), String> {
        let tols = [
            ("ivp_abs", self.ivp_abs),
            ("ivp_rel", self.ivp_rel),
            ("quad_rel", self.quad_rel),
            ("eig_tol", self.eig_tol),
            ("method_agreement", self.method_agreement),
            ("marginal_band", self.marginal_band),
            ("zero_tol", self.zero_tol),
            ("peak_window", self.peak_window),
        ];
        for (name, v) in tols {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if self.solution_nodes < MIN_SOLUTION_NODES {
            return Err(format!(
                "solution_nodes must be >= {MIN_SOLUTION_NODES}, got {}",
                self.solution_nodes
            ));
        }
        if self.fd_nodes < MIN_FD_NODES {
            return Err(format!(
                "fd_nodes must be >= {MIN_FD_NODES}, got {}",
                self.fd_nodes
            ));
        }
        if self.peak_samples < 3 {
            return Err("peak_samples must be >= 3".into());
        }
        Ok(())
    }
}
