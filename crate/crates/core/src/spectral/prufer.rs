//! Pruefer-phase shooting for Dirichlet eigenvalues of `-w'' - q w = α w`
//! on `(-1, 1)`.
//!
//! With `w = r sin θ`, `w' = r cos θ` the phase obeys
//! `θ' = cos²θ + (α + q) sin²θ`, `θ(-1) = 0`. The terminal phase `θ(1; α)`
//! is strictly increasing in `α` and equals `kπ` exactly at `α_k`.

use std::f64::consts::PI;

use super::Potential;
use crate::error::{Error, Result};
use crate::ode::{DormandPrince, Tolerance};
use crate::roots::bisect;
use crate::settings::Settings;

/// Terminal Pruefer phase `θ(1)` for trial eigenvalue `alpha`.
pub fn terminal_phase(q: &Potential, alpha: f64, tol: Tolerance) -> Result<f64> {
    let dp = DormandPrince::new(tol);
    let rhs = |t: f64, y: &[f64; 1]| {
        let (s, c) = y[0].sin_cos();
        // t stays inside [-1, 1] because every segment lands on its endpoint.
        let qt = q.value(t.clamp(-1.0, 1.0)).unwrap_or(0.0);
        [c * c + (alpha + qt) * s * s]
    };
    let breaks = q.breakpoints();
    let mut y = [0.0];
    let mut h = 1e-3;
    for w in breaks.windows(2) {
        let (y_new, h_next) = dp.advance(&rhs, w[0], y, w[1], h)?;
        y = y_new;
        h = h_next;
    }
    Ok(y[0])
}

/// `k`-th Dirichlet eigenvalue (`k >= 1`) by bisection on the terminal phase.
pub fn prufer_eig_oracle(q: &Potential, k: usize) -> Result<f64> {
    prufer_eig_with(q, k, &Settings::default())
}

pub fn prufer_eig_with(q: &Potential, k: usize, settings: &Settings) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("eigenvalue index starts at 1"));
    }
    let (q_min, q_max) = q.bounds();
    let free = (k as f64 * PI / 2.0).powi(2);
    // Min-max comparison with the free operator brackets the eigenvalue.
    let lo = free - q_max - 1.0;
    let hi = free - q_min + 1.0;
    let tol = Tolerance {
        abs: 1e-12,
        rel: 1e-12,
    };
    let target = k as f64 * PI;
    let scale = lo.abs().max(hi.abs()).max(1.0);
    let bracket = bisect(
        |alpha| terminal_phase(q, alpha, tol).map(|th| th - target),
        lo,
        hi,
        settings.eig_tol * scale,
        200,
    )
    .map_err(|e| Error::RootSearch(format!("Pruefer shooting for k = {k}: {e}")))?;
    Ok(bracket.mid())
}
