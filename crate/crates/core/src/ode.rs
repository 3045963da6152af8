//! Dormand-Prince 5(4) embedded Runge-Kutta integrator for small fixed-size
//! systems.
//!
//! The integrator is deliberately minimal: it advances a state to an exact
//! target time (so callers can land on sample grids) and can locate the first
//! downward zero crossing of a scalar event function.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth minus embedded fourth order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Absolute and relative local error tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-12,
            rel: 1e-10,
        }
    }
}

/// Adaptive DOPRI5 stepper.
#[derive(Debug, Clone, Copy)]
pub struct DormandPrince {
    pub tol: Tolerance,
    pub max_steps: usize,
    pub h_min: f64,
}

impl DormandPrince {
    pub fn new(tol: Tolerance) -> Self {
        DormandPrince {
            tol,
            max_steps: 1_000_000,
            h_min: 1e-14,
        }
    }

    /// One explicit step; returns the fifth-order solution and the
    /// componentwise local error estimate.
    pub fn step<const N: usize, F>(&self, f: &F, t: f64, y: &[f64; N], h: f64) -> ([f64; N], [f64; N])
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
    {
        let comb = |terms: &[(f64, &[f64; N])]| {
            let mut out = *y;
            for (c, k) in terms {
                for i in 0..N {
                    out[i] += h * c * k[i];
                }
            }
            out
        };
        let k1 = f(t, y);
        let k2 = f(t + C2 * h, &comb(&[(A21, &k1)]));
        let k3 = f(t + C3 * h, &comb(&[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C4 * h, &comb(&[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + C5 * h,
            &comb(&[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &comb(&[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y_new = comb(&[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(t + h, &y_new);
        let mut err = [0.0; N];
        for i in 0..N {
            err[i] = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        (y_new, err)
    }

    fn error_norm<const N: usize>(&self, y: &[f64; N], y_new: &[f64; N], err: &[f64; N]) -> f64 {
        let mut acc = 0.0;
        for i in 0..N {
            let scale = self.tol.abs + self.tol.rel * y[i].abs().max(y_new[i].abs());
            let r = err[i] / scale;
            acc += r * r;
        }
        (acc / N as f64).sqrt()
    }

    fn next_step(err: f64, h: f64) -> f64 {
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h * factor
    }

    /// Advance from `t` to exactly `t_end`, starting with trial step `h`.
    /// Returns the state at `t_end` and a suggested next step size.
    pub fn advance<const N: usize, F>(
        &self,
        f: &F,
        mut t: f64,
        mut y: [f64; N],
        t_end: f64,
        mut h: f64,
    ) -> Result<([f64; N], f64)>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
    {
        let span = t_end - t;
        if span <= 0.0 {
            return Ok((y, h));
        }
        h = h.abs().min(span).max(self.h_min);
        let mut steps = 0usize;
        let mut last_accepted = h;
        while t < t_end {
            steps += 1;
            if steps > self.max_steps {
                return Err(Error::StepBudget { t });
            }
            let remaining = t_end - t;
            let landing = h >= remaining;
            let h_try = if landing { remaining } else { h };
            let (y_new, err) = self.step(f, t, &y, h_try);
            let norm = self.error_norm(&y, &y_new, &err);
            if norm.is_finite() && norm <= 1.0 {
                t = if landing { t_end } else { t + h_try };
                y = y_new;
                last_accepted = h_try;
                h = Self::next_step(norm, h_try);
            } else {
                h = if norm.is_finite() {
                    Self::next_step(norm, h_try).min(0.5 * h_try)
                } else {
                    0.25 * h_try
                };
                if h < self.h_min * t.abs().max(1.0) {
                    return Err(Error::StepUnderflow { t });
                }
            }
        }
        Ok((y, h.max(last_accepted)))
    }

    /// Integrate from `t` until `event(y)` first becomes non-positive and
    /// return the located crossing `(t*, y(t*))`. `event` must be positive at
    /// the initial state. Fails if `t_max` is reached first.
    pub fn until_zero<const N: usize, F, G>(
        &self,
        f: &F,
        mut t: f64,
        mut y: [f64; N],
        event: G,
        t_max: f64,
        mut h: f64,
    ) -> Result<(f64, [f64; N])>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
        G: Fn(&[f64; N]) -> f64,
    {
        if event(&y) <= 0.0 {
            return Err(Error::domain("event function must start positive"));
        }
        let mut steps = 0usize;
        while t < t_max {
            steps += 1;
            if steps > self.max_steps {
                return Err(Error::StepBudget { t });
            }
            let h_try = h.min(t_max - t);
            let (y_new, err) = self.step(f, t, &y, h_try);
            let norm = self.error_norm(&y, &y_new, &err);
            if !(norm.is_finite() && norm <= 1.0) {
                h = if norm.is_finite() {
                    Self::next_step(norm, h_try).min(0.5 * h_try)
                } else {
                    0.25 * h_try
                };
                if h < self.h_min * t.abs().max(1.0) {
                    return Err(Error::StepUnderflow { t });
                }
                continue;
            }
            if event(&y_new) > 0.0 {
                t += h_try;
                y = y_new;
                h = Self::next_step(norm, h_try);
                continue;
            }
            // Crossing inside (t, t + h_try]: solve event(step(t, y, s)) = 0
            // for the partial step s by Illinois regula falsi.
            let g = |s: f64| event(&self.step(f, t, &y, s).0);
            let (mut lo, mut hi) = (0.0, h_try);
            let (mut g_lo, mut g_hi) = (event(&y), event(&y_new));
            let mut side = 0i8;
            for _ in 0..200 {
                let s = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
                let s = if s > lo && s < hi { s } else { 0.5 * (lo + hi) };
                let gs = g(s);
                if gs > 0.0 {
                    lo = s;
                    g_lo = gs;
                    if side == 1 {
                        g_hi *= 0.5;
                    }
                    side = 1;
                } else {
                    hi = s;
                    g_hi = gs;
                    if side == -1 {
                        g_lo *= 0.5;
                    }
                    side = -1;
                }
                if hi - lo <= 4.0 * f64::EPSILON * (t + hi).abs() || gs == 0.0 {
                    break;
                }
            }
            let s = if g_lo.abs() < g_hi.abs() { lo } else { hi };
            return Ok((t + s, self.step(f, t, &y, s).0));
        }
        Err(Error::RootSearch(format!(
            "no event crossing before t = {t_max}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oscillator(_t: f64, y: &[f64; 2]) -> [f64; 2] {
        [y[1], -y[0]]
    }

    #[test]
    fn harmonic_oscillator_lands_on_target() {
        let dp = DormandPrince::new(Tolerance {
            abs: 1e-13,
            rel: 1e-13,
        });
        let (y, _) = dp.advance(&oscillator, 0.0, [1.0, 0.0], 2.0, 0.1).unwrap();
        assert!((y[0] - 2.0f64.cos()).abs() < 1e-11);
        assert!((y[1] + 2.0f64.sin()).abs() < 1e-11);
    }

    #[test]
    fn locates_first_zero_of_cosine() {
        let dp = DormandPrince::new(Tolerance {
            abs: 1e-14,
            rel: 1e-13,
        });
        let (t, y) = dp
            .until_zero(&oscillator, 0.0, [1.0, 0.0], |y| y[0], 10.0, 0.1)
            .unwrap();
        assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-12, "{t}");
        assert!(y[0].abs() < 1e-12);
    }

    #[test]
    fn missing_event_is_reported() {
        let dp = DormandPrince::new(Tolerance::default());
        let res = dp.until_zero(&|_t, _y: &[f64; 1]| [1.0], 0.0, [1.0], |y| y[0], 1.0, 0.1);
        assert!(matches!(res, Err(Error::RootSearch(_))));
    }

    #[test]
    fn blowup_underflows() {
        let dp = DormandPrince::new(Tolerance::default());
        // y' = y^2, y(0) = 1 blows up at t = 1.
        let res = dp.advance(&|_t, y: &[f64; 1]| [y[0] * y[0]], 0.0, [1.0], 2.0, 0.1);
        assert!(res.is_err());
    }
}
