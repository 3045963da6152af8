//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, and
//! eigenvectors by inverse iteration.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: `diag[0..n]`, `off[0..n-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length must be n - 1");
        SymTridiag { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (negative LDLᵀ pivots).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let guard = f64::MIN_POSITIVE.sqrt() * (1.0 + self.off[i - 1].abs());
            let q_safe = if q.abs() < guard {
                if q < 0.0 {
                    -guard
                } else {
                    guard
                }
            } else {
                q
            };
            q = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / q_safe;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based), bisected until the bracket
    /// is narrower than `tol`.
    pub fn eigenvalue(&self, k: usize, tol: f64) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::domain(format!(
                "eigenvalue index {k} out of range for dimension {}",
                self.len()
            )));
        }
        let (g_lo, g_hi) = self.gershgorin();
        let pad = 1.0 + 1e-12 * (g_lo.abs() + g_hi.abs());
        let (mut lo, mut hi) = (g_lo - pad, g_hi + pad);
        if self.count_below(lo) > k || self.count_below(hi) <= k {
            return Err(Error::RootSearch(format!(
                "Sturm bracket [{lo}, {hi}] does not isolate eigenvalue {k}"
            )));
        }
        for _ in 0..300 {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Solve `(A - shift) x = rhs` by the Thomas algorithm with tiny-pivot
    /// replacement (acceptable for inverse iteration).
    fn shifted_solve(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let tiny = 1e-300;
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut piv = self.diag[0] - shift;
        if piv.abs() < tiny {
            piv = tiny;
        }
        if n > 1 {
            c[0] = self.off[0] / piv;
        }
        d[0] = rhs[0] / piv;
        for i in 1..n {
            let mut piv = self.diag[i] - shift - self.off[i - 1] * c[i - 1];
            if piv.abs() < tiny {
                piv = tiny;
            }
            if i + 1 < n {
                c[i] = self.off[i] / piv;
            }
            d[i] = (rhs[i] - self.off[i - 1] * d[i - 1]) / piv;
        }
        let mut x = d;
        for i in (0..n - 1).rev() {
            x[i] -= c[i] * x[i + 1];
        }
        x
    }

    /// Eigenvector for an (accurately known) eigenvalue, sup-norm 1.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.len();
        let scale = self.gershgorin().1.abs().max(1.0);
        let shift = eigenvalue + 1e-13 * scale;
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64 / 13.0).collect();
        for _ in 0..4 {
            x = self.shifted_solve(shift, &x);
            let norm = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            x.iter_mut().for_each(|v| *v /= norm);
        }
        x
    }

    /// `‖(A - λ) x‖∞`.
    pub fn residual(&self, eigenvalue: f64, x: &[f64]) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut r = (self.diag[i] - eigenvalue) * x[i];
                if i > 0 {
                    r += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    r += self.off[i] * x[i + 1];
                }
                r.abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiag {
        SymTridiag::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        let n = 50;
        let m = laplacian(n);
        for k in 0..5 {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            let got = m.eigenvalue(k, 1e-14).unwrap();
            assert!((got - exact).abs() < 1e-13, "{k}: {got} vs {exact}");
        }
    }

    #[test]
    fn sturm_count_brackets() {
        let m = laplacian(10);
        assert_eq!(m.count_below(0.0), 0);
        assert_eq!(m.count_below(4.0), 10);
    }

    #[test]
    fn eigenvector_residual_small() {
        let m = laplacian(64);
        let lam = m.eigenvalue(0, 1e-15).unwrap();
        let x = m.eigenvector(lam);
        assert!(m.residual(lam, &x) < 1e-12);
        assert!(x.iter().all(|v| *v > 0.0) || x.iter().all(|v| *v < 0.0));
    }

    #[test]
    fn out_of_range_index() {
        assert!(laplacian(4).eigenvalue(4, 1e-10).is_err());
    }
}
