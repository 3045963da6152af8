use crate::error::{Error, Result};

/// Final bracket of a bisection search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Bisect a sign change of `f` on `[lo, hi]` until the bracket is narrower
/// than `tol`. The endpoint values must have opposite signs (a zero at an
/// endpoint is accepted). Errors from `f` abort the search.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Result<Bracket>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(Bracket { lo, hi: lo });
    }
    if f_hi == 0.0 {
        return Ok(Bracket { lo: hi, hi });
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::RootSearch(format!(
            "no sign change on [{lo}, {hi}] (f = {f_lo}, {f_hi})"
        )));
    }
    for _ in 0..max_iter {
        if hi - lo <= tol {
            return Ok(Bracket { lo, hi });
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(Bracket { lo, hi });
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(Bracket { lo: mid, hi: mid });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= tol {
        Ok(Bracket { lo, hi })
    } else {
        Err(Error::RootSearch(format!(
            "bisection budget exhausted with bracket [{lo}, {hi}]"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let b = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-12, 200).unwrap();
        assert!((b.mid() - 2f64.sqrt()).abs() < 1e-12);
        assert!(b.width() <= 1e-12);
    }

    #[test]
    fn same_sign_is_an_error() {
        assert!(bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12, 100).is_err());
    }
}
