//! First nontrivial Neumann eigenvalue `λ₁(ω)` for a small catalog of
//! cross-sections.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CrossSection {
    Interval { length: f64 },
    Rectangle { a: f64, b: f64 },
    Disk { radius: f64 },
    /// `λ₁(ω)` supplied directly. Smoothness of `ω` is the caller's business.
    Custom { lambda1: f64 },
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {x}")))
    }
}

impl CrossSection {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CrossSection::Interval { length } => positive("interval length", length),
            CrossSection::Rectangle { a, b } => {
                positive("rectangle side a", a)?;
                positive("rectangle side b", b)
            }
            CrossSection::Disk { radius } => positive("disk radius", radius),
            CrossSection::Custom { lambda1 } => positive("custom lambda1", lambda1),
        }
    }

    /// Dilation by `s`. A custom section cannot be dilated without knowing
    /// its shape, so it is rescaled through `λ₁/s²` directly.
    pub fn scaled(&self, s: f64) -> Result<CrossSection> {
        positive("dilation factor", s)?;
        Ok(match *self {
            CrossSection::Interval { length } => CrossSection::Interval { length: s * length },
            CrossSection::Rectangle { a, b } => CrossSection::Rectangle { a: s * a, b: s * b },
            CrossSection::Disk { radius } => CrossSection::Disk { radius: s * radius },
            CrossSection::Custom { lambda1 } => CrossSection::Custom {
                lambda1: lambda1 / (s * s),
            },
        })
    }

    pub fn lambda1(&self) -> Result<f64> {
        lambda1(self)
    }
}

/// `λ₁(ω)` with Neumann boundary conditions.
pub fn lambda1(section: &CrossSection) -> Result<f64> {
    section.validate()?;
    Ok(match *section {
        CrossSection::Interval { length } => (PI / length).powi(2),
        CrossSection::Rectangle { a, b } => (PI / a.max(b)).powi(2),
        CrossSection::Disk { radius } => (bessel_j1prime_root()? / radius).powi(2),
        CrossSection::Custom { lambda1 } => lambda1,
    })
}

impl fmt::Display for CrossSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CrossSection::Interval { length } => format!("interval:{length}"),
            CrossSection::Rectangle { a, b } => format!("rectangle:{a},{b}"),
            CrossSection::Disk { radius } => format!("disk:{radius}"),
            CrossSection::Custom { lambda1 } => format!("custom:{lambda1}"),
        };
        f.pad(&s)
    }
}

/// Parses `interval:A`, `rectangle:A,B`, `disk:R` and `custom:LAMBDA1`.
impl FromStr for CrossSection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::domain(format!("cross-section `{s}` is not of the form kind:args")))?;
        let nums = args
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::domain(format!("bad number `{x}` in cross-section `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(Error::domain(format!("`{kind}` takes {n} value(s), got {}", nums.len())))
            }
        };
        let section = match kind.trim().to_ascii_lowercase().as_str() {
            "interval" => {
                arity(1)?;
                CrossSection::Interval { length: nums[0] }
            }
            "rectangle" => {
                arity(2)?;
                CrossSection::Rectangle { a: nums[0], b: nums[1] }
            }
            "disk" => {
                arity(1)?;
                CrossSection::Disk { radius: nums[0] }
            }
            "custom" => {
                arity(1)?;
                CrossSection::Custom { lambda1: nums[0] }
            }
            other => return Err(Error::domain(format!("unknown cross-section kind `{other}`"))),
        };
        section.validate()?;
        Ok(section)
    }
}

/// Sums `Σ_m (-1)^m c_m (x/2)^{2m} / (m! (m+k)!)` until terms drop below 1e-16
/// relative to the running sum.
fn bessel_series(x: f64, k: u32, coeff: impl Fn(u32) -> f64) -> f64 {
    let y = 0.25 * x * x;
    let mut base = 1.0 / (1..=k).map(f64::from).product::<f64>();
    let mut sum = 0.0;
    for m in 0..200u32 {
        let term = coeff(m) * base;
        sum += term;
        if term.abs() < 1e-16 * sum.abs().max(1e-300) && m > 0 {
            break;
        }
        base *= -y / (f64::from(m + 1) * f64::from(m + 1 + k));
    }
    sum
}

pub fn bessel_j0(x: f64) -> f64 {
    bessel_series(x, 0, |_| 1.0)
}

pub fn bessel_j1(x: f64) -> f64 {
    0.5 * x * bessel_series(x, 1, |_| 1.0)
}

/// `J₁'(x)` by termwise differentiation of the series.
pub fn bessel_j1_prime(x: f64) -> f64 {
    0.5 * bessel_series(x, 1, |m| f64::from(2 * m + 1))
}

/// First positive root of `J₁'`, bisected on `[1, 3]` to a bracket of 1e-12.
pub fn bessel_j1prime_root() -> Result<f64> {
    bisect(|x| Ok(bessel_j1_prime(x)), 1.0, 3.0, 1e-12, 200)
        .map(|b| b.mid())
        .map_err(|e| Error::RootSearch(format!("J1' root: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_values() {
        let iv = lambda1(&CrossSection::Interval { length: 1.0 }).unwrap();
        assert!((iv - 9.8696).abs() < 1e-4);
        let r = lambda1(&CrossSection::Rectangle { a: 1.0, b: 2.0 }).unwrap();
        assert!((r - 2.4674).abs() < 1e-4);
        let d = lambda1(&CrossSection::Disk { radius: 1.0 }).unwrap();
        assert!((d - 3.38996).abs() < 1e-4, "{d}");
        assert_eq!(lambda1(&CrossSection::Custom { lambda1: 7.5 }).unwrap(), 7.5);
    }

    #[test]
    fn j1_prime_root() {
        let r = bessel_j1prime_root().unwrap();
        assert!((r - 1.841184).abs() < 1e-6, "{r}");
        assert!(bessel_j1_prime(r).abs() < 1e-10);
        assert!(bessel_j1_prime(1.0) * bessel_j1_prime(3.0) < 0.0);
        // J1' = J0 - J1/x
        for x in [0.5, 1.0, r, 2.5, 4.0] {
            let other = bessel_j0(x) - bessel_j1(x) / x;
            assert!((bessel_j1_prime(x) - other).abs() < 1e-14, "{x}");
        }
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(lambda1(&CrossSection::Interval { length: 0.0 }).is_err());
        assert!(lambda1(&CrossSection::Rectangle { a: 1.0, b: -2.0 }).is_err());
        assert!(lambda1(&CrossSection::Disk { radius: f64::NAN }).is_err());
        assert!(lambda1(&CrossSection::Custom { lambda1: 0.0 }).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["interval:1", "rectangle:1,2", "disk:0.5", "custom:9.87"] {
            let c: CrossSection = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("ellipse:1,2".parse::<CrossSection>().is_err());
        assert!("rectangle:1".parse::<CrossSection>().is_err());
        assert!("disk".parse::<CrossSection>().is_err());
    }

    #[test]
    fn square_matches_interval() {
        let a = 1.7;
        assert_eq!(
            lambda1(&CrossSection::Rectangle { a, b: a }).unwrap(),
            lambda1(&CrossSection::Interval { length: a }).unwrap()
        );
    }
}
