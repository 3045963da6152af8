//! Positive solutions of `-u'' = u^p` on `(-1, 1)` with zero boundary values,
//! the spectrum of their linearization, and the stability criterion for the
//! corresponding one-dimensional solution in a cylinder `(0, L) × ω`.

pub mod asymptotics;
pub mod cli;
pub mod config;
pub mod cross_sections;
pub mod error;
pub mod lane_emden;
pub mod ode;
pub mod quadrature;
pub mod roots;
pub mod selfcheck;
pub mod settings;
pub mod spectral;
pub mod stability;

pub use cross_sections::CrossSection;
pub use error::{Error, Result};
pub use lane_emden::{Exponent, LaneEmdenSolution};
pub use settings::Settings;
pub use stability::{StabilityVerdict, Verdict};
