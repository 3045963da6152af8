//! Locate the lambda where h'(1) changes sign, for p close to 1 and p large.

use lane_emden_lab::stability::{StabilityAnalyzer, ThresholdResult};
use lane_emden_lab::Exponent;

fn main() -> lane_emden_lab::Result<()> {
    for p in [1.005, 1.01, 1.05, 1.2, 1.5, 2.0, 5.0, 50.0] {
        let an = StabilityAnalyzer::new(Exponent::new(p)?)?;
        match an.threshold()? {
            ThresholdResult::Found { lambda_star, bracket, below, .. } => println!(
                "p = {p:<6} lambda* = {lambda_star:.6}  (width {:.1e}, {below} below)",
                bracket[1] - bracket[0]
            ),
            ThresholdResult::NoThresholdFound { window, .. } => {
                println!("p = {p:<6} no sign change in [{:.4}, {:.4}]", window[0], window[1])
            }
        }
    }
    println!("pi^2/4 = {:.6}", std::f64::consts::PI.powi(2) / 4.0);
    Ok(())
}
