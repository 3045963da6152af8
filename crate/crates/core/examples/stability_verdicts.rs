//! Classify cylinders (0, L) x omega for a few cross-sections.

use lane_emden_lab::stability::{cylinder_lambda, StabilityAnalyzer};
use lane_emden_lab::{CrossSection, Exponent};

fn main() -> lane_emden_lab::Result<()> {
    let sections = [
        CrossSection::Interval { length: 1.0 },
        CrossSection::Rectangle { a: 1.0, b: 2.0 },
        CrossSection::Disk { radius: 1.0 },
    ];
    for p in [1.01, 2.0, 10.0] {
        let an = StabilityAnalyzer::new(Exponent::new(p)?)?;
        println!("p = {p}  alpha_1 = {:.6}", an.alpha1());
        for section in &sections {
            for length in [0.25, 0.5, 1.0, 2.0] {
                let lambda = cylinder_lambda(length, section)?;
                let v = an.classify(lambda)?;
                let slope = v.end_slope.map(|s| format!("{s:+.6e}")).unwrap_or_else(|| "-".into());
                println!("  {section:<16} L = {length:<5} lambda = {lambda:>9.4}  {:<12} h'(1) = {slope}", v.verdict.to_string());
            }
        }
    }
    Ok(())
}
