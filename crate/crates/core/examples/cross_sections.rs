//! First nontrivial Neumann eigenvalue of the catalogued cross-sections.

use lane_emden_lab::cross_sections::{bessel_j1prime_root, CrossSection};

fn main() -> lane_emden_lab::Result<()> {
    println!("j'_(1,1) = {:.10}", bessel_j1prime_root()?);
    for text in ["interval:1", "interval:2", "rectangle:1,2", "disk:1", "disk:0.5", "custom:4.2"] {
        let section: CrossSection = text.parse()?;
        println!("{text:<14} lambda_1 = {:.8}", section.lambda1()?);
    }
    Ok(())
}
