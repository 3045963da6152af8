//! Convergence towards the p -> 1 limits: u/a -> cos(pi t/2), p u^{p-1} -> pi^2/4.

use lane_emden_lab::asymptotics::{c_tilde, report_near_one, slope_estimate, C_TILDE_EXACT, NU1};
use lane_emden_lab::Exponent;

fn main() -> lane_emden_lab::Result<()> {
    let ps = [1.2, 1.1, 1.05, 1.01, 1.005];
    let report = report_near_one(&ps)?;
    for m in &report.metrics {
        print!("{:<12}", m.name);
        m.values.iter().for_each(|v| print!("{v:>13.6e}"));
        println!();
    }
    let c = c_tilde()?;
    println!("c~ by quadrature {c:.12}, ln 2 - 1/2 = {C_TILDE_EXACT:.12}");
    println!("(a^(p-1) - pi^2/4)/(p-1) at p = 1.001: {:.6}, pi^2/4 c~ = {:.6}", slope_estimate(Exponent::new(1.001)?)?, NU1 * c);
    Ok(())
}
