//! Solve -u'' = u^p on (-1, 1) and compare with the closed-form sup-norm.
//!
//! cargo run --example solve_profile -- 3

use lane_emden_lab::lane_emden::{integral_identities, solve_unit, sup_norm_closed_form};
use lane_emden_lab::Exponent;

fn main() -> lane_emden_lab::Result<()> {
    let p: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3.0);
    let p = Exponent::new(p)?;
    let sol = solve_unit(p, 1025)?;
    let closed = sup_norm_closed_form(p)?;

    println!("p = {p}  ({:?})", sol.mode());
    println!("u(0) shooting    = {:.15}", sol.sup_norm());
    println!("u(0) closed form = {:.15}", closed.value());
    println!("u(0)^(p-1)       = {:.12}  (>= pi^2/4 = {:.12})", sol.sup_norm_power(), std::f64::consts::PI.powi(2) / 4.0);
    println!("u'(1)            = {:.12}", sol.boundary_slope());

    let inv = sol.invariants();
    println!("energy residual {:.2e}, boundary residual {:.2e}", inv.energy_residual, inv.boundary_residual);
    let id = integral_identities(&sol);
    println!("int u'^2 = {:.12}, int u^(p+1) = {:.12}", id.grad_sq, id.power_integral);

    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let (u, du) = sol.evaluate(t)?;
        println!("  t = {t:<5} u = {u:>18.12}  u' = {du:>18.12}");
    }
    Ok(())
}
