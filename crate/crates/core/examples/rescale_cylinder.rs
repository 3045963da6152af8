//! The solution on (-L, L) is u_L(y) = L^{-2/(p-1)} u(y/L).

use lane_emden_lab::lane_emden::{rescale_to_length, solve_unit};
use lane_emden_lab::Exponent;

fn main() -> lane_emden_lab::Result<()> {
    let sol = solve_unit(Exponent::new(3.0)?, 513)?;
    for length in [0.5, 1.0, 2.0, 4.0] {
        let r = rescale_to_length(&sol, length)?;
        let (mid, _) = r.evaluate(0.5 * length)?;
        println!(
            "L = {length:<4} sup u_L = {:>12.8}  u_L'(L) = {:>12.8}  u_L(L/2) = {mid:>12.8}",
            r.sup_norm(),
            r.boundary_slope()
        );
    }
    Ok(())
}
