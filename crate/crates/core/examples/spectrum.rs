//! Dirichlet eigenvalues of -d²/dt² - p u^{p-1} on (-1, 1), by finite
//! differences and by Pruefer shooting.

use std::sync::Arc;

use lane_emden_lab::lane_emden::solve_unit;
use lane_emden_lab::spectral::{alpha1_at_length, dirichlet_eigs, nondegeneracy_report, prufer_eig_oracle, Potential};
use lane_emden_lab::Exponent;

fn main() -> lane_emden_lab::Result<()> {
    let p = Exponent::new(2.0)?;
    let q = Potential::lane_emden(Arc::new(solve_unit(p, 1025)?));
    let eigs = dirichlet_eigs(&q, 5, 4097)?;
    println!(" k  finite differences     Pruefer               sign changes");
    for e in &eigs {
        let pr = prufer_eig_oracle(&q, e.index)?;
        println!("{:>2}  {:>20.12}  {:>20.12}  {}", e.index, e.eigenvalue, pr, e.sign_changes());
    }

    println!("\nalpha_1 on a half-cylinder of length L (z'(0) = z(L) = 0):");
    for length in [0.5, 1.0, 2.0] {
        println!("  L = {length:<4} {:.10}", alpha1_at_length(p, length)?);
    }

    let r = nondegeneracy_report(p, 1.0, std::f64::consts::PI.powi(2))?;
    println!("\nnondegeneracy in (0, 1) x interval(1): margin {:.6}, zero gap {:.6}, nondegenerate {}", r.margin, r.zero_gap, r.nondegenerate);
    Ok(())
}
