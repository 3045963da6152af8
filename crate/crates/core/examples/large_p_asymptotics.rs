//! Convergence towards the p -> infinity limits.

use lane_emden_lab::asymptotics::{limit_w, ratio_pp1_closed_form, report_large_p};
use lane_emden_lab::Exponent;

fn main() -> lane_emden_lab::Result<()> {
    let ps = [20.0, 50.0, 100.0, 200.0];
    let report = report_large_p(&ps)?;
    print!("{:<20}", "p");
    ps.iter().for_each(|p| print!("{p:>14}"));
    println!("{:>10}", "rate");
    for m in &report.metrics {
        print!("{:<20}", m.name);
        m.values.iter().for_each(|v| print!("{v:>14.6}"));
        println!("{:>10}", m.rate.map(|r| format!("{:.3}", r.slope)).unwrap_or_default());
    }
    for p in [300.0, 1000.0, 10000.0] {
        println!("2 a^(p+1)/p at p = {p}: {:.6}", ratio_pp1_closed_form(Exponent::new(p)?)?);
    }
    println!("W(1) = {:.6}, W(5) = {:.6}", limit_w(1.0).0, limit_w(5.0).0);
    Ok(())
}
