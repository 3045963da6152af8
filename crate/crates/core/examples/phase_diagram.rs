//! Verdict map over (p, lambda), printed as a character grid.

use lane_emden_lab::stability::phase_diagram;
use lane_emden_lab::Verdict;

fn main() -> lane_emden_lab::Result<()> {
    let ps: Vec<f64> = (0..10).map(|i| 1.02 + 0.1 * i as f64).collect();
    let lambdas: Vec<f64> = (0..41).map(|j| 0.25 * j as f64).collect();
    let d = phase_diagram(&ps, &lambdas)?;
    println!("lambda from {} to {}; S stable, u unstable, = marginal, . inapplicable", lambdas[0], lambdas[40]);
    for (i, p) in d.p_grid.iter().enumerate() {
        let row: String = d.verdicts[i]
            .iter()
            .map(|v| match v {
                Verdict::Stable => 'S',
                Verdict::Unstable => 'u',
                Verdict::Marginal => '=',
                Verdict::CriterionInapplicable => '.',
            })
            .collect();
        let thr = d.thresholds[i].map(|t| format!("{t:.4}")).unwrap_or_default();
        println!("p = {p:.2}  {row}  {thr}");
    }
    Ok(())
}
