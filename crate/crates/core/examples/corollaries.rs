//! Runs every corollary preset on a few seeded instances.

use pvalent::harness::batch::BatchConfig;
use pvalent::harness::corollary::corollary_presets;

fn main() {
    let cfg = BatchConfig { trials: 3, ..BatchConfig::default() };
    for cor in corollary_presets() {
        let reports = cor.run_reports(&cfg);
        let verdicts: Vec<String> = reports.iter().map(|r| format!("{:?}", r.verdict)).collect();
        let reduction = reports
            .iter()
            .filter_map(|r| r.reduction_residual)
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
        print!("{:<6} {}", cor.name, verdicts.join(" "));
        if let Some(r) = reduction {
            print!("  closed-form residual {r:.1e}");
        }
        println!();
    }
}
