//! First subordination theorem on one constructed instance per branch.

use num_complex::Complex64;
use pvalent::harness::{
    run_theorem, Branch, HarnessConfig, Theorem1Params, TheoremParams,
};
use pvalent::subordination::SchwarzFn;
use pvalent::{MoebiusQ, OperatorParams, QFunction};

fn main() -> pvalent::Result<()> {
    let cfg = HarnessConfig::default();
    let op = OperatorParams::new(1, 1, 1.2, 0.8, 1.0, Complex64::new(3.0, 0.0), Complex64::new(5.5, 0.0))?;
    let q = QFunction::Moebius(MoebiusQ::new(0.8, -0.6)?);
    let xi = Complex64::new(1.5, 0.4);

    for (id, branch) in Branch::ALL.into_iter().enumerate() {
        let tp = Theorem1Params::new(op, xi, branch, q.clone())?;
        for omega in [SchwarzFn::scaled_identity(0.7)?, SchwarzFn::identity()] {
            let r = run_theorem(id, &TheoremParams::T1(tp.clone()), &omega, &cfg);
            println!(
                "branch {} gamma = {:.4}, {}: {:?}, conclusion margin {:.3e}",
                branch.name(),
                tp.gamma(),
                omega.label(),
                r.report.verdict,
                r.report.conclusion_margin.unwrap_or(f64::NAN),
            );
        }
    }
    Ok(())
}
