//! Third subordination theorem, with the Omega identity residual.

use num_complex::Complex64;
use pvalent::harness::{run_theorem, BracketParams, HarnessConfig, Theorem3Params, TheoremParams};
use pvalent::subordination::SchwarzFn;
use pvalent::{MoebiusQ, OperatorParams, QFunction};

fn main() -> pvalent::Result<()> {
    let c = |re, im| Complex64::new(re, im);
    let cfg = HarnessConfig::default();
    let op = OperatorParams::new(1, 2, 0.9, 1.4, 1.2, c(2.8, 0.0), c(3.5, 0.0))?;
    let b = -0.5;
    let q = QFunction::Moebius(MoebiusQ::new(0.9, b)?);

    for (tau, kappa) in [(c(1.0, 0.0), c(0.0, 0.0)), (c(0.5, 0.5), c(1.0, -0.2))] {
        let bracket = BracketParams::new(op, c(0.8, 0.3), tau, kappa)?;
        // the smallest zeta the hypothesis admits for this q
        let zeta = c((b.abs() - 1.0) / (b.abs() + 1.0), 0.0);
        let tp = Theorem3Params::new(bracket, zeta, q.clone())?;
        for omega in [SchwarzFn::blaschke_scaled(c(-0.4, 0.2))?, SchwarzFn::identity()] {
            let r = run_theorem(0, &TheoremParams::T3(tp.clone()), &omega, &cfg);
            println!(
                "tau = {tau}, kappa = {kappa}, {}: {:?}, margin {:.3e}, Omega residual {:.1e}",
                omega.label(),
                r.report.verdict,
                r.report.conclusion_margin.unwrap_or(f64::NAN),
                r.report.identity_residual.unwrap_or(f64::NAN),
            );
        }
    }
    Ok(())
}
