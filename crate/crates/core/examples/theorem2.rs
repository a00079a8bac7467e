//! Second subordination theorem: a log-derivative premise gives W^eta ≺ q.

use num_complex::Complex64;
use pvalent::harness::batch::{run_batch, BatchConfig, DrawSpec, TheoremKind};
use pvalent::harness::{
    generate_theorem2_instance, run_theorem, BracketParams, HarnessConfig, Theorem2Params,
    TheoremParams,
};
use pvalent::subordination::SchwarzFn;
use pvalent::{MoebiusQ, OperatorParams, QFunction};

fn main() -> pvalent::Result<()> {
    let c = |re, im| Complex64::new(re, im);
    let op = OperatorParams::new(2, 0, 1.0, 1.0, 0.7, c(3.0, 0.0), c(4.2, 0.0))?;
    let bracket = BracketParams::new(op, c(1.3, -0.2), c(0.6, 0.0), c(1.0, 0.5))?;
    let tp = Theorem2Params::new(bracket, QFunction::Moebius(MoebiusQ::new(1.0, -0.4)?))?;

    let omega = SchwarzFn::rotation_power(0.5, 2)?;
    let inst = generate_theorem2_instance(&tp, &omega, 256)?;
    println!("generated f with K = {}; z P'/P reproduces the target to {:.1e}",
        inst.f.order(), inst.forward_residual_log()?);

    let r = run_theorem(0, &TheoremParams::T2(tp), &omega, &HarnessConfig::default());
    println!("verdict {:?}, conclusion margin {:.4}", r.report.verdict, r.report.conclusion_margin.unwrap_or(f64::NAN));

    // a small seeded batch
    let reports = run_batch(&DrawSpec::new(TheoremKind::T2), &BatchConfig { trials: 4, ..BatchConfig::default() });
    for rep in reports {
        println!("  #{} {:?} margin {:.3e}", rep.id, rep.verdict, rep.conclusion_margin.unwrap_or(f64::NAN));
    }
    Ok(())
}
