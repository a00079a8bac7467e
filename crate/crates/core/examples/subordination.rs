//! Checking F ≺ q by the Moebius inverse and by winding numbers.

use num_complex::Complex64;
use pvalent::subordination::{
    check_subordination, check_subordination_winding, SamplingGrid, SchwarzFn,
};
use pvalent::{MoebiusQ, QFunction, TaylorSeries};

fn main() -> pvalent::Result<()> {
    let k = 64;
    let grid = SamplingGrid::default();
    let q = QFunction::Moebius(MoebiusQ::new(1.0, -0.5)?);

    // q o w is subordinate to q for every Schwarz function w
    let omega = SchwarzFn::blaschke_scaled(Complex64::new(0.3, -0.2))?;
    let f = q.series(k).compose(&omega.series(k))?;
    let moebius = check_subordination(&f, &q, &grid)?;
    let winding = check_subordination_winding(&f, &q, &grid)?;
    println!("q o w: moebius {:?} (margin {:.4}), winding {:?} (margin {:.4})",
        moebius.outcome, moebius.margin, winding.outcome, winding.margin);

    // F = 1 + 1.1 z leaves the disk image of q = 1 + z
    let disk = QFunction::series_q(TaylorSeries::from_real(&[1.0, 1.0], k)?)?;
    let outside = TaylorSeries::from_real(&[1.0, 1.1], k)?;
    let v = check_subordination(&outside, &disk, &grid)?;
    println!("1 + 1.1z vs 1 + z: {:?}, margin {:.4} at {:.3}", v.outcome, v.margin, v.witness);

    // extremal case: q itself touches the boundary of its own image
    let extremal = check_subordination(&q.series(512), &q, &grid)?;
    println!("q vs q: schwarz margin {:.2e}", extremal.schwarz_margin.unwrap_or(f64::NAN));
    Ok(())
}
