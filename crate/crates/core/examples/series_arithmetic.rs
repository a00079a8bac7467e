//! Truncated power series: products, exp/log, principal powers, composition.

use num_complex::Complex64;
use pvalent::TaylorSeries;

fn main() -> pvalent::Result<()> {
    let k = 24;
    let z = Complex64::new(0.3, 0.2);

    let geo = TaylorSeries::geometric(k);
    println!("1/(1 - z) at {z}: series {:.12}, exact {:.12}", geo.eval(z), 1.0 / (1.0 - z));

    // (1 + z)(1 - z + z^2 - ...) = 1
    let one_plus_z = TaylorSeries::from_real(&[1.0, 1.0], k)?;
    let alternating = TaylorSeries::from_real(
        &(0..=k).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect::<Vec<_>>(),
        k,
    )?;
    let product = one_plus_z.mul(&alternating)?;
    println!("(1 + z) * 1/(1 + z) - 1: {:.2e}", product.max_abs_diff(&TaylorSeries::one(k)));

    let f = TaylorSeries::from_real(&[0.0, 0.5, -0.25, 0.125], k)?;
    let round_trip = f.exp().log()?;
    println!("log(exp f) - f: {:.2e}", round_trip.max_abs_diff(&f));

    // principal square root of 1 + z, squared back
    let root = one_plus_z.pow(Complex64::new(0.5, 0.0))?;
    println!("sqrt(1 + z)^2 - (1 + z): {:.2e}", root.mul(&root)?.max_abs_diff(&one_plus_z));

    // geometric series composed with w(z) = z/2
    let half = TaylorSeries::from_real(&[0.0, 0.5], k)?;
    let composed = geo.compose(&half)?;
    println!(
        "1/(1 - z/2) at {z}: {:.12} vs {:.12}",
        composed.eval(z),
        1.0 / (1.0 - z / 2.0)
    );

    let zdz = one_plus_z.mul(&one_plus_z)?.derivative_zdz();
    println!("z d/dz (1 + z)^2 = {} + {} z + {} z^2", zdz.coeff(0), zdz.coeff(1), zdz.coeff(2));
    Ok(())
}
