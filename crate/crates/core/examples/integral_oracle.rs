//! Cross-checks the coefficient path against the two integral representations.

use num_complex::Complex64;
use pvalent::operator::{apply_j_integral, apply_l_integral};
use pvalent::{apply_operator, LaurentFunction, OperatorParams};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn main() -> pvalent::Result<()> {
    let tail = (0..24).map(|k| Complex64::from_polar(0.8f64.powi(k), 0.3 * k as f64)).collect();
    let f = LaurentFunction::new(2, tail)?;
    let points = [0.3, 0.5, 0.7].map(|r| Complex64::from_polar(r, 1.1));

    // m = 0: Euler-type beta integral
    let euler = OperatorParams::new(2, 0, 1.0, 1.0, 0.8, c(3.1), c(5.4))?;
    let g = apply_operator(&euler, &f)?;
    for z in points {
        let quad = apply_j_integral(&euler, &f, z)?;
        println!("J |z| = {:.1}: |coefficients - quadrature| = {:.2e}", z.norm(), (g.eval(z)? - quad).norm());
    }

    // a = c: nested power-weight integrals, m = 2
    let nested = OperatorParams::new(2, 2, 1.3, 0.6, 0.8, c(3.1), c(3.1))?;
    let h = apply_operator(&nested, &f)?;
    for z in points {
        let quad = apply_l_integral(&nested, &f, z)?;
        println!("L |z| = {:.1}: |coefficients - quadrature| = {:.2e}", z.norm(), (h.eval(z)? - quad).norm());
    }
    Ok(())
}
