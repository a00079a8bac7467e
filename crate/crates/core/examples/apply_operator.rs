//! The multiplier operator on a Laurent function, by parameters and by preset.

use num_complex::Complex64;
use pvalent::{apply_operator, preset, AnySeries, LaurentFunction, OperatorParams, PresetArgs};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn main() -> pvalent::Result<()> {
    // f(z) = 1/z + sum_{k=0}^{7} 2^{-k-1} z^k
    let tail = (0..8).map(|k| c(0.5f64.powi(k + 1))).collect();
    let f = LaurentFunction::new(1, tail)?;

    let params = OperatorParams::new(1, 2, 1.5, 0.75, 1.0, c(2.5), c(4.0))?;
    let g = apply_operator(&params, &f)?;
    println!("operator {params}");
    for k in 0..4 {
        println!("  a_{k} = {:.6}  ->  {:.6}", f.coeff(k).re, g.coeff(k).re);
    }
    println!("pole term kept: {}", g.coeff(-1));

    let z = Complex64::new(0.4, 0.1);
    println!("f({z}) = {:.8}, I f({z}) = {:.8}", f.eval(z)?, g.eval(z)?);

    // identity case: m = 0 and a = c
    let identity = OperatorParams { m: 0, c: params.a, ..params };
    println!("identity case exact: {}", apply_operator(&identity, &f)? == f);

    // a named special case
    let mut args = PresetArgs::new();
    args.insert("p".into(), c(1.0));
    args.insert("a".into(), c(2.0));
    args.insert("c".into(), c(3.0));
    let liu = preset("liu-srivastava", &args)?;
    println!("liu-srivastava with a = 2, c = 3 -> {liu}");
    let h = apply_operator(&liu, &f)?;
    println!("{}", AnySeries::Laurent(h.clone()).to_json().lines().next().unwrap_or(""));
    Ok(())
}
