//! Random operator parameters and functions for batch checks.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::operator::OperatorParams;
use crate::series::LaurentFunction;

/// Real parameters in the well-conditioned region: `p` in 1..=3, `m` in
/// 0..=3, `lambda, l` in [0.5, 2], `mu` in [0.3, 2],
/// `a - p mu` in (0.5, 8), `c - a` in [0, 4].
pub fn random_real_params<R: Rng>(rng: &mut R) -> OperatorParams {
    let p = rng.gen_range(1..=3u32);
    let mu = rng.gen_range(0.3..=2.0);
    let a = p as f64 * mu + rng.gen_range(0.5..8.0);
    let c = a + rng.gen_range(0.0..=4.0);
    OperatorParams::new(
        p,
        rng.gen_range(0..=3),
        rng.gen_range(0.5..=2.0),
        rng.gen_range(0.5..=2.0),
        mu,
        Complex64::new(a, 0.0),
        Complex64::new(c, 0.0),
    )
    .expect("draw lies inside the parameter region")
}

/// `z^{-p} + sum a_k z^k` with `a_k` uniform in the square of half-width
/// `0.9^{k + p}`, so the function stays moderate on `|z| < 0.9`.
pub fn random_function<R: Rng>(rng: &mut R, p: u32, k: usize) -> Result<LaurentFunction> {
    let tail = (1..=k + p as usize)
        .map(|i| {
            let s = 0.9f64.powi(i as i32);
            Complex64::new(rng.gen_range(-s..=s), rng.gen_range(-s..=s))
        })
        .collect();
    LaurentFunction::new(p, tail)
}
