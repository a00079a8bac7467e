//! The three first-order recurrences in a, c and m on random inputs.

use pvalent::harness::batch::instance_rng;
use pvalent::random::{random_function, random_real_params};
use pvalent::{recurrence_residual, Recurrence};

fn main() -> pvalent::Result<()> {
    let mut worst = [0.0f64; 3];
    for trial in 0..50 {
        let mut rng = instance_rng(7, trial);
        let params = random_real_params(&mut rng);
        let f = random_function(&mut rng, params.p, 32)?;
        for (slot, which) in Recurrence::ALL.into_iter().enumerate() {
            worst[slot] = worst[slot].max(recurrence_residual(&params, &f, which)?);
        }
    }
    for (which, r) in Recurrence::ALL.iter().zip(worst) {
        println!("{which:?}: max residual {r:.2e} over 50 draws");
    }
    Ok(())
}
