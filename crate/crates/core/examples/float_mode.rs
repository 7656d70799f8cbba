// Complex64 pipeline on a larger random problem; chains judged by relative residual.

use std::error::Error;

use geu::chains::all_chains;
use geu::numeric::norm2;
use geu::oracle::chain_residuals;
use geu::perturb::new_eigenvalues_float;
use geu::sample::random_float_problem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = random_float_problem(&mut rng, 40);
    println!("n = {}, m = {}, lambda = {:.4}", p.dim(), p.m(), p.lambda());
    for z in new_eigenvalues_float(&p)? {
        println!("  new eigenvalue {z:.6}");
    }

    let updated = p.updated_matrix();
    let scale = p.scale();
    let mut worst: f64 = 0.0;
    for build in all_chains(&p) {
        let vectors: Vec<_> = build.vectors.iter().map(|u| u.vector.clone()).collect();
        for (r, v) in chain_residuals(&updated, &build.eigenvalue, &vectors).iter().zip(&vectors) {
            worst = worst.max(r / (scale * norm2(v)));
        }
    }
    println!("worst relative residual: {worst:.3e}");
    assert!(worst <= 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
