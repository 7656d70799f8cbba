// det(M + x b*) = det(M) (1 + b* M^{-1} x), against elimination on the updated matrix.

use std::error::Error;

use geu::oracle::det_direct;
use geu::perturb::det_rank1_update;
use geu::sample::{random_invertible, random_vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=5 {
        let m = random_invertible(&mut rng, n);
        let x = random_vector(&mut rng, n, 0.3);
        let b = random_vector(&mut rng, n, 0.3);
        let lemma = det_rank1_update(&m, &x, &b)?;
        let direct = det_direct(&m.add(&geu::numeric::Matrix::outer(&x, &b)));
        println!("n = {n}: {lemma} == {direct}");
        assert_eq!(lemma, direct);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
