// Updating through an eigenvector (m = 1) moves exactly one eigenvalue to lambda + b*x_1.

use std::error::Error;

use geu::model::{ChainLocator, JordanSpec};
use geu::numeric::{inner, GaussScalar, Matrix};
use geu::perturb::{new_eigenvalues_exact, PerturbationProblem};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = Matrix::from_rows(vec![
        vec![GaussScalar::int(1), GaussScalar::int(2), GaussScalar::int(0)],
        vec![GaussScalar::int(0), GaussScalar::int(1), GaussScalar::int(-1)],
        vec![GaussScalar::int(1), GaussScalar::int(0), GaussScalar::int(1)],
    ])?;
    let spec = JordanSpec::from_blocks([(GaussScalar::int(5), 1), (GaussScalar::int(-2), 2)]).with_similarity(s);
    let b = vec![GaussScalar::frac(1, 2), GaussScalar::int(3), GaussScalar::int_complex(0, 1)];
    let p = PerturbationProblem::new(spec, ChainLocator::new(0, 1), b)?;

    let predicted = p.lambda().clone() + inner(p.b(), p.x(1));
    let roots = new_eigenvalues_exact(&p)?;
    println!("lambda + b*x_1 = {predicted}");
    println!("root of f      = {}", roots[0].value);
    assert_eq!(roots.len(), 1);
    assert_eq!(roots[0].value, predicted);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
