// The 11x11 reference problem: J6(2) + J3(2) + J2(1) updated by x_2 b*.
//
//     cargo run --example worked_example

use std::error::Error;

use geu::chains::{build_distinct, build_other_block, build_same_block};
use geu::perturb::{changed_eigenvalue_bound, new_eigenvalues_exact, update_char_factor};
use geu::worked;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = worked::problem();
    println!("n = {}, lambda = {}, m = {}, r = {}", p.dim(), p.lambda(), p.m(), p.r());

    let f = update_char_factor(&p);
    let shifted: Vec<String> = f.shifted.iter().map(|c| c.to_string()).collect();
    println!("f(t) in powers of (t - lambda): [{}]", shifted.join(", "));
    println!("f(t) = {}", f.f);
    let roots: Vec<String> = new_eigenvalues_exact(&p)?.iter().map(|r| r.value.to_string()).collect();
    println!("new eigenvalues: {}  (at most {})", roots.join(", "), changed_eigenvalue_bound(&p));

    let same = build_same_block(&p, 4);
    println!("same block, beta = {}", same.coefficients.beta.as_ref().ok_or("no beta")?);
    for u in &same.vectors {
        println!("  u{}: beta_1 = {}, beta_2 = {}", u.rank, u.coefficients[0], u.coefficients[1]);
    }
    for u in build_other_block(&p, worked::OTHER_BLOCK, 3).vectors {
        println!("  v{}: beta_1 = {}, beta_2 = {}", u.rank, u.coefficients[0], u.coefficients[1]);
    }
    for u in build_distinct(&p, worked::MU_BLOCK, 2).vectors {
        println!("  w{}: beta_1 = {}, beta_2 = {}", u.rank, u.coefficients[0], u.coefficients[1]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
