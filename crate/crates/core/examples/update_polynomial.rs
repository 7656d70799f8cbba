// Which eigenvalues move under a rank-one update, and where they go.

use std::error::Error;

use geu::model::{ChainLocator, JordanSpec};
use geu::numeric::{GaussScalar, RootMode, Roots};
use geu::oracle::char_poly_direct;
use geu::perturb::{
    changed_eigenvalue_bound, new_eigenvalues, update_char_factor, updated_char_poly, vanishing_moments,
    PerturbationProblem,
};

fn g(x: i64) -> GaussScalar {
    GaussScalar::int(x)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // J4(i) + J2(0), updated through the rank-3 chain vector of the first block.
    let spec = JordanSpec::from_blocks([(GaussScalar::i(), 4), (g(0), 2)]);
    let b = vec![g(0), g(1), g(-2), g(1), g(3), g(0)];
    let p = PerturbationProblem::new(spec, ChainLocator::new(0, 3), b)?;

    let f = update_char_factor(&p);
    println!("moments b*x_j: {:?}", f.moments.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("leading zero moments k = {}, bound m - k = {}", vanishing_moments(&p), changed_eigenvalue_bound(&p));
    println!("f(t) = {}", f.f);

    // f has no Gaussian-rational roots here, so exact mode reports that and we fall back.
    let roots = match new_eigenvalues(&p, RootMode::Exact) {
        Ok(r) => r,
        Err(e) => {
            println!("exact roots unavailable ({e}), using companion eigenvalues");
            new_eigenvalues(&p, RootMode::Numeric)?
        }
    };
    match roots {
        Roots::Exact(rs) => {
            for r in rs {
                println!("  root {} (multiplicity {})", r.value, r.multiplicity);
            }
        }
        Roots::Numeric(rs) => {
            for r in rs {
                println!("  root {:.6}{:+.6}i", r.re, r.im);
            }
        }
    }

    let fast = updated_char_poly(&p)?;
    let direct = char_poly_direct(&p.updated_matrix());
    println!("char poly of A + x_m b*: {fast}");
    assert_eq!(fast, direct);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
