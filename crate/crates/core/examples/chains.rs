// Generalized eigenvectors of A + x_m b* built from the chains of A, checked by the oracle.

use std::error::Error;

use geu::chains::all_chains;
use geu::oracle::{generalized_rank, verify_chain};
use geu::worked;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = worked::problem();
    let updated = p.updated_matrix();
    for build in all_chains(&p) {
        let vectors: Vec<_> = build.vectors.iter().map(|u| u.vector.clone()).collect();
        let verdict = verify_chain(&updated, &build.eigenvalue, &vectors);
        println!(
            "{:?} from block {} (eigenvalue {}): {} vectors, chain {}",
            build.case,
            build.block,
            build.eigenvalue,
            vectors.len(),
            if verdict.passed { "ok" } else { "BROKEN" }
        );
        for u in &build.vectors {
            let k = generalized_rank(&updated, &build.eigenvalue, &u.vector)?;
            println!("  rank {} -> generalized rank {:?}", u.rank, k);
        }
        if let Some(e) = build.error {
            println!("  stopped: {e}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
