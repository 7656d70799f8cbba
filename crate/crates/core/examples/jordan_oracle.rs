// Exact Jordan structure of the updated reference matrix from rank sequences.

use std::error::Error;

use geu::oracle::{exact_spectrum, jordan_structure};
use geu::worked;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let updated = worked::problem().updated_matrix();
    let spectrum = exact_spectrum(&updated)?;
    let structure = jordan_structure(&updated, &spectrum)?;
    let blocks: Vec<String> = structure.blocks().iter().map(|(e, k)| format!("J{k}({e})")).collect();
    println!("{}", blocks.join(" + "));
    assert_eq!(structure.blocks(), worked::expected_structure());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
