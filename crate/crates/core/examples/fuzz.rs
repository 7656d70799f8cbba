// A small seeded fuzz run, same as `geu fuzz --seed 3 --count 40 --n-max 6`.

use std::error::Error;

use geu::cli::fuzz::fuzz;
use geu::cli::report::{Mode, ReportOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let summary = fuzz(3, 40, 6, Mode::Exact, &ReportOptions::default());
    println!("{}", serde_json::to_string_pretty(&summary)?);
    if summary.failed > 0 {
        return Err(format!("{} failing instances", summary.failed).into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
