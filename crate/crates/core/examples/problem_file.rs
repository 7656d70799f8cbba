// Build a problem file by hand, run the compute report, print its verdict.

use std::error::Error;

use geu::cli::format::ProblemFile;
use geu::cli::report::{exact_report, ReportOptions};

const INPUT: &str = r#"{
  "blocks": [
    {"eigenvalue": {"re": "1/2"}, "size": 3},
    {"eigenvalue": {"re": "1/2"}, "size": 1},
    {"eigenvalue": {"re": "0", "im": "1"}, "size": 2}
  ],
  "b": [{"re": "1"}, {"re": "0"}, {"re": "-1"}, {"re": "2"}, {"re": "0", "im": "1"}, {"re": "1/3"}],
  "source": {"block": 0, "rank": 2}
}"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let file = ProblemFile::parse(INPUT)?;
    let report = exact_report(&file.to_problem()?, &ReportOptions::default());
    println!("f(t) = {:?}", report.factor.monomial.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for c in &report.chains {
        println!("{:?} block {}: {} vectors, passed = {}", c.case, c.block, c.vectors.len(), c.passed());
    }
    println!("status: {:?}", report.status);
    if !report.passed() {
        return Err("report failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
