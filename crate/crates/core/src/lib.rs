pub mod chains;
pub mod cli;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod perturb;
pub mod sample;
pub mod worked;
