//! The reference instance `A = J_6(2) ⊕ J_3(2) ⊕ J_2(1)` updated with `x_2 b*`,
//! `b = 3e_1 − 5e_2 + e_7 + e_10`, and the chain vectors `x_j = e_1 + … + e_j`
//! (likewise for the other two blocks).

use crate::model::{cumulative_similarity, ChainLocator, JordanSpec};
use crate::numeric::GaussScalar;
use crate::perturb::PerturbationProblem;

pub const SOURCE_BLOCK: usize = 0;
pub const OTHER_BLOCK: usize = 1;
pub const MU_BLOCK: usize = 2;

pub fn spec() -> JordanSpec<GaussScalar> {
    JordanSpec::from_blocks([
        (GaussScalar::int(2), 6),
        (GaussScalar::int(2), 3),
        (GaussScalar::int(1), 2),
    ])
    .with_similarity(cumulative_similarity(&[6, 3, 2]))
}

pub fn b() -> Vec<GaussScalar> {
    let mut b = vec![GaussScalar::int(0); 11];
    b[0] = GaussScalar::int(3);
    b[1] = GaussScalar::int(-5);
    b[6] = GaussScalar::int(1);
    b[9] = GaussScalar::int(1);
    b
}

pub fn problem() -> PerturbationProblem<GaussScalar> {
    PerturbationProblem::new(spec(), ChainLocator::new(SOURCE_BLOCK, 2), b())
        .expect("reference problem is well formed")
}

/// Jordan form of the updated matrix as `(eigenvalue, size)` pairs.
pub fn expected_structure() -> Vec<(GaussScalar, usize)> {
    let mut blocks = vec![
        (GaussScalar::int(2), 4),
        (GaussScalar::int(2), 3),
        (GaussScalar::int(1), 2),
        (GaussScalar::int(3), 1),
        (GaussScalar::int(-1), 1),
    ];
    crate::oracle::sort_blocks(&mut blocks);
    blocks
}
