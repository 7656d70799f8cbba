//! JSON file schemas: problem files, matrix files and vector-list files.
//! Every rational is a `"p/q"` string and every complex number `{"re", "im"}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::model::{ChainLocator, JordanBlock, JordanSpec};
use crate::numeric::{Complex64, GaussScalar, Matrix, Scalar};
use crate::perturb::PerturbationProblem;

use super::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockEntry {
    pub eigenvalue: GaussScalar,
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceEntry {
    pub block: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub blocks: Vec<BlockEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity: Option<Vec<Vec<GaussScalar>>>,
    pub b: Vec<GaussScalar>,
    pub source: SourceEntry,
}

fn field(name: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Field { field: name.into(), message: message.into() }
}

impl ProblemFile {
    pub fn from_problem(p: &PerturbationProblem<GaussScalar>) -> Self {
        Self {
            blocks: p
                .spec()
                .blocks
                .iter()
                .map(|b| BlockEntry { eigenvalue: b.eigenvalue.clone(), size: b.size })
                .collect(),
            similarity: p.spec().similarity.as_ref().map(Matrix::to_rows),
            b: p.b().to_vec(),
            source: SourceEntry { block: p.source().block, rank: p.source().rank },
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(CliError::json)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Self::parse(&super::read_file(path)?)
    }

    /// Field-by-field validation; the first offending field is named.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.blocks.is_empty() {
            return Err(field("blocks", "at least one block is required"));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if b.size == 0 {
                return Err(field(format!("blocks[{i}].size"), "block size must be positive"));
            }
        }
        let n: usize = self.blocks.iter().map(|b| b.size).sum();
        let Some(src) = self.blocks.get(self.source.block) else {
            return Err(field(
                "source.block",
                format!("index {} but only {} blocks", self.source.block, self.blocks.len()),
            ));
        };
        if self.source.rank == 0 || self.source.rank > src.size {
            return Err(field(
                "source.rank",
                format!("rank {} outside 1..={}", self.source.rank, src.size),
            ));
        }
        if self.b.len() != n {
            return Err(field("b", format!("length {} but the matrix dimension is {n}", self.b.len())));
        }
        if let Some(s) = &self.similarity {
            if s.len() != n || s.iter().any(|row| row.len() != n) {
                return Err(field("similarity", format!("must be {n}x{n}")));
            }
            let m = Matrix::from_rows(s.clone()).expect("rectangular");
            if m.det().expect("square").is_zero() {
                return Err(field("similarity", "matrix is singular"));
            }
        }
        Ok(())
    }

    pub fn to_problem(&self) -> Result<PerturbationProblem<GaussScalar>, CliError> {
        self.convert(|x| x.clone())
    }

    pub fn to_float_problem(&self) -> Result<PerturbationProblem<Complex64>, CliError> {
        self.convert(Scalar::to_complex)
    }

    fn convert<T: Scalar>(&self, f: impl Fn(&GaussScalar) -> T) -> Result<PerturbationProblem<T>, CliError> {
        self.validate()?;
        let blocks = self.blocks.iter().map(|b| JordanBlock::new(f(&b.eigenvalue), b.size)).collect();
        let similarity = self
            .similarity
            .as_ref()
            .map(|rows| Matrix::from_rows(rows.iter().map(|r| r.iter().map(&f).collect()).collect()))
            .transpose()
            .map_err(|e| field("similarity", e.to_string()))?;
        let spec = JordanSpec::new(blocks, similarity);
        let b = self.b.iter().map(&f).collect();
        PerturbationProblem::new(spec, ChainLocator::new(self.source.block, self.source.rank), b)
            .map_err(|e| field("problem", e.to_string()))
    }
}

/// Square matrix file: a list of rows.
pub fn read_matrix(path: &Path) -> Result<Matrix<GaussScalar>, CliError> {
    let rows: Vec<Vec<GaussScalar>> = serde_json::from_str(&super::read_file(path)?).map_err(CliError::json)?;
    let m = Matrix::from_rows(rows).map_err(|_| field("matrix", "rows have different lengths"))?;
    if !m.is_square() || m.rows() == 0 {
        return Err(field("matrix", "must be a nonempty square matrix"));
    }
    Ok(m)
}

/// Vector-list file: `[[v1...], [v2...], ...]`.
pub fn read_vectors(path: &Path, n: usize) -> Result<Vec<Vec<GaussScalar>>, CliError> {
    let vs: Vec<Vec<GaussScalar>> = serde_json::from_str(&super::read_file(path)?).map_err(CliError::json)?;
    if vs.is_empty() {
        return Err(field("vectors", "at least one vector is required"));
    }
    for (i, v) in vs.iter().enumerate() {
        if v.len() != n {
            return Err(field(format!("vectors[{i}]"), format!("length {} but matrix dimension is {n}", v.len())));
        }
    }
    Ok(vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked;

    #[test]
    fn worked_problem_round_trips() {
        let file = ProblemFile::from_problem(&worked::problem());
        let text = serde_json::to_string_pretty(&file).unwrap();
        let back = ProblemFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_problem().unwrap(), worked::problem());
    }

    #[test]
    fn rank_too_large_names_field() {
        let text = r#"{
            "blocks": [{"eigenvalue": {"re": "2", "im": "0"}, "size": 2}],
            "b": [{"re": "1", "im": "0"}, {"re": "0", "im": "0"}],
            "source": {"block": 0, "rank": 3}
        }"#;
        let err = ProblemFile::parse(text).unwrap().to_problem().unwrap_err();
        assert!(matches!(err, CliError::Field { ref field, .. } if field == "source.rank"), "{err}");
    }

    #[test]
    fn malformed_rational_reports_position() {
        let text = r#"{"blocks": [{"eigenvalue": {"re": "2/0"}, "size": 1}], "b": [{"re": "1"}], "source": {"block": 0, "rank": 1}}"#;
        let err = ProblemFile::parse(text).unwrap_err();
        assert!(matches!(err, CliError::Json { line: 1, .. }), "{err}");
    }

    #[test]
    fn other_field_errors() {
        let base = ProblemFile::from_problem(&worked::problem());
        let mut f = base.clone();
        f.b.pop();
        assert!(matches!(f.validate(), Err(CliError::Field { ref field, .. }) if field == "b"));
        let mut f = base.clone();
        f.source.block = 9;
        assert!(matches!(f.validate(), Err(CliError::Field { ref field, .. }) if field == "source.block"));
        let mut f = base.clone();
        f.similarity = Some(vec![vec![GaussScalar::zero(); 11]; 11]);
        assert!(matches!(f.validate(), Err(CliError::Field { ref field, .. }) if field == "similarity"));
        let mut f = base;
        f.blocks[1].size = 0;
        assert!(matches!(f.validate(), Err(CliError::Field { ref field, .. }) if field == "blocks[1].size"));
    }
}
