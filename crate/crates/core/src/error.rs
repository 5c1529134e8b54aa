use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattices live in ambient ranks {left} and {right}")]
    AmbientRankMismatch { left: usize, right: usize },
    #[error("vector does not lie in the containing lattice")]
    NotSublattice,
    #[error("ill-formed chain complex: {0}")]
    IllFormedComplex(String),
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("braid generator s{index} out of range for {strands} strands")]
    BraidIndexOutOfRange { index: usize, strands: usize },
    #[error("bridge numbers disagree: expected {expected}, found {found}")]
    BridgeMismatch { expected: usize, found: usize },
    #[error("strand counts disagree: expected {expected}, found {found}")]
    StrandCountMismatch { expected: usize, found: usize },
    #[error("tangle {tangle}: {message}")]
    InvalidTangle { tangle: usize, message: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("representation has {found} images but the diagram has {expected} punctures")]
    PunctureCountMismatch { expected: usize, found: usize },
    #[error("representation is not transitive")]
    NotTransitive,
    #[error("representation does not extend: {0}")]
    NotExtending(String),
    #[error("lift of relator from sheet {sheet} does not close up")]
    OpenLift { sheet: usize },
    #[error("branch data gives a non-integral genus")]
    NonIntegralGenus,
    #[error("sector {sector}: relator lattice has rank {rank}, expected {genus}")]
    LagrangianRank { sector: usize, rank: usize, genus: usize },
    #[error("sector {sector}: handlebody homology has torsion")]
    HandlebodyTorsion { sector: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
