use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("product is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotBijective(usize),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not an invariant sub right loop: {0}")]
    NotInvariant(String),
    #[error("subgroup is not core-free")]
    NotCoreFree,
    #[error("no generating transversal found after exhaustive search")]
    ExhaustedWithoutWitness,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("{check} violated: {witness}")]
    Violation {
        check: &'static str,
        witness: String,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn violation(check: &'static str, witness: impl Into<String>) -> Self {
        Error::Violation {
            check,
            witness: witness.into(),
        }
    }
}
