use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Absence of an adjoint or a witness is never an error; those come back as
/// `Option`. A theorem checker whose hypotheses do not hold returns
/// `HypothesisFailed`; a failed conclusion is a `TheoremViolation`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation contains a cycle through `{0}`")]
    Cycle(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown catalog poset `{0}`")]
    UnknownName(String),
    #[error("operation is undefined on the empty poset")]
    EmptyPoset,
    #[error("{what} has size {size}, above the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("relation is not reflexive at index {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} -> {1} -> {2}")]
    NotTransitive(usize, usize, usize),
    #[error("relation is not antisymmetric: {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("value table is not a monotone map")]
    NotMonotone,
    #[error("connections live on different carriers")]
    CarrierMismatch,
    #[error("domain poset must be nonempty")]
    EmptyDomain,
    #[error("poset is not connected")]
    NotConnected,
    #[error("poset is not a total order")]
    NotAChain,
    #[error("chain must have at least two elements")]
    ChainTooShort,
    #[error("chain length {len} does not fit height {height}")]
    BadHeight { len: usize, height: usize },
    #[error("relation is not coordinate symmetric at ({0}, {1})")]
    SymmetryViolation(usize, usize),
    #[error("admissibility preorder on the components is not the identity")]
    AdmissibilityNotIdentity,
    #[error("[{0}, {1}] is not a tunnel")]
    NotATunnel(usize, usize),
    #[error("h(s↓) ∩ Q has no maximum at s = {0}")]
    MaxUndefined(usize),
    #[error("element set is not a subset of the carrier")]
    NotASubset,
    #[error("poset is not null-taxotopic")]
    NotNullTaxotopic,
    #[error("invalid cover: {0}")]
    Cover(#[from] crate::covers::CoverError),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("{0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
