use thiserror::Error;

use crate::group::Elem;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square or has an entry out of range at row {row}")]
    MalformedTable { row: usize },
    #[error("order {order} exceeds the size limit {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Elem),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("subgroup is not normal: conjugate of {element} by {by} leaves it")]
    NotNormal { element: Elem, by: Elem },
    #[error("series does not terminate: group is not nilpotent")]
    NotNilpotent,
    #[error("order {0} is not a prime power")]
    NotPPower(usize),
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),

    #[error("additive table is not commutative at ({0}, {1})")]
    NotAbelianAdd(usize, usize),
    #[error("ring multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociativeMul(usize, usize, usize),
    #[error("multiplication does not distribute at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
    #[error("additive group of order {0} is not a p-group")]
    NotPRing(usize),
    #[error("ring is not radical")]
    NotRadical,

    #[error("module subgroup is not abelian")]
    NotAbelian,
    #[error("automorphism moves {0} outside its coset modulo the module")]
    NotInAutA(Elem),
    #[error("derivation {derivation} moves {element} outside the invariant subgroup")]
    NotInvariant { derivation: usize, element: Elem },

    #[error("subgroup is not maximal")]
    NotMaximal,
    #[error("commutator [{k},{y}] does not lie in <x>K")]
    DecompositionFailed { k: Elem, y: Elem },
    #[error("no z in Z1 with [k,u] = z^alpha(k) for all k (fails at k = {0})")]
    NoSolution(Elem),
    #[error("map is not well defined at element {0}")]
    NotWellDefined(Elem),
    #[error("cocycle law fails at ({0}, {1})")]
    NotCocycle(Elem, Elem),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("unknown catalog id or unreadable file '{0}'")]
    UnknownGroup(String),
    #[error("bad subgroup spec '{0}'")]
    BadSubgroupSpec(String),
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
