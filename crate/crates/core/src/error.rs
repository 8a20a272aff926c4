use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group specification `{0}`")]
    BadGroupSpec(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("group order exceeds the configured bound of {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("unknown subgroup label `{0}`")]
    UnknownSubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("{0} is not contained in {1}")]
    NotContained(String, String),
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("action is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("map is not equivariant at point {point} under generator {generator}")]
    NotEquivariant { point: usize, generator: usize },
    #[error("subgroup meets the symmetric group nontrivially, it is not a graph")]
    NotAGraph,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("no working prime found below {0}")]
    NoPrime(u64),
    #[error("value {0} mod p cannot be lifted into the expected range, character is virtual or invalid")]
    LiftOutOfRange(u64),
    #[error("character is not genuine: {0}")]
    VirtualCharacter(String),
    #[error("malformed universe specification `{0}`")]
    BadUniverseSpec(String),
    #[error("not a family of subgroups: {0}")]
    NotAFamily(String),
    #[error("pair {0} is not admissible")]
    NotAdmissible(String),
    #[error("not an indexing system: {0}")]
    InvalidSystem(String),
    #[error("malformed G-set literal `{0}`")]
    BadGSetLiteral(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
