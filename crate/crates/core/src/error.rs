use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("row {row} is not a permutation of 0..{size}")]
    NotLeftQuasigroup { row: usize, size: usize },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("subgroup is not pointwise fixed by the automorphism")]
    SubgroupNotFixed,

    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("partition is not a congruence")]
    NotACongruence,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("congruence is not uniform")]
    NotUniform,

    #[error("congruence is not below the Cayley kernel")]
    NotUnderCayley,

    #[error("cocycle does not fit the structure: {0}")]
    FiberMismatch(String),

    #[error("map is not surjective")]
    NotSurjective,

    #[error("map is not a homomorphism")]
    NotHomomorphism,

    #[error("criterion not applicable: {0}")]
    CriterionNotApplicable(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("both sides must share the rightmost variable (`{lhs}` vs `{rhs}`)")]
    RightmostMismatch { lhs: String, rhs: String },

    #[error("structure is not connected")]
    NotConnected,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("group does not preserve the blocks")]
    BlocksNotPreserved,

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
