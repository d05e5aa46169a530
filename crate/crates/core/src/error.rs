use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown group identifier `{0}`")]
    UnknownGroup(String),

    #[error("invalid parameter for `{group}`: {reason}")]
    InvalidParameter { group: String, reason: String },

    #[error("subgroup `{subgroup}` is not supported in `{group}`")]
    UnsupportedSubgroup { group: String, subgroup: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("node cap {cap} exceeded while building ball (sphere sizes so far: {sphere_sizes:?}); try a smaller radius")]
    NodeCapExceeded { cap: usize, sphere_sizes: Vec<usize> },

    #[error("ball radius {have} is too small, need at least {need}")]
    RadiusTooSmall { have: u32, need: u32 },

    #[error("target set is empty")]
    EmptyTargets,

    #[error("undefined: H ∩ Ball_X({0}) is trivial")]
    TrivialAlphabet(u32),

    #[error("alphabet Y_{m} does not generate target {target}")]
    NotGenerated { m: u32, target: String },

    #[error("element is not in the subgroup")]
    NotInSubgroup,

    #[error("search cap {cap} reached before {what} was settled")]
    SearchCapExceeded { cap: usize, what: String },

    #[error("length function precondition failed: {0}")]
    LengthPrecondition(String),

    #[error("evaluation at {at} is outside the verified grid (max {grid_max})")]
    GridExhausted { at: u64, grid_max: u64 },

    #[error("not enough data: {0}")]
    InsufficientData(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
