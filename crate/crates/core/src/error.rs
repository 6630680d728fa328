use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("group order {order} exceeds the configured bound {bound}")]
    GroupTooLarge { order: u128, bound: u64 },

    #[error(
        "closure of the generators of {name} has order {computed}, but {declared} was declared"
    )]
    ClosureMismatch {
        name: String,
        declared: u64,
        computed: u64,
    },

    #[error("fixator of hyperplane {hyperplane} is not cyclic")]
    NotCyclicFixator { hyperplane: usize },

    #[error("eigenvalue of element {element} on the line of hyperplane {hyperplane} is not a root of unity")]
    EigenvalueNotRootOfUnity { hyperplane: usize, element: usize },

    #[error("orbit escapes the hyperplane set: element {element} maps hyperplane {hyperplane} outside it")]
    OrbitEscape { element: usize, hyperplane: usize },

    #[error(
        "abelianization criteria disagree at hyperplane {hyperplane}: \
         count criterion says {count}, commuting-orbit criterion says {orbits}"
    )]
    CriterionMismatch {
        hyperplane: usize,
        count: bool,
        orbits: bool,
    },

    #[error("hyperplane multiset is not stable under generator {generator}")]
    NotStable { generator: usize },

    #[error("subgroup is not generated by the reflections it contains")]
    NotReflectionSubgroup,

    #[error("f varies across the W-orbit of hyperplane {representative} ({expected} vs {found})")]
    OrbitInconsistent {
        representative: usize,
        expected: u64,
        found: u64,
    },

    #[error("invalid group data: {0}")]
    Data(String),

    #[error("no usable prime found for modular images of conductor {0}")]
    NoPrime(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
