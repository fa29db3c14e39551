use thiserror::Error;

/// Errors raised by the permutation-group engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("image list is not a bijection")]
    NotBijective,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("generator {generator} maps domain point {point} outside the domain")]
    DomainNotInvariant { point: u32, generator: usize },
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: String, bound: u64 },
}

/// Two pairs of the same color that see different numbers of `(r, s)` paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceWitness {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub first: (u32, u32),
    pub first_count: u32,
    pub second: (u32, u32),
    pub second_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("malformed color matrix: {0}")]
    MalformedMatrix(String),
    #[error("diagonal color {color} also appears off the diagonal")]
    DiagonalMixed { color: u32 },
    #[error("transpose of color {color} is not a single color")]
    NotTransposeClosed { color: u32 },
    #[error("not coherent: c[{r},{s}]^{t} is {first_count} at {first:?} but {second_count} at {second:?}", r = .0.r, s = .0.s, t = .0.t, first_count = .0.first_count, first = .0.first, second_count = .0.second_count, second = .0.second)]
    NotCoherent(Box<CoherenceWitness>),
    #[error("color {color} out of range for rank {rank}")]
    ColorOutOfRange { color: u32, rank: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("point set is neither a union of fibers nor a class of an equivalence relation")]
    NotFiberUnion,
    #[error("relation is not an equivalence relation with full support")]
    NotEquivalence,
    #[error("configuration is not homogeneous")]
    NotHomogeneous,
    #[error("configuration is not antisymmetric")]
    NotAntisymmetric,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid algebraic isomorphism: {0}")]
    InvalidAlgebraicIso(String),
    #[error("inconsistent isomorphism family: {0}")]
    InconsistentPsi(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search budget of {budget} candidates exceeded; best known upper bound {best_upper_bound}")]
    BudgetExceeded { budget: u64, best_upper_bound: usize },
    #[error("equivalence chain and majorants do not match: {0}")]
    ChainMismatch(String),
    #[error("not a tournament: {0}")]
    NotATournament(String),
    #[error("configuration is not schurian")]
    NotSchurian,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
