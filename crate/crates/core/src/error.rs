use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a valid prime (need a prime < 2^31)")]
    BadModulus(u64),
    #[error("field tag mismatch")]
    FieldMismatch,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("two-step complex violated: composite is nonzero")]
    NotAComplex,
    #[error("structure constants are not commutative at basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("structure constants are not associative at basis pair ({0}, {1})")]
    NotAssociative(usize, usize),
    #[error("designated unit element does not act as identity")]
    NoUnit,
    #[error("algebra is not local: {0}")]
    NotLocal(String),
    #[error("maximal ideal is not nilpotent")]
    NotNilpotent,
    #[error("no power of variable(s) `{var}` found in the relation ideal up to degree {bound}")]
    NotArtinian { var: String, bound: usize },
    #[error("relations generate the unit ideal; quotient is the zero ring")]
    ZeroQuotient,
    #[error("operands live over different algebras")]
    AlgebraMismatch,
    #[error("homomorphism shapes do not compose")]
    CompositionMismatch,
    #[error("module carries no complete-resolution certificate")]
    NotCertified,
    #[error("G-dimension exceeds the bound {0}")]
    GdimInfiniteAtBound(usize),
    #[error("module is not in the relative G-perp class for the given test set")]
    NotInGPerp,
    #[error("construction failed verification: {0}")]
    ConstructionFailed(String),
    #[error("unknown property id `{0}`")]
    UnknownProperty(String),
}
