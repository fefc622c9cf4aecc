use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction and arithmetic
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("operation requires a finite field")]
    InfiniteField,

    // polynomials and endomorphisms
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("total degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("the added polynomial depends on the moved generator x{}", .0 + 1)]
    SelfDependentP(usize),
    #[error("the added polynomial has a nonzero constant term")]
    ConstantTermPresent,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("inversion is only supported for elementary, linear and torus maps")]
    UnsupportedShape,
    #[error("unknown generator tag `{0}`")]
    UnknownTag(String),
    #[error("duplicate generator tag `{0}`")]
    DuplicateTag(String),
    #[error("supplied inverse does not invert generator `{0}`")]
    BadInverse(String),
    #[error("endomorphism is not elementary")]
    NotElementary,

    // constructions
    #[error("target and source generator coincide")]
    SelfTarget,
    #[error("construction axes must be distinct")]
    AxesCollision,
    #[error("monomial support is not allowed here: {0}")]
    BadMonomialSupport(String),
    #[error("monomial is not bad")]
    NotBad,
    #[error("pivot generator does not occur in the monomial")]
    ZeroPivotExponent,
    #[error("monomial is constant")]
    ConstantMonomial,
    #[error("monomial involves the target generator")]
    InvolvesTarget,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    // torus
    #[error("torus entries must be nonzero")]
    ZeroEntry,
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("automorphism is not in the commutant form")]
    NotInCommutant,
    #[error("rescaling factor must be nonzero")]
    ZeroBeta,
    #[error("monomial weight is not realizable over this field")]
    NoSolution,

    // matrices
    #[error("matrix shape mismatch")]
    ShapeMismatch,
    #[error("input matrix is singular")]
    SingularInput,
    #[error("enumeration of {size} items exceeds the cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },

    // search
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
