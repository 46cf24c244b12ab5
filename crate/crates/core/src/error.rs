use thiserror::Error;

/// Everything that can go wrong inside the toolkit.
///
/// Scale limits (`CapExceeded`, `ScaleExceeded`) are ordinary outcomes at
/// desk scale, not bugs. `InvariantViolation` is the only variant that
/// signals a defect in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("prime {0} is too large for the residue storage (max 65521)")]
    PrimeTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("discrete logarithm of zero")]
    DlogOfZero,
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("dimension {0} is odd")]
    OddDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("bilinear form is not alternating and non-degenerate")]
    BadForm,
    #[error("matrix is not a similitude of the form")]
    NotASimilitude,
    #[error("transvection needs a nonzero direction and a nonzero scalar")]
    DegenerateTransvection,
    #[error("element is not unipotent with (g - 1)^2 = 0")]
    NotSemistableUnipotent,
    #[error("group enumeration exceeded the cap of {cap} elements (reached {reached})")]
    CapExceeded { cap: usize, reached: usize },
    #[error("{what}: size {size} exceeds limit {limit}")]
    ScaleExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("element order is divisible by the characteristic")]
    NotSemisimple,
    #[error("element does not satisfy g^{0} = 1")]
    WrongOrder(u128),
    #[error("group contains no transvection")]
    NoTransvection,
    #[error("module is not simple")]
    NotSimpleModule,
    #[error("element does not permute the blocks")]
    NotBlockRespecting,
    #[error("exponent {m} outside [0, {bound})")]
    ExponentOutOfRange { m: u128, bound: u128 },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
