use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("field of order {order} exceeds the cap {cap}")]
    FieldTooLarge { order: u128, cap: u32 },
    #[error("extension degree must be at least 1")]
    InvalidExtensionDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field order {0} is not a square")]
    NotASquare(u32),
    #[error("F_{small} is not a subfield of F_{big}")]
    NotASubfield { small: u32, big: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} out of range for {nvars} variables")]
    VariableIndexOutOfRange { index: usize, nvars: usize },
    #[error("polynomial is not homogeneous")]
    InhomogeneousWhereRequired,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("points are projectively dependent")]
    DependentPoints,
    #[error("the zero polynomial does not define a hypersurface")]
    ZeroForm,
    #[error("element code {0} is out of range")]
    ElementOutOfRange(u32),

    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),
    #[error("ambient dimension {0} not supported (surfaces in P^3 only)")]
    AmbientNotSupported(usize),
    #[error("integer overflow in bound arithmetic")]
    Overflow,

    #[error("matrix is not Hermitian (a_ji must equal a_ij^sqrt(q))")]
    NonHermitianMatrix,
    #[error("linear forms do not lie in a common pencil")]
    NotAPencil,
    #[error("repeated (proportional) linear form in pencil union")]
    RepeatedForm,
    #[error("pencil union needs between 2 and q+1 forms, got {0}")]
    PencilSize(usize),
    #[error("this object is only defined over F_4")]
    WrongField,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
