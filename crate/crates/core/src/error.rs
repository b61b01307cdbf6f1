use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("the zero element has no value")]
    ZeroValue,
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("{0} is not a supported prime")]
    InvalidPrime(u64),
    #[error("invalid slot: {0}")]
    InvalidSlot(String),
    #[error("element is not invertible; zero-divisor witness {witness}")]
    NotInvertible { witness: String },
    #[error("element is not Artin-Schreier")]
    NotArtinSchreier,
    #[error("element is not in the subfield F[x]")]
    NotInSubfield,
    #[error("element is zero")]
    ZeroElement,
    #[error("relation fails: {0}")]
    RelationFails(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("witness verification failed: {0}")]
    WitnessVerificationFailed(String),
    #[error("element does not have unit value")]
    NotUnitValue,
    #[error("unsupported slot: {0}")]
    UnsupportedSlot(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}
