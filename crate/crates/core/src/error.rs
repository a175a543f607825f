use thiserror::Error;

/// Errors produced by word, morphism, stream and arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}` in alphabet")]
    DuplicateLetter(String),
    #[error("letter id {id} is outside an alphabet of {size} letters")]
    LetterOutOfRange { id: u32, size: usize },
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("{0} is undefined on the empty word")]
    EmptyWord(&'static str),
    #[error("morphism is not an endomorphism")]
    NotEndomorphism,
    #[error("morphism is not prolongable on `{0}`")]
    NotProlongable(String),
    #[error("possibly-finite image: {budget} consecutive source letters had empty images")]
    FuelExhausted { budget: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid number literal `{0}`")]
    NumberLiteral(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot combine sqrt({0}) with sqrt({1})")]
    IncompatibleRadicands(i128, i128),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("expected a rational number, got {0}")]
    NotRational(String),
    #[error("expected an irrational quadratic surd, got {0}")]
    NotIrrational(String),
    #[error("value lies within 10^-{digits} of an integer; more digits are needed")]
    NeedMoreDigits { digits: u32 },
    #[error("enumeration exceeded the cap of {cap} cells")]
    SizeCap { cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
