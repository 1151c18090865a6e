use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("variable arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at the evaluation point")]
    PoleAtPoint,
    #[error("presentation has punctures; the surface group is free")]
    NotClosed,
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("invalid mapping class: {0}")]
    InvalidMappingClass(String),
    #[error("inadmissible chart: {0}")]
    InadmissibleChart(String),
    #[error("arc letter used with a cocycle that has no arc values")]
    ArcOnUnbasedCocycle,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arc {0} is not mapped to a path of the form η·c_{0}")]
    EndpointPermuted(usize),
    #[error("twist word required")]
    TwistWordAbsent,
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("mapping class does not preserve the framing: {0}")]
    FramingNotPreserved(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
