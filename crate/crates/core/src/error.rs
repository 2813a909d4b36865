use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("radix entry m_{index} = {value} must be at least 2")]
    RadixTooSmall { index: usize, value: usize },
    #[error("empty radix sequence")]
    EmptyRadix,
    #[error("resolution must be at least 1")]
    ZeroResolution,
    #[error("subgroup size M_{index} overflows a machine word")]
    Overflow { index: usize },
    #[error("digit x_{index} = {value} is out of range for radix {radix}")]
    DigitOutOfRange { index: usize, value: usize, radix: usize },
    #[error("expected {expected} digits, found {found}")]
    DigitCount { expected: usize, found: usize },
    #[error("index {index} is outside [0, {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("level {level} exceeds resolution {resolution}")]
    LevelOutOfRange { level: usize, resolution: usize },
    #[error("group configurations differ")]
    ConfigMismatch,
    #[error("character table of order {order} exceeds the cap {cap}")]
    TableTooLarge { order: usize, cap: usize },
    #[error("non-finite value at coset {index}")]
    NonFinite { index: usize },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("exponent p = {0} is outside [1, inf]")]
    InvalidExponent(f64),
    #[error("{0}")]
    UnsupportedIndex(String),
    #[error("parameter {name} = {value} is outside its admissible range: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
    #[error("prefix sum Q_{0} vanishes")]
    ZeroNormalizer(usize),
    #[error("custom weight table has {len} entries, index {index} requested")]
    WeightTableExhausted { len: usize, index: usize },
    #[error("invalid parameters for {id}: {reason}")]
    InvalidIdentityParams { id: &'static str, reason: String },
    #[error("degenerate fit: {0} grid points, need at least 3")]
    DegenerateFit(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
