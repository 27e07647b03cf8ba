use alloc::string::String;
use core::fmt;

/// Errors raised by the cubical machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A generator or face index lies outside its admissible range.
    IndexOutOfRange { what: &'static str, index: usize, bound: usize },
    /// `compose(g, f)` with `f.dst() != g.src()`.
    CompositionMismatch { left_src: usize, right_dst: usize },
    /// A formal product violating the symbol-uniqueness or range rules.
    InvalidMorphism(String),
    /// A list that should describe a permutation does not.
    InvalidPermutation(String),
    /// An input that must be an epimorphism is not.
    NotEpi,
    /// A computation would exceed the configured size limit.
    ResourceBound { what: &'static str, count: u128, limit: u128 },
    /// Presheaf data fails validation (functoriality, missing actions, ...).
    InvalidPresheaf(String),
    /// A truncated presheaf was asked for a level beyond its bound.
    BeyondTruncation { level: usize, truncation: usize },
    /// Inputs live over different truncations or sites and cannot be combined.
    TruncationMismatch(String),
    /// A map between presheaves fails naturality or typing.
    InvalidMap(String),
    /// An exact integer computation overflowed.
    Overflow,
    /// Malformed text input.
    Parse(String),
    /// Dimension argument not allowed for this construction.
    BadDimension(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { what, index, bound } => {
                write!(f, "{what} index {index} out of range (bound {bound})")
            }
            Error::CompositionMismatch { left_src, right_dst } => {
                write!(f, "cannot compose: left map has source {left_src}, right map has target {right_dst}")
            }
            Error::InvalidMorphism(s) => write!(f, "invalid formal product: {s}"),
            Error::InvalidPermutation(s) => write!(f, "invalid permutation: {s}"),
            Error::NotEpi => write!(f, "map is not an epimorphism"),
            Error::ResourceBound { what, count, limit } => {
                write!(f, "{what}: {count} elements exceeds limit {limit}")
            }
            Error::InvalidPresheaf(s) => write!(f, "invalid presheaf: {s}"),
            Error::BeyondTruncation { level, truncation } => {
                write!(f, "level {level} requested from a presheaf truncated at {truncation}")
            }
            Error::TruncationMismatch(s) => write!(f, "truncation mismatch: {s}"),
            Error::InvalidMap(s) => write!(f, "invalid presheaf map: {s}"),
            Error::Overflow => write!(f, "integer overflow in exact arithmetic"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::BadDimension(n) => write!(f, "dimension {n} not allowed here"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
