use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// The input carries no spread (constant, too short, or zero range).
    DegenerateInput(&'static str),
    /// An argument is outside the domain of the operation.
    Domain(&'static str),
    /// A matrix or configuration violates a structural invariant.
    Invalid(alloc::string::String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateInput(what) => write!(f, "degenerate input: {what}"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Invalid(what) => write!(f, "invalid: {what}"),
        }
    }
}

impl core::error::Error for Error {}
