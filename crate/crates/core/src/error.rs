use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical or supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A ratio diverges (e.g. a cross section at a node of the local flux).
    #[error("singular value at b = {b}: {what}")]
    Singular { b: f64, what: &'static str },

    /// Both the numerator and denominator of a normalized ratio vanish to
    /// every order, so the ratio has no limit.
    #[error("undefined ratio at b = {b}: {what}")]
    Undefined { b: f64, what: &'static str },

    /// No closed-form paraxial expression exists for the request.
    #[error(
        "no paraxial {kind} formula for (mbar = {mbar}, l_f = {l_f}); supported: {supported}"
    )]
    UnsupportedParaxial {
        kind: &'static str,
        mbar: i32,
        l_f: u32,
        supported: String,
    },

    #[error("empty impact-parameter grid")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
