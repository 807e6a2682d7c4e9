use std::fmt;

/// Byte range into a parsed source string.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {span}: {message}")]
    Syntax { message: String, span: Span },
    #[error("semantic error at {span}: {message}")]
    Semantic { message: String, span: Span },
    /// The query is well-formed but outside what the ring family supports.
    #[error("capability error: {0}")]
    Capability(String),
    #[error("representation error: {0}")]
    Representation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub fn span(&self) -> Option<Span> {
        match self {
            Error::Syntax { span, .. } | Error::Semantic { span, .. } => Some(*span),
            _ => None,
        }
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn repr(msg: impl Into<String>) -> Self {
        Error::Representation(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
