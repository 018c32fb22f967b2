use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the stable error names printed by the CLI and
/// mapped to integer codes by the C bindings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("germ has a nonzero constant term")]
    ConstantTerm,
    #[error("germ is the zero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a two-variable germ, got dimension {0}")]
    DimensionUnsupported(usize),
    #[error("germ is degenerate with respect to its Newton polygon ({0})")]
    Degenerate(String),
    #[error("germ is outside the supported class: {0}")]
    UnsupportedGerm(String),
    #[error("coefficient of T^{0} is not divisible by (u - 1)")]
    NotDivisible(usize),
    #[error("invalid resolution data: {0}")]
    InvalidData(String),
    #[error("stratum {0} has nonzero beta but no cover data")]
    MissingCoverData(String),
    #[error("sign cover cannot be computed: {0}")]
    UnsupportedCover(String),
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::SyntaxError { .. } => "SyntaxError",
            Error::ConstantTerm => "ConstantTerm",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DimensionUnsupported(_) => "DimensionUnsupported",
            Error::Degenerate(_) => "Degenerate",
            Error::UnsupportedGerm(_) => "UnsupportedGerm",
            Error::NotDivisible(_) => "NotDivisible",
            Error::InvalidData(_) => "InvalidData",
            Error::MissingCoverData(_) => "MissingCoverData",
            Error::UnsupportedCover(_) => "UnsupportedCover",
            Error::OrderMismatch(..) => "OrderMismatch",
            Error::Io(_) => "Io",
        }
    }

    /// Parse-level failures are usage errors; everything else is a
    /// mathematical or domain failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::SyntaxError { .. } | Error::ConstantTerm | Error::ZeroPolynomial | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
