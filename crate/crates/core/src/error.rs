use std::fmt;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    SingularBasis,
    DimensionMismatch(String),
    NotPositiveDefinite,
    /// The given subspace/section is not a saturated lattice plane.
    NotLatticePlane,
    UnknownLattice(String),
    /// Enumeration tree exceeded the configured node budget.
    BudgetExceeded,
    VertexEnumerationOverflow,
    /// An exact identity that is mathematically guaranteed failed; this
    /// always indicates an implementation bug.
    IdentityViolation(String),
    ChainViolation(String),
    DomainError(String),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SingularBasis => write!(f, "basis matrix is singular"),
            Error::DimensionMismatch(m) => write!(f, "dimension mismatch: {m}"),
            Error::NotPositiveDefinite => write!(f, "gram matrix is not positive definite"),
            Error::NotLatticePlane => write!(f, "subspace is not a saturated lattice plane"),
            Error::UnknownLattice(m) => write!(f, "unknown lattice: {m}"),
            Error::BudgetExceeded => write!(f, "enumeration node budget exceeded"),
            Error::VertexEnumerationOverflow => write!(f, "vertex enumeration overflow"),
            Error::IdentityViolation(m) => write!(f, "exact identity violated (bug): {m}"),
            Error::ChainViolation(m) => write!(f, "inequality chain violated: {m}"),
            Error::DomainError(m) => write!(f, "domain error: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for Error {}
