use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable space mismatch: {0} vs {1}")]
    SpaceMismatch(String, String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("no image given for variable {0:?}")]
    IncompleteAssignment(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NonDivisible,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("polynomial is not in the image of the tau map: {0}")]
    NotInImage(String),
    #[error("orbit averages cannot be reconciled with the tau basis: {0}")]
    InconsistentBasis(String),
    #[error("proportionality check failed: {0}")]
    ProportionalityFailure(String),
    #[error("identity {0} does not hold")]
    IdentityFailure(String),
    #[error("derived table differs from reference at {0}")]
    TableMismatch(String),
    #[error("operator does not preserve the space: image of {monomial} leaves it")]
    NotInvariant { monomial: String },
    #[error("operator coefficients depend on formal parameters; numeric values required")]
    FormalParameters,
    #[error("commutator is nonzero: {0}")]
    NonZeroCommutator(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("structural mismatch: {0}")]
    StructuralMismatch(String),
    #[error("spectra differ: {0}")]
    SpectrumMismatch(String),
    #[error("eigenfunction transfer failed: {0}")]
    TransferFailure(String),
    #[error("gauge constructions differ by a non-constant: {0}")]
    GaugeMismatch(String),
    #[error("invariant subspace check failed: {0}")]
    PreservationFailure(String),
    #[error("symmetric functions of the block spectrum disagree: {0}")]
    SymmetricFunctionMismatch(String),
    #[error("eigenvalue equation leaves residual {0}")]
    NonZeroResidual(String),
    #[error("generator classification failed: {0}")]
    ClassificationFailure(String),
    #[error("set is not Abelian: {0}")]
    NonAbelian(String),
    #[error("commutator not in the claimed span: {0}")]
    MembershipFailure(String),
    #[error("decomposition leaves residual {0}")]
    DecompositionMismatch(String),
    #[error("{0}")]
    CheckFailed(String),
}
