use thiserror::Error;

/// Crate-wide error type.
///
/// Variants marked "internal" indicate a broken invariant of the library
/// itself rather than bad input; they are never expected to fire.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    MalformedRational(String),

    #[error("malformed algebra description: {0}")]
    InvalidAlgebra(String),

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k}): defect [{defect}]")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        /// Display form of the nonzero defect vector.
        defect: String,
    },

    #[error("lower central series stabilizes at a nonzero subspace: not nilpotent")]
    NotNilpotent,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("skew form has odd rank (internal)")]
    OddRank,

    #[error("canonical-form normalization cannot zero jump coordinate {0} (internal)")]
    NormalizationFailure(usize),

    #[error("matrix does not square to the identity")]
    NotInvolutive,

    #[error("matrix is not a Lie algebra homomorphism: bracket ({i}, {j}) has defect [{defect}]")]
    NotHomomorphism { i: usize, j: usize, defect: String },

    #[error("center has dimension {0}, expected a line")]
    CenterNotLine(usize),

    #[error("algebra is abelian; no Heisenberg triple exists")]
    AbelianAlgebra,

    #[error("construction failed: {0} (internal)")]
    ConstructionFailure(String),

    #[error("functional does not vanish on the +1 eigenspace")]
    FunctionalNotAntiInvariant,

    #[error("no vanishing witness found for a distinguished orbit (internal)")]
    WitnessSearchFailure,

    #[error("not a field: {0}")]
    NotAField(String),

    #[error("prime {p} is inadmissible: divides denominator {denominator}")]
    InadmissiblePrime { p: u64, denominator: String },

    #[error("orbit size {0} is not an even power of p (internal)")]
    NonSquareOrbit(u64),

    #[error("distinction multiplicity is not a rational integer: {0} (internal)")]
    NonIntegralMultiplicity(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
