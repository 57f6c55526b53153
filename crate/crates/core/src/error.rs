use thiserror::Error;

/// Errors raised by the forward and inverse solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient must be nonzero")]
    ZeroLeading,
    #[error("polynomial has degree zero; no roots to find")]
    DegreeZero,
    #[error("root clustering is ambiguous: cluster centres {0} and {1} lie within twice the tolerance")]
    AmbiguousClustering(usize, usize),
    #[error("degree mismatch: expected deg(num) = deg(den) - 1, got {num} and {den}")]
    DegreeMismatch { num: isize, den: isize },
    #[error("matrix is numerically singular at pivot {0}")]
    SingularMatrix(usize),
    #[error("need at least {needed} coefficients, got {got}")]
    InsufficientCoefficients { needed: usize, got: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("boundary polynomial degrees do not match the {0} configuration")]
    ConfigMismatch(&'static str),
    #[error("degenerate leading coefficients: alpha_l equals alpha_dot_l (r0 = r1)")]
    DegenerateLeading,
    #[error("Hankel determinant condition violated: Delta_{n} vanishes")]
    HankelConditionViolated { n: usize },
    #[error("the first Weyl coefficient must equal 1, got {0}")]
    WeylNotNormalized(String),
    #[error("the two spectra share an eigenvalue")]
    SpectraNotDisjoint,
    #[error("leading coefficient of E does not equal the one implied by R0 and R1")]
    LeadingMismatch,
    #[error("coefficient system for v0, v1 is singular")]
    SingularSystem,
    #[error("R0 and R1 share a root")]
    CommonRoot,
    #[error("expected {expected} eigenvalues, got {got}")]
    SpectrumSize { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
