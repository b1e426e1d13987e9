//! Toolkit for `sl_q(2)`-invariant Yang-Baxter solutions at roots of unity.
//!
//! The crate builds the representation theory of `sl_q(2)` at `q = i` (and
//! generic `q`), the projection-operator bases on tensor products of the
//! fundamental representation, a catalog of R-matrix families over those
//! bases, residual checkers for the Yang-Baxter and Jimbo relations, the
//! associated integrable spin-chain Hamiltonians, their free-fermion
//! spectra via Jordan-Wigner, and the non-unitary dynamics generated by
//! non-diagonalizable Hamiltonians.

pub mod chain;
pub mod evolve;
pub mod fermion;
pub mod numlin;
pub mod projlib;
pub mod qrep;
pub mod rcat;
pub mod report;
pub mod ybecheck;

pub use numlin::cyc::ExactCyc8;
pub use numlin::mat::CMat;
pub use numlin::scalar::Scalar;

pub use qrep::{QParam, RepSpec};

/// Dense-matrix capacity cap: operators above this dimension are rejected.
pub const MAX_DENSE_DIM: usize = 4096;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Requested dense dimension exceeds [`MAX_DENSE_DIM`].
    Capacity { dim: usize },
    /// Matrix shape mismatch for the attempted operation.
    Shape { expected: String, got: String },
    /// Input that must be square is not.
    NotSquare { rows: usize, cols: usize },
    /// Spectral data too close to degenerate for the requested construction.
    DegenerateSpectrum { gap: f64 },
    /// Deformation parameters q = +-1 are outside the domain of the Casimir.
    QUnit,
    /// Dimension exceeds the root-of-unity truncation bound.
    DimExceedsRootBound { dim: usize, bound: usize },
    /// Mixing representations built over different deformation parameters.
    QMismatch,
    /// Parameter hit a pole of a coefficient closure.
    ParameterPole { family: String, detail: String },
    /// Unknown identifier (family id, hamiltonian id, ...).
    UnknownId(String),
    /// Evolution did not converge to a direction.
    NonConvergent { detail: String },
    /// A fermionic polynomial was not quadratic where one was required.
    NotQuadratic,
    /// Matrix exponential argument norm too large for the accuracy contract.
    ExpmNorm { norm: f64 },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::Capacity { dim } => {
                write!(f, "dense dimension {dim} exceeds capacity {MAX_DENSE_DIM}")
            }
            Error::Shape { expected, got } => write!(f, "shape mismatch: expected {expected}, got {got}"),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::DegenerateSpectrum { gap } => write!(
                f,
                "eigenvalue gap {gap:.3e} below degeneracy threshold; use the indecomposable construction"
            ),
            Error::QUnit => write!(f, "q = +-1 is outside the deformed-algebra domain"),
            Error::DimExceedsRootBound { dim, bound } => {
                write!(f, "irrep dimension {dim} exceeds root-of-unity bound {bound}")
            }
            Error::QMismatch => write!(f, "representations use different deformation parameters"),
            Error::ParameterPole { family, detail } => write!(f, "{family}: parameter at pole: {detail}"),
            Error::UnknownId(id) => write!(f, "unknown id: {id}"),
            Error::NonConvergent { detail } => write!(f, "no convergent direction: {detail}"),
            Error::NotQuadratic => write!(f, "fermionic polynomial is not quadratic"),
            Error::ExpmNorm { norm } => write!(f, "matrix exponential argument norm {norm:.3e} too large"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
