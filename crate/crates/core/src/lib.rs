//! Exact verification of complex symplectic structures on semi-direct
//! product Lie algebras.
//!
//! Everything here is linear algebra over ℚ (or ℚ(i) where a
//! complexification is needed), so each check is a strict equality. The
//! layers build on each other:
//!
//! - [`exact`]: rationals, matrices, sparse exterior forms, signatures.
//! - [`lie`]: Lie algebras by structure constants and the Chevalley–Eilenberg
//!   differential.
//! - [`geometry`]: complex structures, symplectic forms and the checkers
//!   that certify a complex symplectic pair.
//! - [`semidirect`]: representations, flat torsion-free symplectic
//!   connections, and the mirror construction.
//! - [`dga`]: the differential Gerstenhaber algebras attached to a complex
//!   or symplectic structure.
//! - [`tower`]: the hypersymplectic structure on `𝔤⋉V` and the
//!   dimension-doubling iteration.
//! - [`catalog`]: worked examples and the 2-step nilpotent families.
//!
//! ```
//! use csymlie::catalog;
//! use csymlie::semidirect::verify_self_mirror;
//!
//! let kt4 = catalog::entry("kt4").unwrap();
//! let report = verify_self_mirror(&kt4.connection).unwrap();
//! assert!(report.passed());
//! ```

pub mod catalog;
pub mod dga;
pub mod exact;
pub mod geometry;
pub mod lie;
pub mod report;
pub mod semidirect;
pub mod tower;

pub use exact::{ExteriorForm, Field, GaussianScalar, Matrix, Scalar, Subspace};
pub use lie::LieAlgebra;
pub use report::{Check, Report, Status};

use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({}, {})", .0 + 1, .1 + 1)]
    NotSymmetric(usize, usize),
    #[error("matrix is not antisymmetric at ({}, {})", .0 + 1, .1 + 1)]
    NotAntisymmetric(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("rejected: {0}")]
    Rejected(Rejection),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// The failed checks when a constructor refused its input.
    pub fn failures(&self) -> &[Check] {
        match self {
            Error::Rejected(r) => &r.0,
            _ => &[],
        }
    }
}

/// The checks that made a constructor refuse its input.
#[derive(Debug, Clone)]
pub struct Rejection(pub Vec<Check>);

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.summary()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl From<Report> for Error {
    fn from(r: Report) -> Self {
        Error::Rejected(Rejection(r.failures().cloned().collect()))
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/lie.md")]
    mod lie {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/semidirect.md")]
    mod semidirect {}
    #[doc = include_str!("../../../book/src/dga.md")]
    mod dga {}
    #[doc = include_str!("../../../book/src/tower.md")]
    mod tower {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
}
