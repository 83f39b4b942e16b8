//! Exact scalars, matrices, exterior forms and signatures.

pub mod form;
pub mod matrix;
pub mod scalar;
pub mod signature;

pub use form::{ExteriorForm, FormFile};
pub use matrix::{Matrix, SquareMatrix, Subspace};
pub use scalar::{frac, int, Field, GaussianScalar, Scalar};
pub use signature::{signature, Signature};
