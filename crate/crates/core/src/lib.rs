//! Argument-shift subalgebras of Lie–Poisson algebras in exact arithmetic.
//!
//! The crate computes, for a Lie algebra given by structure constants, the
//! index, the fundamental semi-invariant `p_g`, classical and extended
//! Mischenko–Fomenko generator sets, and decides their completeness both
//! directly (Jacobian rank) and through the stabilizer criterion on the
//! codimension-one singular set. The `pencil` module provides the linear
//! algebra of pairs of skew forms used along the way.

pub mod criterion;
pub mod liealg;
pub mod linalg;
pub mod pencil;
pub mod poisson;
pub mod random;
pub mod ratpoly;
pub mod shiftalg;
pub mod singular;

pub use criterion::{CriterionError, CriterionOptions, Theorem2Verdict};
pub use liealg::{LieAlgebra, LieError, StabilizerClass, Subalgebra};
pub use pencil::{FormPair, PencilError, PencilReport};
pub use poisson::PoissonError;
pub use ratpoly::{MultiPoly, PolyError, Rational, Root, UniPoly};
pub use shiftalg::{GeneratorSet, ShiftError, ShiftPoint};
pub use singular::{IndexCertificate, SingularError};

use serde::Serialize;

/// Thresholds for computations that fall back to floating point.
///
/// Exact rational computations ignore these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    /// Relative threshold for numeric rank decisions.
    pub rank: f64,
    /// Relative threshold for closure and identity residuals.
    pub closure: f64,
    /// Relative residual a numeric polynomial root must reach.
    pub root: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rank: 1e-9, closure: 1e-7, root: 1e-9 }
    }
}
