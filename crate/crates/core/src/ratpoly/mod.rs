//! Exact rational scalars and polynomials.
//!
//! [`MultiPoly`] is a sparse polynomial in `x1 .. xn` over the rationals and
//! models elements of the symmetric algebra of a Lie algebra, i.e. polynomial
//! functions on the dual space. [`UniPoly`] is a dense univariate polynomial
//! used for restrictions of a `MultiPoly` to a line.

mod gcd;
mod monomial;
mod multipoly;
mod ring;
mod roots;
mod text;
mod unipoly;

pub use gcd::{gcd_multivariate, squarefree_part};
pub use monomial::Monomial;
pub use multipoly::MultiPoly;
pub use ring::Ring;
pub use roots::{univariate_distinct_roots, Root, RootOptions};
pub use text::{format_rational, parse_rational};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("gcd certification failed: candidate does not divide {which}")]
    GcdCertification { which: &'static str },
    #[error("zero polynomial has no roots to enumerate")]
    ZeroPolynomial,
    #[error("cannot parse polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // numerator or denominator overflowed f64; go through a scaled quotient
            let n = r.numer().bits() as i64;
            let d = r.denom().bits() as i64;
            let shift = n - d;
            let scaled = if shift > 0 {
                Rational::new(r.numer().clone(), r.denom().clone() << shift as usize)
            } else {
                Rational::new(r.numer().clone() << (-shift) as usize, r.denom().clone())
            };
            scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
        }
    }
}

/// Least common multiple of the denominators and gcd of the numerators.
pub(crate) fn content_parts<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> (BigInt, BigInt) {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
        gcd = gcd.gcd(c.numer());
    }
    (lcm, gcd.abs())
}
