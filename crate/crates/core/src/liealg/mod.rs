//! Finite-dimensional Lie algebras given by structure constants.
//!
//! Indices are 0-based in the API and 1-based in text, JSON and error
//! witnesses. Only brackets `[e_i, e_j]` with `i < j` are stored, so
//! antisymmetry holds by construction.

mod catalog;
mod json;
mod subalgebra;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

pub use catalog::{abelian, b2, catalog, gl2, heisenberg, sl2, so3};
pub use json::{AlgebraDocument, BracketEntry, Coefficient};
pub use subalgebra::{classify_stabilizer, stabilizer, StabilizerClass, Subalgebra};

use crate::linalg::{Matrix, Scalar};
use crate::poisson::lie_poisson_bracket;
use crate::ratpoly::{format_rational, MultiPoly, PolyError, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [e{i}, e{i}] must vanish")]
    DiagonalBracket { i: usize },
    #[error("bracket [e{i}, e{j}] given more than once")]
    DuplicateBracket { i: usize, j: usize },
    #[error("Jacobi identity fails for (e{i}, e{j}, e{l}): coefficient of e{k} is {}", format_rational(.value))]
    JacobiViolation { i: usize, j: usize, l: usize, k: usize, value: Rational },
    #[error("invariant {index} has {nvars} variables, algebra has dimension {dim}")]
    InvariantDimension { index: usize, nvars: usize, dim: usize },
    #[error("invariant {index} is not coadjoint invariant: {{f, x{basis}}} = {bracket}")]
    InvariantViolation { index: usize, basis: usize, bracket: String },
    #[error("unknown catalog algebra `{name}`")]
    UnknownCatalog { name: String },
    #[error("invalid algebra JSON: {message}")]
    Json { message: String },
    #[error("invalid rational coefficient `{text}`")]
    Coefficient { text: String },
    #[error("point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("subalgebra basis is linearly dependent")]
    DependentBasis,
    #[error("span is not closed under the bracket: [b{i}, b{j}] leaves it")]
    NotClosed { i: usize, j: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    name: Option<String>,
    structure: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    invariants: Vec<MultiPoly>,
}

impl LieAlgebra {
    /// Builds and validates an algebra from bracket terms `(i, j, k, c)`
    /// meaning `[e_i, e_j]` contains `c e_k`. Terms with `i > j` are stored
    /// with the opposite sign; repeated terms for the same `(i, j, k)` add up.
    pub fn new(
        dim: usize,
        terms: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, LieError> {
        let alg = Self::from_terms_unchecked(dim, terms)?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Like [`LieAlgebra::new`] but skips the Jacobi check; use
    /// [`LieAlgebra::validate`] to run it later.
    pub fn from_terms_unchecked(
        dim: usize,
        terms: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, LieError> {
        let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for (i, j, k, c) in terms {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx + 1, dim });
                }
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(LieError::DiagonalBracket { i: i + 1 });
            }
            let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
            *acc.entry(key).or_default().entry(k).or_insert_with(Rational::zero) += c;
        }
        let structure = acc
            .into_iter()
            .map(|(key, ks)| (key, ks.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()))
            .filter(|(_, ks)| !ks.is_empty())
            .collect();
        Ok(LieAlgebra { dim, name: None, structure, invariants: Vec::new() })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Attaches coadjoint invariants after checking `{f, x_i} = 0` for all `i`.
    pub fn with_invariants(mut self, invariants: Vec<MultiPoly>) -> Result<Self, LieError> {
        self.invariants = invariants;
        self.check_invariants()?;
        Ok(self)
    }

    pub(crate) fn with_invariants_unchecked(mut self, invariants: Vec<MultiPoly>) -> Self {
        self.invariants = invariants;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn invariants(&self) -> &[MultiPoly] {
        &self.invariants
    }

    /// `c_ij^k` with the sign synthesized for `i > j`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rational {
        let (key, sign) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let v = self
            .structure
            .get(&key)
            .and_then(|ks| ks.iter().find(|(kk, _)| *kk == k))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero);
        if sign {
            -v
        } else {
            v
        }
    }

    /// Stored brackets `(i, j, [(k, c_ij^k)])` with `i < j`, in order.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Rational)])> {
        self.structure.iter().map(|(&(i, j), ks)| (i, j, ks.as_slice()))
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for k in 0..self.dim {
            out[k] = self.c(i, j, k);
        }
        out
    }

    /// `[u, v]` for coordinate vectors.
    pub fn bracket<S: Scalar>(&self, u: &[S], v: &[S]) -> Vec<S> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = vec![S::zero_value(); self.dim];
        for (&(i, j), ks) in &self.structure {
            let coef = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            if coef.is_exact_zero() {
                continue;
            }
            for (k, c) in ks {
                out[*k] = out[*k].clone() + coef.clone() * S::from_rational(c);
            }
        }
        out
    }

    /// `A_x` with entries `sum_k c_ij^k x_k`.
    pub fn structure_matrix_at<S: Scalar>(&self, x: &[S]) -> Matrix<S> {
        assert_eq!(x.len(), self.dim, "point length");
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (&(i, j), ks) in &self.structure {
            let v = ks
                .iter()
                .fold(S::zero_value(), |acc, (k, c)| acc + S::from_rational(c) * x[*k].clone());
            m[(j, i)] = -v.clone();
            m[(i, j)] = v;
        }
        m
    }

    /// Checks the Jacobi identity exactly and the attached invariants.
    pub fn validate(&self) -> Result<(), LieError> {
        self.check_jacobi()?;
        self.check_invariants()
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::from_integer(1.into());
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                let eij = self.bracket_basis(i, j);
                for l in j + 1..n {
                    let ejl = self.bracket_basis(j, l);
                    let eli = self.bracket_basis(l, i);
                    let a = self.bracket(&eij, &unit(l));
                    let b = self.bracket(&ejl, &unit(i));
                    let c = self.bracket(&eli, &unit(j));
                    for k in 0..n {
                        let v = &a[k] + &b[k] + &c[k];
                        if !v.is_zero() {
                            return Err(LieError::JacobiViolation {
                                i: i + 1,
                                j: j + 1,
                                l: l + 1,
                                k: k + 1,
                                value: v,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_invariants(&self) -> Result<(), LieError> {
        for (idx, f) in self.invariants.iter().enumerate() {
            if f.nvars() != self.dim {
                return Err(LieError::InvariantDimension { index: idx + 1, nvars: f.nvars(), dim: self.dim });
            }
            for i in 0..self.dim {
                let b = lie_poisson_bracket(self, f, &MultiPoly::var(self.dim, i))
                    .expect("dimensions checked above");
                if !b.is_zero() {
                    return Err(LieError::InvariantViolation { index: idx + 1, basis: i + 1, bracket: b.to_string() });
                }
            }
        }
        Ok(())
    }

    /// Block-diagonal direct sum; invariants of both summands are lifted.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut structure = self.structure.clone();
        for (&(i, j), ks) in &other.structure {
            let shifted = ks.iter().map(|(k, c)| (k + self.dim, c.clone())).collect();
            structure.insert((i + self.dim, j + self.dim), shifted);
        }
        let mut invariants: Vec<MultiPoly> = self.invariants.iter().map(|f| f.embed(0, n)).collect();
        invariants.extend(other.invariants.iter().map(|f| f.embed(self.dim, n)));
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        LieAlgebra { dim: n, name, structure, invariants }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::int;

    #[test]
    fn sign_is_synthesized() {
        let alg = LieAlgebra::new(2, [(1, 0, 1, int(-1))]).unwrap();
        assert_eq!(alg.c(0, 1, 1), int(1));
        assert_eq!(alg.c(1, 0, 1), int(-1));
        assert_eq!(alg.c(0, 0, 0), int(0));
    }

    #[test]
    fn diagonal_bracket_rejected() {
        assert_eq!(
            LieAlgebra::new(2, [(0, 0, 1, int(1))]),
            Err(LieError::DiagonalBracket { i: 1 })
        );
    }

    #[test]
    fn corrupted_sl2_fails_jacobi() {
        // [h,e] = 2e, [h,f] = +2f (should be -2f), [e,f] = h
        let err = LieAlgebra::new(3, [(0, 1, 1, int(2)), (0, 2, 2, int(2)), (1, 2, 0, int(1))]).unwrap_err();
        assert!(matches!(err, LieError::JacobiViolation { i: 1, j: 2, l: 3, .. }));
    }

    #[test]
    fn structure_matrix_is_skew() {
        let alg = sl2();
        let x = vec![int(1), int(2), int(3)];
        let m = alg.structure_matrix_at(&x);
        assert!(m.is_skew(0.0));
        assert_eq!(m[(1, 2)], int(1));
        assert_eq!(m[(0, 1)], int(4));
    }

    #[test]
    fn direct_sum_blocks() {
        let s = b2().direct_sum(&heisenberg(1));
        assert_eq!(s.dim(), 5);
        assert_eq!(s.c(0, 1, 1), int(1));
        assert_eq!(s.c(2, 3, 4), int(1));
        assert_eq!(s.brackets().count(), 2);
        assert_eq!(s.invariants(), &[MultiPoly::var(5, 4)]);
        assert!(s.validate().is_ok());
        assert_eq!(abelian(2).direct_sum(&abelian(3)).brackets().count(), 0);
    }
}
