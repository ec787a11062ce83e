//! The Lie–Poisson and frozen-argument brackets on polynomials over `g*`,
//! and the semi-invariant test.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::liealg::LieAlgebra;
use crate::ratpoly::{format_rational, MultiPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("polynomial has {got} variables, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero polynomial is not a semi-invariant candidate")]
    ZeroPolynomial,
    #[error("character does not vanish on [e{i}, e{j}]")]
    CharacterViolation { i: usize, j: usize },
}

fn check_dims(alg: &LieAlgebra, polys: &[&MultiPoly]) -> Result<(), PoissonError> {
    match polys.iter().find(|p| p.nvars() != alg.dim()) {
        Some(p) => Err(PoissonError::DimensionMismatch { expected: alg.dim(), got: p.nvars() }),
        None => Ok(()),
    }
}

/// `sum_{i<j,k} c_ij^k w_k(x) (d_i f d_j g - d_j f d_i g)` where `w_k`
/// supplies the pairing: `x_k` for the Lie–Poisson bracket, `a_k` for the
/// frozen one.
fn bracket_with(alg: &LieAlgebra, f: &MultiPoly, g: &MultiPoly, w: impl Fn(usize) -> MultiPoly) -> MultiPoly {
    let n = alg.dim();
    let df = f.gradient();
    let dg = g.gradient();
    let mut out = MultiPoly::zero(n);
    for (i, j, ks) in alg.brackets() {
        let cross = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
        if cross.is_zero() {
            continue;
        }
        let pairing = ks
            .iter()
            .fold(MultiPoly::zero(n), |acc, (k, c)| &acc + &w(*k).scale(c));
        out = &out + &(&pairing * &cross);
    }
    out
}

/// `{f, g}(x) = <x, [df(x), dg(x)]>`.
pub fn lie_poisson_bracket(alg: &LieAlgebra, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, PoissonError> {
    check_dims(alg, &[f, g])?;
    let n = alg.dim();
    Ok(bracket_with(alg, f, g, |k| MultiPoly::var(n, k)))
}

/// `{f, g}_a(x) = <a, [df(x), dg(x)]>`.
pub fn frozen_bracket(
    alg: &LieAlgebra,
    a: &[Rational],
    f: &MultiPoly,
    g: &MultiPoly,
) -> Result<MultiPoly, PoissonError> {
    check_dims(alg, &[f, g])?;
    if a.len() != alg.dim() {
        return Err(PoissonError::DimensionMismatch { expected: alg.dim(), got: a.len() });
    }
    let n = alg.dim();
    Ok(bracket_with(alg, f, g, |k| MultiPoly::constant(n, a[k].clone())))
}

/// The character `chi_f` of a semi-invariant: `{f, x_i} = chi_f(e_i) f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Rational>,
}

impl Character {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(num_traits::Zero::is_zero)
    }

    /// `chi` applied to a coordinate vector.
    pub fn apply(&self, v: &[Rational]) -> Rational {
        crate::linalg::dot(&self.values, v)
    }
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.values.iter().map(format_rational))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiInvariance {
    SemiInvariant(Character),
    /// `{f, x_i}` is not a constant multiple of `f`; `basis` is 1-based.
    NotSemiInvariant { basis: usize },
}

impl SemiInvariance {
    pub fn character(&self) -> Option<&Character> {
        match self {
            SemiInvariance::SemiInvariant(c) => Some(c),
            SemiInvariance::NotSemiInvariant { .. } => None,
        }
    }
}

/// Divides `{f, x_i}` by `f` for every `i`; all quotients must be constants.
/// The resulting character is checked to vanish on all brackets.
pub fn is_semiinvariant(alg: &LieAlgebra, f: &MultiPoly) -> Result<SemiInvariance, PoissonError> {
    check_dims(alg, &[f])?;
    if f.is_zero() {
        return Err(PoissonError::ZeroPolynomial);
    }
    let n = alg.dim();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let b = bracket_with(alg, f, &MultiPoly::var(n, i), |k| MultiPoly::var(n, k));
        match b.div_exact(f) {
            Some(q) if q.is_constant() => values.push(q.constant_term()),
            _ => return Ok(SemiInvariance::NotSemiInvariant { basis: i + 1 }),
        }
    }
    let chi = Character { values };
    for (i, j, _) in alg.brackets() {
        if !chi.apply(&alg.bracket_basis(i, j)).is_zero() {
            return Err(PoissonError::CharacterViolation { i: i + 1, j: j + 1 });
        }
    }
    Ok(SemiInvariance::SemiInvariant(chi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketKind {
    LiePoisson,
    Frozen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommuteWitness {
    /// 0-based positions in the input list.
    pub first: usize,
    pub second: usize,
    pub kind: BracketKind,
    pub bracket: MultiPoly,
}

impl Serialize for CommuteWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CommuteWitness", 4)?;
        st.serialize_field("first", &(self.first + 1))?;
        st.serialize_field("second", &(self.second + 1))?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("bracket", &self.bracket.to_string())?;
        st.end()
    }
}

/// Checks `{p, q} = 0` and `{p, q}_a = 0` exactly for every pair, in
/// lexicographic pair order; returns the first failure.
pub fn check_pairwise_commute(
    alg: &LieAlgebra,
    a: &[Rational],
    polys: &[MultiPoly],
) -> Result<Option<CommuteWitness>, PoissonError> {
    for (i, p) in polys.iter().enumerate() {
        for (j, q) in polys.iter().enumerate().skip(i + 1) {
            let lp = lie_poisson_bracket(alg, p, q)?;
            if !lp.is_zero() {
                return Ok(Some(CommuteWitness { first: i, second: j, kind: BracketKind::LiePoisson, bracket: lp }));
            }
            let fr = frozen_bracket(alg, a, p, q)?;
            if !fr.is_zero() {
                return Ok(Some(CommuteWitness { first: i, second: j, kind: BracketKind::Frozen, bracket: fr }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{b2, heisenberg, sl2};
    use crate::ratpoly::int;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn b2_brackets() {
        let alg = b2();
        assert_eq!(lie_poisson_bracket(&alg, &x(2, 1), &x(2, 0)).unwrap(), -x(2, 1));
        assert_eq!(
            frozen_bracket(&alg, &[int(0), int(1)], &x(2, 1), &x(2, 0)).unwrap(),
            MultiPoly::constant(2, int(-1))
        );
        let f = &x(2, 0) * &x(2, 1);
        assert!(lie_poisson_bracket(&alg, &f, &f).unwrap().is_zero());
        assert!(frozen_bracket(&alg, &[int(1), int(1)], &f, &MultiPoly::one(2)).unwrap().is_zero());
    }

    #[test]
    fn casimir_is_central() {
        let alg = sl2();
        let c = &alg.invariants()[0];
        for i in 0..3 {
            assert!(lie_poisson_bracket(&alg, c, &x(3, i)).unwrap().is_zero());
        }
    }

    #[test]
    fn semi_invariants() {
        let SemiInvariance::SemiInvariant(chi) = is_semiinvariant(&b2(), &x(2, 1)).unwrap() else {
            panic!("x2 is a semi-invariant of b2")
        };
        assert_eq!(chi.values(), &[int(-1), int(0)]);
        let h = is_semiinvariant(&heisenberg(1), &x(3, 2)).unwrap();
        assert!(h.character().unwrap().is_trivial());
        assert_eq!(is_semiinvariant(&b2(), &x(2, 0)).unwrap(), SemiInvariance::NotSemiInvariant { basis: 2 });
        assert_eq!(is_semiinvariant(&b2(), &MultiPoly::zero(2)), Err(PoissonError::ZeroPolynomial));
    }

    #[test]
    fn commute_witness() {
        let alg = b2();
        let w = check_pairwise_commute(&alg, &[int(0), int(1)], &[x(2, 0), x(2, 1)]).unwrap().unwrap();
        assert_eq!((w.first, w.second, w.kind), (0, 1, BracketKind::LiePoisson));
        assert_eq!(w.bracket, x(2, 1));
        assert_eq!(check_pairwise_commute(&alg, &[int(0), int(1)], &[x(2, 1)]).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            lie_poisson_bracket(&b2(), &x(3, 0), &x(2, 0)),
            Err(PoissonError::DimensionMismatch { expected: 2, got: 3 })
        );
    }
}
