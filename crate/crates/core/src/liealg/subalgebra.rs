use serde::Serialize;

use crate::linalg::{Matrix, Scalar};
use crate::ratpoly::{rational_to_f64, Rational};
use crate::Tolerance;

use super::{LieAlgebra, LieError};

/// A subalgebra given by a basis of coordinate vectors in the parent, with
/// the induced structure constants in that basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subalgebra<S> {
    parent: LieAlgebra,
    basis: Vec<Vec<S>>,
    /// `structure[i][j]` holds the coordinates of `[b_i, b_j]`.
    structure: Vec<Vec<Vec<S>>>,
    scale: f64,
}

impl<S: Scalar> Subalgebra<S> {
    /// Checks independence (rank threshold) and closure (closure threshold).
    pub fn new(parent: &LieAlgebra, basis: Vec<Vec<S>>, tol: &Tolerance) -> Result<Self, LieError> {
        let n = parent.dim();
        if let Some(v) = basis.iter().find(|v| v.len() != n) {
            return Err(LieError::PointLength { expected: n, got: v.len() });
        }
        let k = basis.len();
        let basis_size = basis.iter().flatten().map(Scalar::magnitude).fold(0.0, f64::max);
        let scale = structure_size(parent) * basis_size.max(f64::MIN_POSITIVE);
        if k > 0 && Matrix::from_rows(&basis).rank_scaled(tol.rank, basis_size) < k {
            return Err(LieError::DependentBasis);
        }
        let mut structure = vec![vec![vec![S::zero_value(); k]; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let v = parent.bracket(&basis[i], &basis[j]);
                let c = coordinates(&basis, &v, n, tol.closure, scale * basis_size)
                    .ok_or(LieError::NotClosed { i: i + 1, j: j + 1 })?;
                structure[j][i] = c.iter().map(|x| -x.clone()).collect();
                structure[i][j] = c;
            }
        }
        Ok(Subalgebra { parent: parent.clone(), basis, structure, scale })
    }

    pub fn parent(&self) -> &LieAlgebra {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    /// Coordinates of `[b_i, b_j]` in the subalgebra basis.
    pub fn bracket_coords(&self, i: usize, j: usize) -> &[S] {
        &self.structure[i][j]
    }

    /// Bracket of two elements given in subalgebra coordinates.
    pub fn bracket(&self, u: &[S], v: &[S]) -> Vec<S> {
        let k = self.dim();
        let mut out = vec![S::zero_value(); k];
        for i in 0..k {
            for j in 0..k {
                let coef = u[i].clone() * v[j].clone();
                if coef.is_exact_zero() {
                    continue;
                }
                for m in 0..k {
                    out[m] = out[m].clone() + coef.clone() * self.structure[i][j][m].clone();
                }
            }
        }
        out
    }

    /// Dimension of `[h, h]`.
    pub fn derived_dimension(&self, tol: &Tolerance) -> usize {
        let k = self.dim();
        let vecs: Vec<Vec<S>> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| self.structure[i][j].clone())
            .collect();
        if vecs.is_empty() {
            return 0;
        }
        Matrix::from_rows_with_cols(&vecs, k).rank_scaled(tol.rank, self.scale)
    }

    /// Basis of `[h, h]` in subalgebra coordinates.
    pub fn derived_basis(&self, tol: &Tolerance) -> Vec<Vec<S>> {
        let k = self.dim();
        let vecs: Vec<Vec<S>> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| self.structure[i][j].clone())
            .collect();
        if vecs.is_empty() {
            return Vec::new();
        }
        let (r, pivots) = Matrix::from_rows_with_cols(&vecs, k).rref_scaled(tol.rank, self.scale);
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// Whether `z` (subalgebra coordinates) commutes with every basis element.
    pub fn is_central(&self, z: &[S], tol: &Tolerance) -> bool {
        let k = self.dim();
        let zsize = z.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        (0..k).all(|m| {
            let mut e = vec![S::zero_value(); k];
            e[m] = S::one_value();
            let b = self.bracket(z, &e);
            b.iter().all(|v| crate::linalg::negligible(v, self.scale * zsize.max(f64::MIN_POSITIVE), tol.closure))
        })
    }
}

impl Subalgebra<Rational> {
    /// The subalgebra as a Lie algebra in its own right.
    pub fn induced_algebra(&self) -> LieAlgebra {
        let k = self.dim();
        let mut terms = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                for (m, c) in self.structure[i][j].iter().enumerate() {
                    terms.push((i, j, m, c.clone()));
                }
            }
        }
        LieAlgebra::from_terms_unchecked(k, terms).expect("indices in range")
    }
}

/// Largest structure constant magnitude, at least one.
fn structure_size(alg: &LieAlgebra) -> f64 {
    alg.brackets()
        .flat_map(|(_, _, ks)| ks.iter().map(|(_, c)| rational_to_f64(c).abs()))
        .fold(1.0, f64::max)
}

/// Coordinates of `v` in `basis`, or `None` when `v` is outside the span.
fn coordinates<S: Scalar>(basis: &[Vec<S>], v: &[S], n: usize, tol: f64, scale: f64) -> Option<Vec<S>> {
    let k = basis.len();
    let mut cols = basis.to_vec();
    cols.push(v.to_vec());
    let m = Matrix::from_columns(&cols, n);
    let (r, pivots) = m.rref_scaled(tol, scale.max(m.max_magnitude()));
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![S::zero_value(); k];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = r[(row, k)].clone();
    }
    Some(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizerClass {
    Abelian,
    B2PlusAbelian,
    HeisenbergPlusAbelian,
    Other,
}

impl std::fmt::Display for StabilizerClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StabilizerClass::Abelian => "abelian",
            StabilizerClass::B2PlusAbelian => "b2+abelian",
            StabilizerClass::HeisenbergPlusAbelian => "heisenberg+abelian",
            StabilizerClass::Other => "other",
        })
    }
}

/// Derived-algebra test: `[h,h] = 0` is abelian; a central derived line is
/// Heisenberg plus abelian; a non-central one is `b2` plus abelian; anything
/// larger is `Other`.
pub fn classify_stabilizer<S: Scalar>(h: &Subalgebra<S>, tol: &Tolerance) -> StabilizerClass {
    let derived = h.derived_basis(tol);
    match derived.len() {
        0 => StabilizerClass::Abelian,
        1 if h.is_central(&derived[0], tol) => StabilizerClass::HeisenbergPlusAbelian,
        1 => StabilizerClass::B2PlusAbelian,
        _ => StabilizerClass::Other,
    }
}

/// `g_x = {xi : ad*_xi x = 0}`, the kernel of `A_x`.
pub fn stabilizer<S: Scalar>(alg: &LieAlgebra, x: &[S], tol: &Tolerance) -> Result<Subalgebra<S>, LieError> {
    if x.len() != alg.dim() {
        return Err(LieError::PointLength { expected: alg.dim(), got: x.len() });
    }
    let a = alg.structure_matrix_at(x);
    let xsize = x.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    let basis = a.kernel_scaled(tol.rank, structure_size(alg) * xsize);
    Subalgebra::new(alg, basis, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{abelian, b2, heisenberg, sl2};
    use crate::ratpoly::int;
    use num_complex::Complex64;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn b2_stabilizers() {
        let whole = stabilizer(&b2(), &[int(1), int(0)], &tol()).unwrap();
        assert_eq!(whole.dim(), 2);
        assert_eq!(classify_stabilizer(&whole, &tol()), StabilizerClass::B2PlusAbelian);
        assert_eq!(stabilizer(&b2(), &[int(0), int(1)], &tol()).unwrap().dim(), 0);
    }

    #[test]
    fn heisenberg_center() {
        let h = stabilizer(&heisenberg(1), &[int(2), int(-1), int(3)], &tol()).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.basis()[0][0], int(0));
        assert_eq!(h.basis()[0][1], int(0));
    }

    #[test]
    fn classes() {
        let t = tol();
        let whole = |alg: &LieAlgebra| {
            let basis = (0..alg.dim()).map(|i| crate::linalg::unit::<Rational>(alg.dim(), i)).collect();
            Subalgebra::new(alg, basis, &t).unwrap()
        };
        assert_eq!(classify_stabilizer(&whole(&b2()), &t), StabilizerClass::B2PlusAbelian);
        assert_eq!(classify_stabilizer(&whole(&heisenberg(1)), &t), StabilizerClass::HeisenbergPlusAbelian);
        assert_eq!(classify_stabilizer(&whole(&abelian(4)), &t), StabilizerClass::Abelian);
        assert_eq!(classify_stabilizer(&whole(&sl2()), &t), StabilizerClass::Other);
        for k in 0..4 {
            assert_eq!(classify_stabilizer(&whole(&b2().direct_sum(&abelian(k))), &t), StabilizerClass::B2PlusAbelian);
            assert_eq!(
                classify_stabilizer(&whole(&heisenberg(2).direct_sum(&abelian(k))), &t),
                StabilizerClass::HeisenbergPlusAbelian
            );
        }
    }

    #[test]
    fn numeric_stabilizer_matches_exact() {
        let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let h = stabilizer(&b2(), &x, &tol()).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(classify_stabilizer(&h, &tol()), StabilizerClass::B2PlusAbelian);
    }

    #[test]
    fn closure_violation_detected() {
        let sl = sl2();
        let basis = vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]];
        assert_eq!(Subalgebra::new(&sl, basis, &tol()).unwrap_err(), LieError::NotClosed { i: 1, j: 2 });
        let dep = vec![vec![int(1), int(0), int(0)], vec![int(2), int(0), int(0)]];
        assert_eq!(Subalgebra::new(&sl, dep, &tol()).unwrap_err(), LieError::DependentBasis);
    }
}
