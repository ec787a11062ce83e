//! The structure matrix `A_x`, the index, Pfaffians of principal minors and
//! the fundamental semi-invariant `p_g`.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::liealg::LieAlgebra;
use crate::linalg::{exact_rank, Matrix, Scalar};
use crate::poisson::{is_semiinvariant, PoissonError, SemiInvariance};
use crate::random;
use crate::ratpoly::{
    format_rational, gcd_multivariate, squarefree_part, univariate_distinct_roots, MultiPoly, PolyError, Rational,
    Ring, Root,
};
use crate::Tolerance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("Pfaffian needs an even-size matrix, got size {size}")]
    OddSize { size: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkew { i: usize, j: usize },
    #[error("no principal {t}x{t} Pfaffian is nonzero")]
    AllPfaffiansVanish { t: usize },
    #[error("p_g failed the semi-invariant check: {0}")]
    NotSemiInvariant(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

/// `A_x` as a matrix of linear forms.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureMatrix {
    dim: usize,
    entries: Vec<Vec<MultiPoly>>,
}

impl StructureMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Vec<MultiPoly>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    /// Evaluates every linear form at `x`.
    pub fn at<S: Scalar>(&self, x: &[S]) -> Matrix<S> {
        assert_eq!(x.len(), self.dim, "point length");
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut v = S::zero_value();
                for (mono, c) in self.entries[i][j].terms() {
                    let c = S::from_rational(c);
                    v = match mono.exponents().iter().position(|&e| e > 0) {
                        Some(k) => v + c * x[k].clone(),
                        None => v + c,
                    };
                }
                m[(i, j)] = v;
            }
        }
        m
    }
}

pub fn structure_matrix(alg: &LieAlgebra) -> StructureMatrix {
    let n = alg.dim();
    let mut entries = vec![vec![MultiPoly::zero(n); n]; n];
    for (i, j, ks) in alg.brackets() {
        let coeffs: Vec<Rational> = (0..n)
            .map(|k| ks.iter().find(|(kk, _)| *kk == k).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero))
            .collect();
        let form = MultiPoly::linear(&coeffs);
        entries[j][i] = -&form;
        entries[i][j] = form;
    }
    StructureMatrix { dim: n, entries }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCertificate {
    pub index: usize,
    /// Generic rank of `A_x`, `dim - index`.
    pub t: usize,
    /// Points where the rank `t` was observed.
    pub witness_points: Vec<Vec<Rational>>,
    pub trials: usize,
}

impl Serialize for IndexCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pts: Vec<Vec<String>> =
            self.witness_points.iter().map(|p| p.iter().map(format_rational).collect()).collect();
        let mut st = s.serialize_struct("IndexCertificate", 4)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("witness_points", &pts)?;
        st.serialize_field("trials", &self.trials)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IndexOptions {
    /// Consecutive points without a rank increase before stopping.
    pub window: usize,
    pub seed: u64,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions { window: 8, seed: 0 }
    }
}

/// `ind g = dim g - max rank A_x`, with the maximum taken over random
/// rational points until it is stable for `window` points. Each observed
/// rank is exact, so the result can only overestimate the index when every
/// sampled point lies on the rank-drop locus.
pub fn index(alg: &LieAlgebra) -> IndexCertificate {
    index_with(alg, &IndexOptions::default())
}

pub fn index_with(alg: &LieAlgebra, opts: &IndexOptions) -> IndexCertificate {
    let n = alg.dim();
    let ceiling = n - n % 2;
    let mut best = 0;
    let mut witnesses: Vec<Vec<Rational>> = Vec::new();
    let mut stable = 0;
    let mut trials = 0;
    while stable < opts.window && !(best == ceiling && !witnesses.is_empty()) {
        let mut rng = random::rng_for(opts.seed, trials as u64);
        let x = random::point(&mut rng, n, random::height_for_trial(trials));
        trials += 1;
        let rank = exact_rank(&alg.structure_matrix_at(&x));
        if rank > best || witnesses.is_empty() {
            if rank > best {
                best = rank;
            }
            witnesses = vec![x];
            stable = 0;
        } else {
            if rank == best && witnesses.len() < opts.window {
                witnesses.push(x);
            }
            stable += 1;
        }
    }
    IndexCertificate { index: n - best, t: best, witness_points: witnesses, trials }
}

/// Exact or numeric corank of `A_x`.
pub fn corank_at<S: Scalar>(alg: &LieAlgebra, x: &[S], tol: &Tolerance) -> usize {
    let m = alg.structure_matrix_at(x);
    let rank = if S::EXACT {
        m.rank(0.0)
    } else {
        let xsize = x.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        let csize = alg
            .brackets()
            .flat_map(|(_, _, ks)| ks.iter().map(|(_, c)| c.magnitude()))
            .fold(1.0, f64::max);
        m.rank_scaled(tol.rank, xsize * csize)
    };
    alg.dim() - rank
}

/// Memoized first-row expansion of Pfaffians of principal submatrices,
/// keyed by the bitmask of retained indices. Submatrices share the table, so
/// evaluating many principal minors of one matrix reuses work.
pub struct PfaffianExpander<'a, R: Ring> {
    m: &'a [Vec<R>],
    unit: R,
    memo: HashMap<u64, R>,
}

impl<'a, R: Ring> PfaffianExpander<'a, R> {
    /// `unit` is the multiplicative identity, the Pfaffian of the empty matrix.
    pub fn new(m: &'a [Vec<R>], unit: R) -> Result<Self, SingularError> {
        check_skew(m)?;
        assert!(m.len() <= 64, "at most 64 rows supported");
        Ok(PfaffianExpander { m, unit, memo: HashMap::new() })
    }

    /// Pfaffian of the principal submatrix on the set bits of `mask`.
    pub fn pf(&mut self, mask: u64) -> R {
        if mask == 0 {
            return self.unit.clone();
        }
        if mask.count_ones() % 2 == 1 {
            return self.unit.zero_like();
        }
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let idx: Vec<usize> = (0..64).filter(|&b| mask >> b & 1 == 1).collect();
        let s0 = idx[0];
        let rest = mask & !(1u64 << s0);
        let mut acc = self.unit.zero_like();
        for (k, &sk) in idx.iter().enumerate().skip(1) {
            let e = &self.m[s0][sk];
            if Ring::is_zero(e) {
                continue;
            }
            let sub = self.pf(rest & !(1u64 << sk));
            if Ring::is_zero(&sub) {
                continue;
            }
            let term = e.mul(&sub);
            acc = if k % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

fn check_skew<R: Ring>(m: &[Vec<R>]) -> Result<(), SingularError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(SingularError::NotSquare);
    }
    for i in 0..n {
        for j in i..n {
            if !Ring::is_zero(&m[i][j].add(&m[j][i])) {
                return Err(SingularError::NotSkew { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

/// Pfaffian by first-row expansion; `Pf(M)^2 = det(M)`. `unit` is the
/// multiplicative identity of the entry ring.
pub fn pfaffian<R: Ring>(m: &[Vec<R>], unit: &R) -> Result<R, SingularError> {
    if m.len() % 2 == 1 {
        return Err(SingularError::OddSize { size: m.len() });
    }
    let mut ex = PfaffianExpander::new(m, unit.clone())?;
    let mask = if m.is_empty() { 0 } else { u64::MAX >> (64 - m.len()) };
    Ok(ex.pf(mask))
}

/// Bitmasks of the `t`-subsets of `0..n` in lexicographic order.
pub fn subsets_lex(n: usize, t: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if t > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        let Some(pos) = (0..t).rev().find(|&p| idx[p] != p + n - t) else { break };
        idx[pos] += 1;
        for q in pos + 1..t {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out
}

/// Normalized gcd of the Pfaffians of all principal `t x t` minors of `A_x`.
pub fn fundamental_semiinvariant(alg: &LieAlgebra) -> Result<MultiPoly, SingularError> {
    fundamental_semiinvariant_with(alg, &index(alg))
}

pub fn fundamental_semiinvariant_with(alg: &LieAlgebra, cert: &IndexCertificate) -> Result<MultiPoly, SingularError> {
    let n = alg.dim();
    let a = structure_matrix(alg);
    let mut ex = PfaffianExpander::new(a.entries(), MultiPoly::one(n))?;
    let mut g = MultiPoly::zero(n);
    for mask in subsets_lex(n, cert.t) {
        let pf = ex.pf(mask);
        if pf.is_zero() {
            continue;
        }
        g = gcd_multivariate(&g, &pf)?;
        if g.is_constant() {
            break;
        }
    }
    if g.is_zero() {
        return Err(SingularError::AllPfaffiansVanish { t: cert.t });
    }
    let p = g.normalized();
    if !p.is_constant() {
        match is_semiinvariant(alg, &p)? {
            SemiInvariance::SemiInvariant(_) => {}
            SemiInvariance::NotSemiInvariant { basis } => {
                return Err(SingularError::NotSemiInvariant(format!("{{p_g, x{basis}}} is not a multiple of p_g")));
            }
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sing0Codim {
    CodimOne(MultiPoly),
    CodimAtLeastTwo,
}

pub fn sing0_codim_flag(alg: &LieAlgebra) -> Result<Sing0Codim, SingularError> {
    let p = fundamental_semiinvariant(alg)?;
    Ok(codim_flag_of(p))
}

pub fn codim_flag_of(p_g: MultiPoly) -> Sing0Codim {
    if p_g.is_constant() {
        Sing0Codim::CodimAtLeastTwo
    } else {
        Sing0Codim::CodimOne(p_g)
    }
}

/// A factor of the square-free part of `p_g` whose zero set is handled as
/// one component of `Sing_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    #[serde(serialize_with = "crate::singular::serialize_poly")]
    pub factor: MultiPoly,
    pub tag: String,
    /// Whether the factor is a (rational) linear form.
    pub linear: bool,
}

pub(crate) fn serialize_poly<S: serde::Serializer>(p: &MultiPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Splits the square-free part of `p_g` into rational linear factors and a
/// remaining cofactor.
///
/// Linear factors are found by restricting to random lines: at a rational
/// root `y` the gradient `g` of the remaining polynomial gives the candidate
/// `g . (x - y)`, which is kept when it divides exactly. What is left after
/// the attempts is reported as one further component. Components are sorted
/// by their text form.
pub fn sing0_components(p_g: &MultiPoly, seed: u64) -> Result<Vec<Component>, SingularError> {
    let n = p_g.nvars();
    let mut rest = squarefree_part(p_g)?;
    let mut found: Vec<MultiPoly> = Vec::new();
    let attempts = 4 * rest.degree().unwrap_or(0) as usize + 8;
    for trial in 0..attempts {
        if rest.is_constant() {
            break;
        }
        let mut rng = random::rng_for(seed, trial as u64);
        let base = random::integer_point(&mut rng, n, 10);
        let dir = random::integer_point(&mut rng, n, 10);
        let q = rest.restrict_to_line(&base, &dir)?;
        if q.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (root, _) in univariate_distinct_roots(&q)? {
            let Root::Exact(t0) = root else { continue };
            let y: Vec<Rational> = base.iter().zip(&dir).map(|(b, d)| b + &t0 * d).collect();
            let grad: Vec<Rational> =
                rest.gradient().iter().map(|d| d.evaluate(&y)).collect::<Result<_, _>>()?;
            if grad.iter().all(Zero::is_zero) {
                continue;
            }
            let offset = -crate::linalg::dot(&grad, &y);
            let mut coeffs = grad.clone();
            coeffs.push(offset);
            let cand = affine_form(&coeffs, n).normalized();
            if let Some(qt) = rest.div_exact(&cand) {
                rest = qt.normalized();
                found.push(cand);
                if rest.is_constant() {
                    break;
                }
            }
        }
    }
    let mut comps: Vec<Component> = found
        .into_iter()
        .map(|f| Component { tag: f.to_string(), factor: f, linear: true })
        .collect();
    if !rest.is_constant() {
        let linear = rest.degree() == Some(1);
        comps.push(Component { tag: rest.to_string(), factor: rest, linear });
    }
    comps.sort_by(|a, b| a.tag.cmp(&b.tag));
    Ok(comps)
}

/// `sum_i c_i x_i + c_n`.
fn affine_form(coeffs: &[Rational], n: usize) -> MultiPoly {
    let lin = MultiPoly::linear(&coeffs[..n]);
    &lin + &MultiPoly::constant(n, coeffs[n].clone())
}

/// Gradient of `p` at a complex point.
pub fn gradient_complex(p: &MultiPoly, x: &[Complex64]) -> Vec<Complex64> {
    p.gradient().iter().map(|d| d.evaluate_complex(x).expect("point length")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{abelian, b2, heisenberg, sl2, so3};
    use crate::ratpoly::int;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn structure_matrices() {
        let a = structure_matrix(&b2());
        assert_eq!(a.entry(0, 1), &x(2, 1));
        assert_eq!(a.entry(1, 0), &-x(2, 1));
        let h = structure_matrix(&heisenberg(1));
        assert_eq!(h.entry(0, 1), &x(3, 2));
        assert!(h.entry(0, 2).is_zero());
        assert!(structure_matrix(&abelian(3)).entries().iter().flatten().all(MultiPoly::is_zero));
        let pt = [int(1), int(2), int(3)];
        assert_eq!(structure_matrix(&sl2()).at(&pt), sl2().structure_matrix_at(&pt));
    }

    #[test]
    fn indices() {
        assert_eq!(index(&abelian(4)).index, 4);
        assert_eq!(index(&b2()).index, 0);
        assert_eq!(index(&sl2()).index, 1);
        let c = index(&heisenberg(2));
        assert_eq!((c.index, c.t), (1, 4));
        assert!(!c.witness_points.is_empty());
    }

    #[test]
    fn pfaffian_examples() {
        let c = int(7);
        let m2 = vec![vec![int(0), c.clone()], vec![-c.clone(), int(0)]];
        assert_eq!(pfaffian(&m2, &int(1)).unwrap(), c);
        let up = [1, 2, 3, 4, 5, 6];
        let mut m = vec![vec![int(0); 4]; 4];
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                m[i][j] = int(up[k]);
                m[j][i] = int(-up[k]);
                k += 1;
            }
        }
        assert_eq!(pfaffian(&m, &int(1)).unwrap(), int(8));
        assert_eq!(pfaffian(&vec![vec![int(0); 4]; 4], &int(1)).unwrap(), int(0));
        assert_eq!(pfaffian::<Rational>(&[], &int(1)).unwrap(), int(1));
        assert_eq!(pfaffian(&vec![vec![int(0); 3]; 3], &int(1)), Err(SingularError::OddSize { size: 3 }));
        let bad = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(pfaffian(&bad, &int(1)), Err(SingularError::NotSkew { i: 1, j: 2 }));
    }

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(subsets_lex(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(subsets_lex(3, 0), vec![0]);
    }

    #[test]
    fn fundamental_semiinvariants() {
        assert_eq!(fundamental_semiinvariant(&b2()).unwrap(), x(2, 1));
        assert_eq!(fundamental_semiinvariant(&heisenberg(1)).unwrap(), x(3, 2));
        assert_eq!(fundamental_semiinvariant(&sl2()).unwrap(), MultiPoly::one(3));
        assert_eq!(fundamental_semiinvariant(&so3()).unwrap(), MultiPoly::one(3));
        let bh = b2().direct_sum(&heisenberg(1));
        assert_eq!(sing0_codim_flag(&bh).unwrap(), Sing0Codim::CodimOne(&x(5, 1) * &x(5, 4)));
        assert_eq!(sing0_codim_flag(&sl2()).unwrap(), Sing0Codim::CodimAtLeastTwo);
    }

    #[test]
    fn components_split_linear_factors() {
        let p = &x(5, 1) * &x(5, 4);
        let comps = sing0_components(&p, 0).unwrap();
        let tags: Vec<&str> = comps.iter().map(|c| c.tag.as_str()).collect();
        assert_eq!(tags, vec!["x2", "x5"]);
        let sq = x(5, 4).pow(2);
        assert_eq!(sing0_components(&sq, 0).unwrap().len(), 1);
        let quad = &(&x(3, 0) * &x(3, 0)) + &(&x(3, 1) * &x(3, 2));
        let comps = sing0_components(&(&quad * &x(3, 1)), 3).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().any(|c| !c.linear));
    }
}
