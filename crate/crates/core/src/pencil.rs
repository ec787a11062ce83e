//! Pairs of skew-symmetric forms `P_lambda = P0 - lambda Pinf`: minimal
//! corank, exceptional spectrum, the core subspace `L`, the recursion
//! operator on `L^perp / L`, and isotropy certificates.
//!
//! Forms are rational. Rational spectrum points are handled exactly; points
//! found only numerically are handled in complex floating point.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::liealg::LieAlgebra;
use crate::linalg::{
    exact_rank, form_orthogonal, intersection, restrict_form, same_span, span_basis, span_contains, span_dim,
    vec_norm, Matrix, Scalar,
};
use crate::random;
use crate::ratpoly::{format_rational, univariate_distinct_roots, PolyError, Rational, Root, UniPoly};
use crate::singular::{subsets_lex, PfaffianExpander};
use crate::Tolerance;

const STREAM_CORANK: u64 = 0;
const STREAM_CORE: u64 = 1 << 20;
const STREAM_LPERP: u64 = 2 << 20;
const STREAM_CHECK: u64 = 3 << 20;
const STREAM_COMPLEMENT: u64 = 4 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PencilError {
    #[error("forms have sizes {p0}x{p0} and {pinf}x{pinf}")]
    SizeMismatch { p0: usize, pinf: usize },
    #[error("{which} is not square")]
    NotSquare { which: &'static str },
    #[error("{which} is not skew-symmetric at ({i}, {j})")]
    NotSkew { which: &'static str, i: usize, j: usize },
    #[error("point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("infinity is in the spectrum: corank Pinf = {corank} > r = {r}")]
    InfinityInSpectrum { corank: usize, r: usize },
    #[error("L^perp depends on lambda: dimension {first} at one sample, {other} at another")]
    LPerpDepends { first: usize, other: usize },
    #[error("all principal Pfaffians of size {t} vanish identically in lambda")]
    DegeneratePencil { t: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Two rational skew-symmetric forms on `Q^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormPair {
    p0: Matrix<Rational>,
    pinf: Matrix<Rational>,
}

fn check_skew(m: &Matrix<Rational>, which: &'static str) -> Result<(), PencilError> {
    if !m.is_square() {
        return Err(PencilError::NotSquare { which });
    }
    for i in 0..m.rows() {
        for j in i..m.cols() {
            if !(m[(i, j)].clone() + m[(j, i)].clone()).is_zero() {
                return Err(PencilError::NotSkew { which, i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

impl FormPair {
    pub fn new(p0: Matrix<Rational>, pinf: Matrix<Rational>) -> Result<Self, PencilError> {
        check_skew(&p0, "P0")?;
        check_skew(&pinf, "Pinf")?;
        if p0.rows() != pinf.rows() {
            return Err(PencilError::SizeMismatch { p0: p0.rows(), pinf: pinf.rows() });
        }
        Ok(FormPair { p0, pinf })
    }

    /// `P0 = A_x`, `Pinf = A_a`.
    pub fn from_algebra(alg: &LieAlgebra, x: &[Rational], a: &[Rational]) -> Result<Self, PencilError> {
        for p in [x, a] {
            if p.len() != alg.dim() {
                return Err(PencilError::PointLength { expected: alg.dim(), got: p.len() });
            }
        }
        FormPair::new(alg.structure_matrix_at(x), alg.structure_matrix_at(a))
    }

    pub fn dim(&self) -> usize {
        self.p0.rows()
    }

    pub fn p0(&self) -> &Matrix<Rational> {
        &self.p0
    }

    pub fn pinf(&self) -> &Matrix<Rational> {
        &self.pinf
    }

    /// `P0 - lambda Pinf`.
    pub fn at(&self, lambda: &Rational) -> Matrix<Rational> {
        self.p0.sub(&self.pinf.scale(lambda))
    }

    /// Exact corank at a rational `lambda`, or at infinity for `None`.
    pub fn corank_exact(&self, lambda: Option<&Rational>) -> usize {
        let m = match lambda {
            Some(l) => self.at(l),
            None => self.pinf.clone(),
        };
        self.dim() - exact_rank(&m)
    }

    pub fn corank(&self, v: &PencilValue, tol: &Tolerance) -> usize {
        match v {
            PencilValue::Finite(Root::Exact(q)) => self.corank_exact(Some(q)),
            PencilValue::Finite(Root::Numeric { value, .. }) => {
                let f = Forms::<Complex64>::new(self);
                f.corank(&At::Finite(*value), tol.rank)
            }
            PencilValue::Infinity => self.corank_exact(None),
        }
    }

    /// `P0 - lambda Pinf` as a matrix of linear polynomials in `lambda`.
    pub fn symbolic(&self) -> Vec<Vec<UniPoly>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| UniPoly::new(vec![self.p0[(i, j)].clone(), -self.pinf[(i, j)].clone()]))
                    .collect()
            })
            .collect()
    }
}

/// A point of the projective line.
#[derive(Debug, Clone, PartialEq)]
pub enum PencilValue {
    Finite(Root),
    Infinity,
}

impl PencilValue {
    fn sort_key(&self) -> (u8, f64, f64) {
        match self {
            PencilValue::Finite(r) => {
                let z = r.to_complex();
                (0, z.re, z.im)
            }
            PencilValue::Infinity => (1, 0.0, 0.0),
        }
    }
}

impl std::fmt::Display for PencilValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PencilValue::Finite(r) => write!(f, "{r}"),
            PencilValue::Infinity => write!(f, "infinity"),
        }
    }
}

impl Serialize for PencilValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PencilValue::Finite(r) => r.serialize(s),
            PencilValue::Infinity => s.serialize_str("infinity"),
        }
    }
}

/// A form pencil mapped into scalar type `S`.
#[derive(Debug, Clone)]
enum At<S> {
    Finite(S),
    Infinity,
}

struct Forms<S> {
    p0: Matrix<S>,
    pinf: Matrix<S>,
    s0: f64,
    sinf: f64,
}

impl<S: Scalar> Forms<S> {
    fn new(pair: &FormPair) -> Self {
        let p0 = pair.p0.map(S::from_rational);
        let pinf = pair.pinf.map(S::from_rational);
        let (s0, sinf) = (p0.max_magnitude(), pinf.max_magnitude());
        Forms { p0, pinf, s0, sinf }
    }

    fn n(&self) -> usize {
        self.p0.rows()
    }

    fn at(&self, lam: &At<S>) -> Matrix<S> {
        match lam {
            At::Finite(l) => self.p0.sub(&self.pinf.scale(l)),
            At::Infinity => self.pinf.clone(),
        }
    }

    fn scale(&self, lam: &At<S>) -> f64 {
        match lam {
            At::Finite(l) => self.s0.max(l.magnitude() * self.sinf).max(f64::MIN_POSITIVE),
            At::Infinity => self.sinf.max(f64::MIN_POSITIVE),
        }
    }

    fn kernel(&self, lam: &At<S>, tol: f64) -> Vec<Vec<S>> {
        self.at(lam).kernel_scaled(tol, self.scale(lam))
    }

    fn corank(&self, lam: &At<S>, tol: f64) -> usize {
        self.n() - self.at(lam).rank_scaled(tol, self.scale(lam))
    }
}

fn lift<S: Scalar>(vs: &[Vec<Rational>]) -> Vec<Vec<S>> {
    vs.iter().map(|v| v.iter().map(S::from_rational).collect()).collect()
}

/// Whether `P(u, v)` vanishes for all `u` in `us`, `v` in `vs`, relative to
/// `scale * |u| * |v|`.
fn form_vanishes<S: Scalar>(p: &Matrix<S>, us: &[Vec<S>], vs: &[Vec<S>], scale: f64, tol: f64) -> bool {
    us.iter().all(|u| {
        let pu: Vec<S> = p.transpose().mul_vec(u);
        vs.iter().all(|v| {
            let val = crate::linalg::dot(&pu, v);
            if S::EXACT {
                val.is_exact_zero()
            } else {
                val.magnitude() <= tol * scale * vec_norm(u).max(1.0) * vec_norm(v).max(1.0)
            }
        })
    })
}

fn random_lambda(seed: u64, stream: u64, trial: usize) -> Rational {
    let mut rng = random::rng_for(seed, stream);
    random::rational(&mut rng, random::height_for_trial(trial))
}

/// Minimal corank over infinity and up to `probes` random rational `lambda`,
/// stopping after 5 consecutive probes without a decrease.
pub fn min_corank(pair: &FormPair, probes: usize, seed: u64) -> usize {
    let n = pair.dim();
    let floor = n % 2;
    let mut best = pair.corank_exact(None);
    let mut stable = 0;
    for i in 0..probes {
        if best == floor || stable >= 5 {
            break;
        }
        let c = pair.corank_exact(Some(&random_lambda(seed, STREAM_CORANK + i as u64, i)));
        if c < best {
            best = c;
            stable = 0;
        } else {
            stable += 1;
        }
    }
    best
}

/// Monic gcd of the principal `(n - r) x (n - r)` Pfaffians of `P_lambda`,
/// whose roots are the finite points of the spectrum.
pub fn pfaffian_gcd(pair: &FormPair, r: usize) -> Result<UniPoly, PencilError> {
    let n = pair.dim();
    let t = n - r;
    let sym = pair.symbolic();
    let one = UniPoly::constant(Rational::one());
    let mut ex = PfaffianExpander::new(&sym, one.clone()).expect("pencil is skew");
    let mut g = UniPoly::zero();
    for mask in subsets_lex(n, t) {
        let pf = ex.pf(mask);
        if pf.is_zero() {
            continue;
        }
        g = if g.is_zero() { pf.monic() } else { g.gcd(&pf) };
        if g.degree() == Some(0) {
            break;
        }
    }
    if g.is_zero() {
        return Err(PencilError::DegeneratePencil { t });
    }
    Ok(g.monic())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub lambda: PencilValue,
    pub corank: usize,
}

/// Points where the corank exceeds `r`. Finite candidates are the distinct
/// roots of `hint` when given (and not identically zero), otherwise of
/// [`pfaffian_gcd`]; each is verified by a corank computation.
pub fn spectrum(
    pair: &FormPair,
    r: usize,
    hint: Option<&UniPoly>,
    tol: &Tolerance,
) -> Result<Vec<SpectrumEntry>, PencilError> {
    let candidates = match hint {
        Some(q) if !q.is_zero() => q.clone(),
        _ => pfaffian_gcd(pair, r)?,
    };
    let mut out = Vec::new();
    if candidates.degree().unwrap_or(0) > 0 {
        for (root, _) in univariate_distinct_roots(&candidates)? {
            let v = PencilValue::Finite(root);
            let corank = pair.corank(&v, tol);
            if corank > r {
                out.push(SpectrumEntry { lambda: v, corank });
            }
        }
    }
    let c_inf = pair.corank_exact(None);
    if c_inf > r {
        out.push(SpectrumEntry { lambda: PencilValue::Infinity, corank: c_inf });
    }
    out.sort_by(|a, b| {
        let (ka, kb) = (a.lambda.sort_key(), b.lambda.sort_key());
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(ka.2.total_cmp(&kb.2))
    });
    Ok(out)
}

/// Basis of `L`, the sum of `Ker P_lambda` over random `lambda` of corank
/// `r`, stopping once three consecutive kernels add nothing.
pub fn core_subspace(pair: &FormPair, r: usize, seed: u64) -> Vec<Vec<Rational>> {
    let n = pair.dim();
    let mut acc: Vec<Vec<Rational>> = Vec::new();
    let mut dim = 0;
    let mut stable = 0;
    let mut trial = 0;
    while stable < 3 && dim < n && trial < 200 {
        let lam = random_lambda(seed, STREAM_CORE + trial as u64, trial);
        trial += 1;
        let ker = pair.at(&lam).kernel(0.0);
        if ker.len() != r {
            continue;
        }
        acc.extend(ker);
        acc = span_basis(&acc, n, 0.0);
        if acc.len() > dim {
            dim = acc.len();
            stable = 0;
        } else {
            stable += 1;
        }
    }
    acc
}

/// `L^perp = {xi : P_lambda(xi, L) = 0}` at a random `lambda`, confirmed
/// equal at two further random `lambda` and at infinity.
pub fn l_perp(pair: &FormPair, l: &[Vec<Rational>], seed: u64) -> Result<Vec<Vec<Rational>>, PencilError> {
    let n = pair.dim();
    let first = span_basis(&form_orthogonal(&pair.at(&random_lambda(seed, STREAM_LPERP, 0)), l, 0.0), n, 0.0);
    let mut others: Vec<Matrix<Rational>> =
        (1..3).map(|i| pair.at(&random_lambda(seed, STREAM_LPERP + i, i as usize))).collect();
    others.push(pair.pinf.clone());
    for m in others {
        let other = form_orthogonal(&m, l, 0.0);
        if !same_span(&first, &other, n, 0.0) {
            return Err(PencilError::LPerpDepends { first: first.len(), other: span_dim(&other, n, 0.0) });
        }
    }
    Ok(first)
}

/// Vectors of `space` completing a basis of `base` to one of
/// `span(base + space)`. With a seed, random combinations are used instead
/// of the given vectors.
fn complement(base: &[Vec<Rational>], space: &[Vec<Rational>], n: usize, seed: Option<u64>) -> Vec<Vec<Rational>> {
    let target = span_dim(&[base, space].concat(), n, 0.0);
    let mut acc = base.to_vec();
    let mut out = Vec::new();
    let mut trial = 0u64;
    let mut idx = 0;
    while acc.len() < target {
        let cand: Vec<Rational> = match seed {
            None => {
                let v = space[idx].clone();
                idx += 1;
                v
            }
            Some(s) => {
                let mut rng = random::rng_for(s, STREAM_COMPLEMENT + trial);
                trial += 1;
                let mut v = vec![Rational::zero(); n];
                for b in space {
                    let c = random::integer(&mut rng, 10);
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += &c * bi;
                    }
                }
                v
            }
        };
        let mut next = acc.clone();
        next.push(cand.clone());
        if span_dim(&next, n, 0.0) > acc.len() {
            acc = next;
            out.push(cand);
        }
    }
    out
}

/// Lagrange interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::constant(Rational::one());
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                basis = &basis * &UniPoly::linear_factor(xj);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

/// `det(mu I - m)` by exact interpolation at `mu = 0, ..., dim`.
pub fn characteristic_polynomial(m: &Matrix<Rational>) -> UniPoly {
    let k = m.rows();
    let xs: Vec<Rational> = (0..=k).map(|i| Rational::from_integer((i as i64).into())).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|mu| Matrix::<Rational>::identity(k).scale(mu).sub(m).det(0.0))
        .collect();
    interpolate(&xs, &ys)
}

/// `p(m)` by Horner's rule.
pub fn evaluate_at_matrix(p: &UniPoly, m: &Matrix<Rational>) -> Matrix<Rational> {
    let k = m.rows();
    let id = Matrix::<Rational>::identity(k);
    let mut acc = Matrix::zeros(k, k);
    for c in p.coeffs().iter().rev() {
        acc = acc.matmul(m).add(&id.scale(c));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub lambda: Root,
    pub algebraic: usize,
    pub geometric: usize,
}

/// `R = Pinf^{-1} P0` on `L^perp / L`, represented on a complement `C` of
/// `L` in `L^perp` by `G_inf^{-1} G_0` with `G = C^T P C`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionOperator {
    pub complement: Vec<Vec<Rational>>,
    pub matrix: Matrix<Rational>,
    pub char_poly: UniPoly,
    pub eigenvalues: Vec<Eigenvalue>,
    /// Exact: the square-free part of the characteristic polynomial
    /// annihilates the matrix.
    pub diagonalizable: bool,
}

impl RecursionOperator {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Eigenvectors for `lambda` lifted to the ambient space.
    fn eigenspace<S: Scalar>(&self, lambda: &S, tol: f64) -> Vec<Vec<S>> {
        let k = self.dim();
        let m = self.matrix.map(S::from_rational);
        let shifted = m.sub(&Matrix::identity(k).scale(lambda));
        let scale = m.max_magnitude().max(lambda.magnitude()).max(f64::MIN_POSITIVE);
        let comp: Vec<Vec<S>> = lift(&self.complement);
        shifted
            .kernel_scaled(tol, scale)
            .iter()
            .map(|c| {
                let n = comp[0].len();
                let mut v = vec![S::zero_value(); n];
                for (ci, bi) in c.iter().zip(&comp) {
                    for t in 0..n {
                        v[t] = v[t].clone() + ci.clone() * bi[t].clone();
                    }
                }
                v
            })
            .collect()
    }
}

fn geometric_multiplicity(m: &Matrix<Rational>, lambda: &Root, tol: f64) -> usize {
    let k = m.rows();
    match lambda {
        Root::Exact(q) => k - exact_rank(&m.sub(&Matrix::identity(k).scale(q))),
        Root::Numeric { value, .. } => {
            let mc = m.map(Complex64::from_rational);
            let scale = mc.max_magnitude().max(value.norm()).max(f64::MIN_POSITIVE);
            k - mc.sub(&Matrix::identity(k).scale(value)).rank_scaled(tol, scale)
        }
    }
}

/// Builds `R` on a complement of `L` in `L^perp`; `complement_seed` selects
/// a random complement instead of one drawn from the `L^perp` basis.
pub fn recursion_operator(
    pair: &FormPair,
    r: usize,
    l: &[Vec<Rational>],
    lperp: &[Vec<Rational>],
    complement_seed: Option<u64>,
    tol: &Tolerance,
) -> Result<RecursionOperator, PencilError> {
    let c_inf = pair.corank_exact(None);
    if c_inf > r {
        return Err(PencilError::InfinityInSpectrum { corank: c_inf, r });
    }
    let n = pair.dim();
    let comp = complement(l, lperp, n, complement_seed);
    let k = comp.len();
    let g0 = restrict_form(&pair.p0, &comp);
    let ginf = restrict_form(&pair.pinf, &comp);
    let matrix = if k == 0 { Matrix::zeros(0, 0) } else { ginf.solve(&g0, 0.0).expect("Pinf is nondegenerate on L^perp/L") };
    let char_poly = characteristic_polynomial(&matrix);
    let eigenvalues = if k == 0 {
        Vec::new()
    } else {
        univariate_distinct_roots(&char_poly)?
            .into_iter()
            .map(|(lambda, algebraic)| {
                let geometric = geometric_multiplicity(&matrix, &lambda, tol.rank);
                Eigenvalue { lambda, algebraic, geometric }
            })
            .collect()
    };
    let diagonalizable = k == 0 || evaluate_at_matrix(&char_poly.squarefree_part(), &matrix).is_zero(0.0);
    Ok(RecursionOperator { complement: comp, matrix, char_poly, eigenvalues, diagonalizable })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ItemCheck {
    pub item: u8,
    pub passed: bool,
    pub detail: String,
}

impl ItemCheck {
    fn new(item: u8, passed: bool, detail: impl Into<String>) -> Self {
        ItemCheck { item, passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PencilOptions {
    pub probes: usize,
    pub seed: u64,
    pub tol: Tolerance,
}

impl Default for PencilOptions {
    fn default() -> Self {
        PencilOptions { probes: 20, seed: 0, tol: Tolerance::default() }
    }
}

/// A pair together with `r`, its spectrum, `L` and `L^perp`.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub pair: FormPair,
    pub r: usize,
    pub spectrum: Vec<SpectrumEntry>,
    pub l: Vec<Vec<Rational>>,
    pub lperp: Vec<Vec<Rational>>,
    opts: PencilOptions,
}

/// Per-point data at a spectrum value: kernel, its intersection with `L`,
/// and the kernel of `Pinf` restricted to it.
struct PointData {
    ker_cap_l: usize,
    pinf_restricted_kernel: usize,
    item5: bool,
}

impl Pencil {
    pub fn new(pair: FormPair, hint: Option<&UniPoly>, opts: PencilOptions) -> Result<Self, PencilError> {
        let r = min_corank(&pair, opts.probes, opts.seed);
        let spectrum = spectrum(&pair, r, hint, &opts.tol)?;
        let l = core_subspace(&pair, r, opts.seed);
        let lperp = l_perp(&pair, &l, opts.seed)?;
        Ok(Pencil { pair, r, spectrum, l, lperp, opts })
    }

    pub fn infinity_in_spectrum(&self) -> bool {
        self.spectrum.iter().any(|e| e.lambda == PencilValue::Infinity)
    }

    pub fn recursion_operator(&self, complement_seed: Option<u64>) -> Result<RecursionOperator, PencilError> {
        recursion_operator(&self.pair, self.r, &self.l, &self.lperp, complement_seed, &self.opts.tol)
    }

    fn sample_lambdas(&self, count: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut trial = 0;
        while out.len() < count && trial < 50 * count {
            let lam = random_lambda(self.opts.seed, STREAM_CHECK + trial as u64, trial);
            trial += 1;
            if self.pair.corank_exact(Some(&lam)) == self.r {
                out.push(lam);
            }
        }
        out
    }

    fn point_data<S: Scalar>(&self, lam: At<S>, alphas: &[At<S>]) -> PointData {
        let n = self.pair.dim();
        let tol = self.opts.tol;
        let f = Forms::<S>::new(&self.pair);
        let l: Vec<Vec<S>> = lift(&self.l);
        let ker = f.kernel(&lam, tol.rank);
        let cap = intersection(&ker, &l, n, tol.rank);
        let g = restrict_form(&f.pinf, &ker);
        let pinf_restricted_kernel = ker.len() - g.rank_scaled(tol.rank, f.sinf.max(f64::MIN_POSITIVE));
        let item5 = alphas.iter().all(|a| form_vanishes(&f.at(a), &cap, &ker, f.scale(a), tol.closure));
        PointData { ker_cap_l: cap.len(), pinf_restricted_kernel, item5 }
    }

    fn point_data_at(&self, v: &PencilValue, alphas: &[Rational]) -> PointData {
        let mut ex: Vec<At<Rational>> = alphas.iter().cloned().map(At::Finite).collect();
        ex.push(At::Infinity);
        match v {
            PencilValue::Finite(Root::Exact(q)) => self.point_data(At::Finite(q.clone()), &ex),
            PencilValue::Infinity => self.point_data(At::Infinity, &ex),
            PencilValue::Finite(Root::Numeric { value, .. }) => {
                let cx: Vec<At<Complex64>> = ex
                    .iter()
                    .map(|a| match a {
                        At::Finite(q) => At::Finite(Complex64::from_rational(q)),
                        At::Infinity => At::Infinity,
                    })
                    .collect();
                self.point_data(At::Finite(*value), &cx)
            }
        }
    }

    /// Items 1 to 5 of the structure statement for `L`: isotropy,
    /// independence of `L^perp` from `lambda`, non-degeneracy on
    /// `L^perp / L`, `dim(Ker P_lambda ∩ L) = r` on the spectrum, and
    /// `Ker(P_alpha | Ker P_lambda) ⊃ Ker P_lambda ∩ L`.
    pub fn verify_la2(&self) -> Vec<ItemCheck> {
        let n = self.pair.dim();
        let lams = self.sample_lambdas(5);
        let mut mats: Vec<(String, Matrix<Rational>)> =
            lams.iter().map(|l| (format_rational(l), self.pair.at(l))).collect();
        mats.push(("infinity".into(), self.pair.pinf.clone()));

        let bad1: Vec<&str> = mats
            .iter()
            .filter(|(_, m)| !restrict_form(m, &self.l).is_zero(0.0))
            .map(|(s, _)| s.as_str())
            .collect();
        let bad2: Vec<&str> = mats
            .iter()
            .filter(|(_, m)| !same_span(&form_orthogonal(m, &self.l, 0.0), &self.lperp, n, 0.0))
            .map(|(s, _)| s.as_str())
            .collect();
        let quotient = self.lperp.len() - self.l.len();
        let generic: Vec<&(String, Matrix<Rational>)> = mats
            .iter()
            .filter(|(s, _)| s != "infinity" || !self.infinity_in_spectrum())
            .collect();
        let bad3: Vec<&str> = generic
            .iter()
            .filter(|(_, m)| exact_rank(&restrict_form(m, &self.lperp)) != quotient)
            .map(|(s, _)| s.as_str())
            .collect();

        let alphas: Vec<Rational> = lams.iter().take(2).cloned().chain([Rational::zero()]).collect();
        let mut bad4 = Vec::new();
        let mut bad5 = Vec::new();
        for e in &self.spectrum {
            let d = self.point_data_at(&e.lambda, &alphas);
            if d.ker_cap_l != self.r {
                bad4.push(format!("{}: dim = {}", e.lambda, d.ker_cap_l));
            }
            if !d.item5 {
                bad5.push(e.lambda.to_string());
            }
        }
        let describe = |bad: &[&str], ok: &str| {
            if bad.is_empty() {
                ok.to_string()
            } else {
                format!("fails at lambda = {}", bad.join(", "))
            }
        };
        vec![
            ItemCheck::new(1, bad1.is_empty(), describe(&bad1, "L is isotropic at every sampled lambda")),
            ItemCheck::new(2, bad2.is_empty(), describe(&bad2, "L^perp agrees at every sampled lambda")),
            ItemCheck::new(3, bad3.is_empty(), describe(&bad3, "nondegenerate on L^perp/L at every generic sample")),
            ItemCheck::new(
                4,
                bad4.is_empty(),
                if bad4.is_empty() { "dim(Ker ∩ L) = r on the spectrum".to_string() } else { bad4.join("; ") },
            ),
            ItemCheck::new(
                5,
                bad5.is_empty(),
                if bad5.is_empty() {
                    "Ker ∩ L lies in the kernel of every sampled restricted form".to_string()
                } else {
                    format!("fails at lambda = {}", bad5.join(", "))
                },
            ),
        ]
    }

    /// Items 1 to 4 of the recursion-operator statement: spectrum equals
    /// the finite spectrum with multiplicities at least two, eigenspaces
    /// match kernels modulo `L`, eigenspaces are `P_lambda`-orthogonal, and
    /// diagonalizability matches `dim Ker(Pinf | Ker P_lambda) = r`.
    pub fn verify_la3(&self, rec: &RecursionOperator) -> Vec<ItemCheck> {
        let tol = self.opts.tol;
        let finite: Vec<&Root> = self
            .spectrum
            .iter()
            .filter_map(|e| match &e.lambda {
                PencilValue::Finite(r) => Some(r),
                PencilValue::Infinity => None,
            })
            .collect();

        let same_point = |a: &Root, b: &Root| match (a, b) {
            (Root::Exact(x), Root::Exact(y)) => x == y,
            _ => (a.to_complex() - b.to_complex()).norm() <= tol.root.sqrt() * (1.0 + a.to_complex().norm()),
        };
        let matched = finite.len() == rec.eigenvalues.len()
            && finite.iter().all(|f| rec.eigenvalues.iter().any(|e| same_point(f, &e.lambda)));
        let mult_ok = rec.eigenvalues.iter().all(|e| e.algebraic >= 2);
        let item1 = ItemCheck::new(
            1,
            matched && mult_ok,
            format!(
                "eigenvalues [{}] with multiplicities [{}]; spectrum [{}]",
                rec.eigenvalues.iter().map(|e| e.lambda.to_string()).collect::<Vec<_>>().join(", "),
                rec.eigenvalues.iter().map(|e| e.algebraic.to_string()).collect::<Vec<_>>().join(", "),
                finite.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "),
            ),
        );

        let mut bad2 = Vec::new();
        let mut bad3 = Vec::new();
        let samples = self.sample_lambdas(3);
        let any_numeric = rec.eigenvalues.iter().any(|e| !e.lambda.is_exact());
        if any_numeric {
            self.la3_eigenspaces::<Complex64>(rec, &samples, &mut bad2, &mut bad3, |r| r.to_complex());
        } else {
            self.la3_eigenspaces::<Rational>(rec, &samples, &mut bad2, &mut bad3, |r| {
                r.as_exact().expect("exact").clone()
            });
        }
        let item2 = ItemCheck::new(
            2,
            bad2.is_empty(),
            if bad2.is_empty() { "eigenspaces equal Ker P_lambda mod L".to_string() } else { bad2.join("; ") },
        );
        let item3 = ItemCheck::new(
            3,
            bad3.is_empty(),
            if bad3.is_empty() { "eigenspaces pairwise orthogonal".to_string() } else { bad3.join("; ") },
        );

        let kernel_test = self
            .spectrum
            .iter()
            .filter(|e| e.lambda != PencilValue::Infinity)
            .all(|e| self.point_data_at(&e.lambda, &[]).pinf_restricted_kernel == self.r);
        let item4 = ItemCheck::new(
            4,
            kernel_test == rec.diagonalizable,
            format!("diagonalizable = {}, kernel criterion = {}", rec.diagonalizable, kernel_test),
        );
        vec![item1, item2, item3, item4]
    }

    fn la3_eigenspaces<S: Scalar>(
        &self,
        rec: &RecursionOperator,
        samples: &[Rational],
        bad2: &mut Vec<String>,
        bad3: &mut Vec<String>,
        conv: impl Fn(&Root) -> S,
    ) {
        let n = self.pair.dim();
        let tol = self.opts.tol;
        let f = Forms::<S>::new(&self.pair);
        let l: Vec<Vec<S>> = lift(&self.l);
        let spaces: Vec<Vec<Vec<S>>> = rec.eigenvalues.iter().map(|e| rec.eigenspace(&conv(&e.lambda), tol.rank)).collect();
        for (e, space) in rec.eigenvalues.iter().zip(&spaces) {
            let lam = conv(&e.lambda);
            let ker = f.kernel(&At::Finite(lam), tol.rank);
            let lhs = [space.as_slice(), l.as_slice()].concat();
            let rhs = [ker.as_slice(), l.as_slice()].concat();
            if !same_span(&lhs, &rhs, n, tol.rank) {
                bad2.push(format!("at {}: eigenspace {} vs kernel {}", e.lambda, space.len(), ker.len()));
            }
        }
        let forms: Vec<At<S>> = samples.iter().map(|q| At::Finite(S::from_rational(q))).collect();
        for i in 0..spaces.len() {
            for j in i + 1..spaces.len() {
                for a in &forms {
                    if !form_vanishes(&f.at(a), &spaces[i], &spaces[j], f.scale(a), tol.closure) {
                        bad3.push(format!("{} vs {}", rec.eigenvalues[i].lambda, rec.eigenvalues[j].lambda));
                        break;
                    }
                }
            }
        }
    }

    /// `U = L + <xi_1, ..., xi_k>` with `xi_i` a kernel vector of
    /// `P_{lambda_i}` outside `L`, for each finite spectrum point.
    /// Complex when any spectrum point is irrational.
    pub fn la4_subspace(&self) -> Vec<Vec<Complex64>> {
        let n = self.pair.dim();
        let tol = self.opts.tol;
        let mut u: Vec<Vec<Complex64>> = lift(&self.l);
        let fc = Forms::<Complex64>::new(&self.pair);
        for e in &self.spectrum {
            let xi: Option<Vec<Complex64>> = match &e.lambda {
                PencilValue::Finite(Root::Exact(q)) => self
                    .pair
                    .at(q)
                    .kernel(0.0)
                    .into_iter()
                    .find(|v| !span_contains(&self.l, std::slice::from_ref(v), n, 0.0))
                    .map(|v| v.iter().map(Scalar::to_complex).collect()),
                PencilValue::Finite(Root::Numeric { value, .. }) => {
                    let l: Vec<Vec<Complex64>> = lift(&self.l);
                    fc.kernel(&At::Finite(*value), tol.rank)
                        .into_iter()
                        .find(|v| !span_contains(&l, std::slice::from_ref(v), n, tol.rank))
                }
                PencilValue::Infinity => None,
            };
            u.extend(xi);
        }
        u
    }

    pub fn la4(&self, rec: Option<&RecursionOperator>) -> La4Report {
        let u = self.la4_subspace();
        let all_exact = self.spectrum.iter().all(|e| matches!(e.lambda, PencilValue::Finite(Root::Exact(_))));
        let check = if all_exact {
            isotropy_check(&self.pair, &self.la4_exact(), 5, self.opts.seed, &self.opts.tol)
        } else {
            isotropy_check(&self.pair, &u, 5, self.opts.seed, &self.opts.tol)
        };
        let expected_maximal = rec.map(|r| r.eigenvalues.iter().all(|e| e.algebraic == 2));
        La4Report {
            dim_u: span_dim(&u, self.pair.dim(), self.opts.tol.rank),
            isotropic: check.isotropic,
            maximal_at_generic: check.maximal_at_generic,
            expected_maximal,
        }
    }

    fn la4_exact(&self) -> Vec<Vec<Rational>> {
        let n = self.pair.dim();
        let mut u = self.l.clone();
        for e in &self.spectrum {
            if let PencilValue::Finite(Root::Exact(q)) = &e.lambda {
                if let Some(v) = self
                    .pair
                    .at(q)
                    .kernel(0.0)
                    .into_iter()
                    .find(|v| !span_contains(&self.l, std::slice::from_ref(v), n, 0.0))
                {
                    u.push(v);
                }
            }
        }
        u
    }

    pub fn report(&self) -> PencilReport {
        let rec = if self.infinity_in_spectrum() { None } else { self.recursion_operator(None).ok() };
        let la2 = self.verify_la2();
        let la3 = rec.as_ref().map(|r| self.verify_la3(r)).unwrap_or_default();
        let la4 = self.la4(rec.as_ref());
        let spectrum = self
            .spectrum
            .iter()
            .map(|e| SpectrumReport {
                lambda: e.lambda.clone(),
                corank: e.corank,
                eigenspace_dim: rec.as_ref().and_then(|r| match &e.lambda {
                    PencilValue::Finite(root) => r
                        .eigenvalues
                        .iter()
                        .find(|ev| (ev.lambda.to_complex() - root.to_complex()).norm() <= 1e-6 * (1.0 + root.to_complex().norm()))
                        .map(|ev| ev.geometric),
                    PencilValue::Infinity => None,
                }),
            })
            .collect();
        PencilReport {
            n: self.pair.dim(),
            r: self.r,
            spectrum,
            dim_l: self.l.len(),
            dim_lperp: self.lperp.len(),
            diagonalizable: rec.as_ref().map(|r| r.diagonalizable),
            eigenvalue_multiplicities: rec.map(|r| r.eigenvalues).unwrap_or_default(),
            la2,
            la3,
            la4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    pub isotropic: bool,
    pub maximal_at_generic: bool,
}

/// Isotropy of `span(u)` for `P0`, `Pinf` and `samples` random `P_lambda`,
/// and maximality at a generic `lambda`: `U` is isotropic and its
/// `P_lambda`-orthogonal has the same dimension.
pub fn isotropy_check<S: Scalar>(
    pair: &FormPair,
    u: &[Vec<S>],
    samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> IsotropyReport {
    let n = pair.dim();
    let f = Forms::<S>::new(pair);
    let r = min_corank(pair, 20, seed);
    let mut lams: Vec<At<S>> = vec![At::Finite(S::zero_value()), At::Infinity];
    let mut generic: Option<At<S>> = None;
    let mut trial = 0;
    while (lams.len() < samples + 2 || generic.is_none()) && trial < 50 * samples.max(1) {
        let q = random_lambda(seed, STREAM_CHECK + trial as u64, trial);
        trial += 1;
        let generic_here = pair.corank_exact(Some(&q)) == r;
        let a = At::Finite(S::from_rational(&q));
        if generic_here && generic.is_none() {
            generic = Some(a.clone());
        }
        if lams.len() < samples + 2 {
            lams.push(a);
        }
    }
    let isotropic = lams.iter().all(|a| form_vanishes(&f.at(a), u, u, f.scale(a), tol.closure));
    let maximal_at_generic = isotropic
        && generic.is_some_and(|g| {
            let dim_u = span_dim(u, n, tol.rank);
            let perp = form_orthogonal(&f.at(&g), &span_basis(u, n, tol.rank), tol.rank);
            span_dim(&perp, n, tol.rank) == dim_u
        });
    IsotropyReport { isotropic, maximal_at_generic }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct La4Report {
    pub dim_u: usize,
    pub isotropic: bool,
    pub maximal_at_generic: bool,
    /// Whether every eigenvalue of `R` has multiplicity exactly two; absent
    /// when `R` is undefined.
    pub expected_maximal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub lambda: PencilValue,
    pub corank: usize,
    pub eigenspace_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PencilReport {
    pub n: usize,
    pub r: usize,
    pub spectrum: Vec<SpectrumReport>,
    pub dim_l: usize,
    pub dim_lperp: usize,
    pub diagonalizable: Option<bool>,
    pub eigenvalue_multiplicities: Vec<Eigenvalue>,
    pub la2: Vec<ItemCheck>,
    pub la3: Vec<ItemCheck>,
    pub la4: La4Report,
}

impl PencilReport {
    pub fn all_checks_pass(&self) -> bool {
        self.la2.iter().chain(&self.la3).all(|c| c.passed)
            && self.la4.isotropic
            && self.la4.expected_maximal.is_none_or(|e| e == self.la4.maximal_at_generic)
    }
}

/// Builds the pencil and its full report.
pub fn analyze(pair: FormPair, hint: Option<&UniPoly>, opts: PencilOptions) -> Result<PencilReport, PencilError> {
    Ok(Pencil::new(pair, hint, opts)?.report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{abelian, b2, heisenberg};
    use crate::ratpoly::int;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect::<Vec<_>>())
    }

    /// `diag(c_1 J, c_2 J, ...)` with `J = [[0, 1], [-1, 0]]`.
    fn blocks(cs: &[i64]) -> Matrix<Rational> {
        let n = 2 * cs.len();
        let mut out = Matrix::zeros(n, n);
        for (b, &c) in cs.iter().enumerate() {
            out[(2 * b, 2 * b + 1)] = int(c);
            out[(2 * b + 1, 2 * b)] = int(-c);
        }
        out
    }

    fn exact(v: i64) -> PencilValue {
        PencilValue::Finite(Root::Exact(int(v)))
    }

    /// `P0 = [[0, J], [-J^T, 0]]`, `Pinf = [[0, I], [-I, 0]]` with `J` a
    /// 2x2 Jordan block, so that `R = diag(J^T, J)`.
    fn jordan_pair(l0: i64) -> FormPair {
        let p0 = m(&[&[0, 0, l0, 1], &[0, 0, 0, l0], &[-l0, 0, 0, 0], &[-1, -l0, 0, 0]]);
        let pinf = m(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        FormPair::new(p0, pinf).unwrap()
    }

    #[test]
    fn rejects_non_skew() {
        let bad = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            FormPair::new(bad, blocks(&[1])),
            Err(PencilError::NotSkew { which: "P0", i: 1, j: 2 })
        );
        assert!(matches!(FormPair::new(blocks(&[1]), blocks(&[1, 1])), Err(PencilError::SizeMismatch { .. })));
    }

    #[test]
    fn minimal_coranks() {
        let tol = Tolerance::default();
        let pair = FormPair::new(Matrix::zeros(4, 4), blocks(&[1, 1])).unwrap();
        assert_eq!(min_corank(&pair, 20, 0), 0);
        assert_eq!(spectrum(&pair, 0, None, &tol).unwrap(), vec![SpectrumEntry { lambda: exact(0), corank: 4 }]);
        let b = b2();
        let pair = FormPair::from_algebra(&b, &[int(0), int(1)], &[int(1), int(1)]).unwrap();
        assert_eq!(min_corank(&pair, 20, 0), 0);
        let h = heisenberg(1);
        let pair = FormPair::from_algebra(&h, &[int(2), int(-1), int(3)], &[int(1), int(5), int(-2)]).unwrap();
        assert_eq!(min_corank(&pair, 20, 0), 1);
    }

    #[test]
    fn block_pencil() {
        let pair = FormPair::new(blocks(&[1, 2]), blocks(&[1, 1])).unwrap();
        let p = Pencil::new(pair, None, PencilOptions::default()).unwrap();
        assert_eq!(p.r, 0);
        assert_eq!(
            p.spectrum,
            vec![SpectrumEntry { lambda: exact(1), corank: 2 }, SpectrumEntry { lambda: exact(2), corank: 2 }]
        );
        assert!(p.l.is_empty());
        let rec = p.recursion_operator(None).unwrap();
        assert!(rec.diagonalizable);
        let eig: Vec<(Root, usize, usize)> =
            rec.eigenvalues.iter().map(|e| (e.lambda.clone(), e.algebraic, e.geometric)).collect();
        assert_eq!(eig, vec![(Root::Exact(int(1)), 2, 2), (Root::Exact(int(2)), 2, 2)]);
        let report = p.report();
        assert!(report.all_checks_pass(), "{report:#?}");
        assert_eq!(report.la4.expected_maximal, Some(true));
        assert!(report.la4.maximal_at_generic);
    }

    #[test]
    fn scalar_pencil() {
        let pair = FormPair::new(blocks(&[1, 1]), blocks(&[1, 1])).unwrap();
        let p = Pencil::new(pair, None, PencilOptions::default()).unwrap();
        assert_eq!(p.spectrum, vec![SpectrumEntry { lambda: exact(1), corank: 4 }]);
        let rec = p.recursion_operator(None).unwrap();
        assert_eq!(rec.matrix, Matrix::identity(4));
        let report = p.report();
        assert!(report.all_checks_pass(), "{report:#?}");
        assert_eq!(report.la4.expected_maximal, Some(false));
        assert!(!report.la4.maximal_at_generic);
    }

    #[test]
    fn proportional_pencil_gives_scalar_operator() {
        let pair = FormPair::new(blocks(&[3, 3]), blocks(&[1, 1])).unwrap();
        let rec = Pencil::new(pair, None, PencilOptions::default()).unwrap().recursion_operator(None).unwrap();
        assert_eq!(rec.matrix, Matrix::identity(4).scale(&int(3)));
    }

    #[test]
    fn jordan_pair_is_not_diagonalizable() {
        let p = Pencil::new(jordan_pair(2), None, PencilOptions::default()).unwrap();
        assert_eq!(p.spectrum, vec![SpectrumEntry { lambda: exact(2), corank: 2 }]);
        let rec = p.recursion_operator(None).unwrap();
        assert!(!rec.diagonalizable);
        assert_eq!(rec.eigenvalues[0].algebraic, 4);
        assert_eq!(rec.eigenvalues[0].geometric, 2);
        let la3 = p.verify_la3(&rec);
        assert!(la3.iter().all(|c| c.passed), "{la3:#?}");
        assert!(p.report().all_checks_pass());
    }

    #[test]
    fn b2_spectrum_from_hint() {
        let pair = FormPair::from_algebra(&b2(), &[int(1), int(0)], &[int(0), int(1)]).unwrap();
        let q = UniPoly::from_i64(&[0, -1]);
        let tol = Tolerance::default();
        assert_eq!(spectrum(&pair, 0, Some(&q), &tol).unwrap(), vec![SpectrumEntry { lambda: exact(0), corank: 2 }]);
        assert_eq!(spectrum(&pair, 0, None, &tol).unwrap(), vec![SpectrumEntry { lambda: exact(0), corank: 2 }]);
    }

    #[test]
    fn heisenberg_core_subspace() {
        let h = heisenberg(1);
        let pair = FormPair::from_algebra(&h, &[int(0), int(0), int(1)], &[int(1), int(1), int(1)]).unwrap();
        let p = Pencil::new(pair, None, PencilOptions::default()).unwrap();
        assert_eq!(p.r, 1);
        assert_eq!(p.l, vec![vec![int(0), int(0), int(1)]]);
        assert_eq!(p.lperp.len(), 3);
        assert_eq!(p.spectrum, vec![SpectrumEntry { lambda: exact(1), corank: 3 }]);
        assert!(p.report().all_checks_pass());
    }

    #[test]
    fn abelian_pair() {
        let alg = abelian(3);
        let x = [int(1), int(2), int(3)];
        let pair = FormPair::from_algebra(&alg, &x, &x).unwrap();
        let p = Pencil::new(pair, None, PencilOptions::default()).unwrap();
        assert_eq!(p.r, 3);
        assert_eq!(p.l.len(), 3);
        assert_eq!(p.lperp.len(), 3);
        assert!(p.spectrum.is_empty());
        let report = p.report();
        assert!(report.all_checks_pass(), "{report:#?}");
    }

    #[test]
    fn complement_choice_does_not_matter() {
        for pair in [jordan_pair(-1), FormPair::new(blocks(&[1, 2, 2]), blocks(&[1, 1, 1])).unwrap()] {
            let p = Pencil::new(pair, None, PencilOptions::default()).unwrap();
            let a = p.recursion_operator(None).unwrap();
            let b = p.recursion_operator(Some(7)).unwrap();
            assert_ne!(a.complement, b.complement);
            assert_eq!(a.char_poly, b.char_poly);
            assert_eq!(a.eigenvalues, b.eigenvalues);
            assert_eq!(a.diagonalizable, b.diagonalizable);
        }
    }

    #[test]
    fn infinity_in_spectrum() {
        let pair = FormPair::new(blocks(&[1, 1]), blocks(&[1, 0])).unwrap();
        let p = Pencil::new(pair, None, PencilOptions::default()).unwrap();
        assert_eq!(p.spectrum.last().unwrap().lambda, PencilValue::Infinity);
        assert!(matches!(p.recursion_operator(None), Err(PencilError::InfinityInSpectrum { corank: 2, r: 0 })));
        assert!(p.report().diagonalizable.is_none());
    }

    #[test]
    fn isotropy_examples() {
        let tol = Tolerance::default();
        let pair = FormPair::new(blocks(&[1]), blocks(&[2])).unwrap();
        let none: Vec<Vec<Rational>> = Vec::new();
        assert_eq!(
            isotropy_check(&pair, &none, 3, 0, &tol),
            IsotropyReport { isotropic: true, maximal_at_generic: false }
        );
        let line = vec![vec![int(1), int(0)]];
        assert_eq!(
            isotropy_check(&pair, &line, 3, 0, &tol),
            IsotropyReport { isotropic: true, maximal_at_generic: true }
        );
        let plane = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert!(!isotropy_check(&pair, &plane, 3, 0, &tol).isotropic);
    }

    #[test]
    fn characteristic_polynomial_of_jordan_block() {
        let j = m(&[&[2, 1], &[0, 2]]);
        assert_eq!(characteristic_polynomial(&j), UniPoly::from_i64(&[4, -4, 1]));
        assert!(!evaluate_at_matrix(&UniPoly::from_i64(&[-2, 1]), &j).is_zero(0.0));
    }
}
