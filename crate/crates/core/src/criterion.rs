//! Completeness of the extended family decided from stabilizers along the
//! codimension-one singular set, cross-checked against the direct Jacobian
//! rank, and the identities relating the roots `lambda_i(x)` of
//! `p_g(x - lambda a)` to the stabilizers at `x - lambda_i a`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::liealg::{classify_stabilizer, stabilizer, LieAlgebra, LieError, StabilizerClass};
use crate::linalg::{dot, exact_rank, span_basis, span_dim, vec_norm, Matrix, Scalar};
use crate::pencil::{pfaffian_gcd, FormPair, PencilError};
use crate::random;
use crate::ratpoly::{
    format_rational, squarefree_part, univariate_distinct_roots, MultiPoly, PolyError, Rational, Root, UniPoly,
};
use crate::shiftalg::{
    b_of, completeness_direct, extended_generators, mf_generators, shift_expand, GeneratorSet, ShiftError, ShiftPoint,
    TrdegOptions,
};
use crate::singular::{fundamental_semiinvariant_with, index, sing0_components, IndexCertificate, SingularError};
use crate::Tolerance;

const STREAM_NICE: u64 = 1 << 24;
const STREAM_PERTURB: u64 = 2 << 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriterionError {
    #[error("p_g is constant: the singular set has codimension at least two")]
    ConstantSemiInvariant,
    #[error("no point found on component {tag} after {attempts} lines")]
    NoRootsFound { tag: String, attempts: usize },
    #[error("point is not nice: {0}")]
    NotNice(NiceViolation),
    #[error("no nice point found after {attempts} attempts")]
    NoNicePoint { attempts: usize },
    #[error("point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The condition a point fails to be nice.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum NiceViolation {
    #[error("p_g(x - lambda a) has {found} distinct roots, expected {expected}")]
    RootCount { found: usize, expected: usize },
    #[error("stabilizer dimension at root {root} changes from {at} to {nearby} under perturbation")]
    UnstableStabilizer { root: usize, at: usize, nearby: usize },
    #[error("the line x - lambda a meets Sing outside Sing_0")]
    MeetsHigherSingular,
}

/// A rational point or a complex approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum PointValue {
    Exact(Vec<Rational>),
    Numeric(Vec<Complex64>),
}

impl PointValue {
    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            PointValue::Exact(v) => v.iter().map(Scalar::to_complex).collect(),
            PointValue::Numeric(v) => v.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PointValue::Exact(_))
    }
}

impl Serialize for PointValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PointValue::Exact(v) => s.collect_seq(v.iter().map(format_rational)),
            PointValue::Numeric(v) => s.collect_seq(v.iter().map(|z| [z.re, z.im])),
        }
    }
}

/// `base + t dir`.
fn on_line<S: Scalar>(base: &[S], dir: &[S], t: &S) -> Vec<S> {
    base.iter().zip(dir).map(|(b, d)| b.clone() + t.clone() * d.clone()).collect()
}

/// Whether `|v| <= tol * scale` (exact: `v = 0`).
fn small<S: Scalar>(v: &[S], scale: f64, tol: f64) -> bool {
    if S::EXACT {
        v.iter().all(Scalar::is_exact_zero)
    } else {
        vec_norm(v) <= tol * scale
    }
}

fn gradient_at<S: Scalar>(p: &MultiPoly, y: &[S]) -> Vec<S> {
    p.gradient().iter().map(|d| eval(d, y)).collect()
}

fn eval<S: Scalar>(p: &MultiPoly, y: &[S]) -> S {
    let mut acc = S::zero_value();
    for (m, c) in p.terms() {
        let mut term = S::from_rational(c);
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                term = term * y[i].clone();
            }
        }
        acc = acc + term;
    }
    acc
}

/// Size of `p` near `y`: sum of `|c| max(1, |y|)^deg` over terms.
fn poly_scale(p: &MultiPoly, y_norm: f64) -> f64 {
    let base = y_norm.max(1.0);
    p.terms().map(|(m, c)| c.magnitude() * base.powi(m.degree() as i32)).sum::<f64>().max(f64::MIN_POSITIVE)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularSample {
    pub point: PointValue,
    pub gradient_norm: f64,
    pub smooth: bool,
    pub corank: usize,
    pub subregular: bool,
    /// Absent when the stabilizer could not be certified as a subalgebra.
    pub stab_class: Option<StabilizerClass>,
    pub component_tag: String,
}

impl SingularSample {
    /// Smooth, subregular and classified.
    pub fn is_valid(&self) -> bool {
        self.smooth && self.subregular && self.stab_class.is_some()
    }
}

fn describe_sample<S: Scalar>(
    alg: &LieAlgebra,
    p_sf: &MultiPoly,
    ind: usize,
    y: Vec<S>,
    tag: &str,
    tol: &Tolerance,
    wrap: impl Fn(Vec<S>) -> PointValue,
) -> SingularSample {
    let grad = gradient_at(p_sf, &y);
    let gradient_norm = vec_norm(&grad);
    let smooth = !small(&grad, poly_scale(p_sf, vec_norm(&y)), tol.closure);
    let stab = stabilizer(alg, &y, tol);
    let corank = match &stab {
        Ok(h) => h.dim(),
        Err(_) => alg.dim() - alg.structure_matrix_at(&y).rank(tol.rank),
    };
    let stab_class = stab.ok().map(|h| classify_stabilizer(&h, tol));
    SingularSample {
        point: wrap(y),
        gradient_norm,
        smooth,
        corank,
        subregular: corank == ind + 2,
        stab_class,
        component_tag: tag.to_string(),
    }
}

/// One sample on the zero set of `factor`: a random line, a random root of
/// the restriction, described against the square-free part of `p_g`.
#[allow(clippy::too_many_arguments)]
fn sample_on_component(
    alg: &LieAlgebra,
    p_sf: &MultiPoly,
    factor: &MultiPoly,
    tag: &str,
    ind: usize,
    seed: u64,
    stream: u64,
    tol: &Tolerance,
) -> Result<Option<SingularSample>, CriterionError> {
    let n = alg.dim();
    let mut rng = random::rng_for(seed, stream);
    let base = random::point(&mut rng, n, 10);
    let dir = random::point(&mut rng, n, 10);
    let q = factor.restrict_to_line(&base, &dir)?;
    if q.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let roots = univariate_distinct_roots(&q)?;
    let (root, _) = &roots[rng.gen_range(0..roots.len())];
    let sample = match root {
        Root::Exact(t) => describe_sample(alg, p_sf, ind, on_line(&base, &dir, t), tag, tol, PointValue::Exact),
        Root::Numeric { value, .. } => {
            let b: Vec<Complex64> = base.iter().map(Scalar::to_complex).collect();
            let d: Vec<Complex64> = dir.iter().map(Scalar::to_complex).collect();
            describe_sample(alg, p_sf, ind, on_line(&b, &d, value), tag, tol, PointValue::Numeric)
        }
    };
    Ok(Some(sample))
}

fn component_stream(component: usize, attempt: usize) -> u64 {
    ((component as u64) << 32) | attempt as u64
}

/// `count` samples on each component of `{p_g = 0}`, valid or not.
pub fn sample_sing0(
    alg: &LieAlgebra,
    p_g: &MultiPoly,
    count: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Vec<SingularSample>, CriterionError> {
    if p_g.is_constant() {
        return Err(CriterionError::ConstantSemiInvariant);
    }
    let ind = index(alg).index;
    let p_sf = squarefree_part(p_g)?;
    let mut out = Vec::new();
    for (c, comp) in sing0_components(p_g, seed)?.iter().enumerate() {
        let mut got = 0;
        let mut attempt = 0;
        while got < count {
            if attempt >= 10 * count.max(1) {
                return Err(CriterionError::NoRootsFound { tag: comp.tag.clone(), attempts: attempt });
            }
            let stream = component_stream(c, attempt);
            attempt += 1;
            if let Some(s) = sample_on_component(alg, &p_sf, &comp.factor, &comp.tag, ind, seed, stream, tol)? {
                out.push(s);
                got += 1;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct CriterionOptions {
    /// Valid samples wanted per component; up to ten times as many attempts.
    pub samples_per_component: usize,
    pub seed: u64,
    /// Fraction of valid samples that must be `b2 + abelian`.
    pub threshold: f64,
    pub tol: Tolerance,
    pub trdeg: TrdegOptions,
}

impl Default for CriterionOptions {
    fn default() -> Self {
        CriterionOptions {
            samples_per_component: 20,
            seed: 0,
            threshold: 1.0,
            tol: Tolerance::default(),
            trdeg: TrdegOptions::default(),
        }
    }
}

/// Below this many valid samples a component is low-confidence.
pub const MIN_VALID_SAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub component_tag: String,
    pub attempts: usize,
    pub sample_count: usize,
    pub b2_fraction: f64,
    pub dominant_class: Option<StabilizerClass>,
    pub classes: BTreeMap<StabilizerClass, usize>,
    /// More than one class among valid samples.
    pub mixed: bool,
    pub low_confidence: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `p_g` non-constant: stabilizers along `Sing_0`.
    CodimOne,
    /// `p_g` constant: the classical family, complete by the codimension-two
    /// criterion.
    CodimTwo,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Verdict {
    pub branch: Branch,
    #[serde(serialize_with = "crate::singular::serialize_poly")]
    pub p_g: MultiPoly,
    pub index: usize,
    pub b_g: usize,
    pub trdeg: usize,
    pub per_component: Vec<ComponentSummary>,
    pub criterion_complete: bool,
    /// Every component has at least one `b2 + abelian` sample.
    pub corollary_complete: bool,
    pub direct_complete: bool,
    pub agreement: bool,
    pub low_confidence: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<SingularSample>,
}

/// Decides completeness of the extended family both ways and reports
/// whether the answers agree. Samples are kept in the verdict when
/// `keep_samples` is set.
pub fn theorem2_decide(
    alg: &LieAlgebra,
    a: &ShiftPoint,
    opts: &CriterionOptions,
    keep_samples: bool,
) -> Result<Theorem2Verdict, CriterionError> {
    let cert = index(alg);
    let p_g = fundamental_semiinvariant_with(alg, &cert)?;
    let b_g = b_of(alg, &cert);
    let gens = if p_g.is_constant() { mf_generators(alg, a)? } else { extended_generators(alg, a, &p_g)? };
    let direct = completeness_direct(alg, &gens, &cert, &opts.trdeg)?;

    if p_g.is_constant() {
        return Ok(Theorem2Verdict {
            branch: Branch::CodimTwo,
            p_g,
            index: cert.index,
            b_g,
            trdeg: direct.trdeg,
            per_component: Vec::new(),
            criterion_complete: true,
            corollary_complete: true,
            direct_complete: direct.complete,
            agreement: direct.complete,
            low_confidence: false,
            samples: Vec::new(),
        });
    }

    let p_sf = squarefree_part(&p_g)?;
    let want = opts.samples_per_component;
    let mut per_component = Vec::new();
    let mut kept = Vec::new();
    for (c, comp) in sing0_components(&p_g, opts.seed)?.iter().enumerate() {
        let mut valid: Vec<SingularSample> = Vec::new();
        let mut attempts = 0;
        while valid.len() < want && attempts < 10 * want.max(1) {
            let stream = component_stream(c, attempts);
            attempts += 1;
            let Some(s) =
                sample_on_component(alg, &p_sf, &comp.factor, &comp.tag, cert.index, opts.seed, stream, &opts.tol)?
            else {
                continue;
            };
            if keep_samples {
                kept.push(s.clone());
            }
            if s.is_valid() {
                valid.push(s);
            }
        }
        let mut classes = BTreeMap::new();
        for s in &valid {
            *classes.entry(s.stab_class.expect("valid")).or_insert(0) += 1;
        }
        let b2 = classes.get(&StabilizerClass::B2PlusAbelian).copied().unwrap_or(0);
        let dominant_class = classes.iter().max_by_key(|(k, v)| (**v, std::cmp::Reverse(**k))).map(|(k, _)| *k);
        per_component.push(ComponentSummary {
            component_tag: comp.tag.clone(),
            attempts,
            sample_count: valid.len(),
            b2_fraction: if valid.is_empty() { 0.0 } else { b2 as f64 / valid.len() as f64 },
            dominant_class,
            mixed: classes.len() > 1,
            classes,
            low_confidence: valid.len() < MIN_VALID_SAMPLES,
        });
    }
    let criterion_complete =
        per_component.iter().all(|c| c.sample_count > 0 && c.b2_fraction >= opts.threshold);
    let corollary_complete = per_component.iter().all(|c| c.classes.contains_key(&StabilizerClass::B2PlusAbelian));
    let low_confidence = per_component.iter().any(|c| c.low_confidence || c.mixed);
    Ok(Theorem2Verdict {
        branch: Branch::CodimOne,
        p_g,
        index: cert.index,
        b_g,
        trdeg: direct.trdeg,
        per_component,
        criterion_complete,
        corollary_complete,
        direct_complete: direct.complete,
        agreement: criterion_complete == direct.complete,
        low_confidence,
        samples: kept,
    })
}

/// `p_sf(x - lambda a)` as a polynomial in `lambda`.
fn line_poly(p: &MultiPoly, x: &[Rational], a: &[Rational]) -> Result<UniPoly, PolyError> {
    let minus_a: Vec<Rational> = a.iter().map(|v| -v).collect();
    p.restrict_to_line(x, &minus_a)
}

/// Simple root of `q` near `start` by Newton's method.
fn newton_root(q: &UniPoly, start: Complex64) -> Complex64 {
    let dq = q.derivative();
    let mut z = start;
    for _ in 0..100 {
        let step = q.eval_complex(z) / dq.eval_complex(z);
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

fn corank_at_complex(alg: &LieAlgebra, y: &[Complex64], tol: &Tolerance) -> usize {
    let m = alg.structure_matrix_at(y);
    let scale = m.max_magnitude().max(f64::MIN_POSITIVE);
    alg.dim() - m.rank_scaled(tol.rank, scale)
}

fn corank_at_root(alg: &LieAlgebra, x: &[Rational], a: &[Rational], root: &Root, tol: &Tolerance) -> usize {
    match root {
        Root::Exact(l) => {
            let y: Vec<Rational> = x.iter().zip(a).map(|(xi, ai)| xi - l * ai).collect();
            alg.dim() - exact_rank(&alg.structure_matrix_at(&y))
        }
        Root::Numeric { value, .. } => {
            let y: Vec<Complex64> = x.iter().zip(a).map(|(xi, ai)| xi.to_complex() - value * ai.to_complex()).collect();
            corank_at_complex(alg, &y, tol)
        }
    }
}

/// Checks that `x` is nice for `a`: the square-free restriction has
/// `deg p_sf` simple roots, the stabilizer dimension at each root is
/// unchanged for two small perturbations of `x`, and every point of the
/// line with corank above the index is a root.
pub fn nice_check(
    alg: &LieAlgebra,
    a: &[Rational],
    p_g: &MultiPoly,
    x: &[Rational],
    ind: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Result<Vec<Root>, NiceViolation>, CriterionError> {
    let n = alg.dim();
    let p_sf = squarefree_part(p_g)?;
    let d = p_sf.degree().unwrap_or(0) as usize;
    let q = line_poly(&p_sf, x, a)?;
    let roots: Vec<Root> = if q.degree().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        univariate_distinct_roots(&q)?.into_iter().map(|(r, _)| r).collect()
    };
    let simple = q.degree() == Some(d) && q.squarefree_part().degree() == Some(d);
    if roots.len() != d || (d > 0 && !simple) {
        return Ok(Err(NiceViolation::RootCount { found: roots.len(), expected: d }));
    }

    let pair = FormPair::from_algebra(alg, x, a)?;
    let g = pfaffian_gcd(&pair, ind)?;
    if g.degree().unwrap_or(0) > 0 {
        let (_, rem) = q.div_rem(&g.squarefree_part());
        if d == 0 || !rem.is_zero() {
            return Ok(Err(NiceViolation::MeetsHigherSingular));
        }
    }

    let coranks: Vec<usize> = roots.iter().map(|r| corank_at_root(alg, x, a, r, tol)).collect();
    let h = Rational::new(1.into(), 1000.into());
    for k in 0..2u64 {
        let mut rng = random::rng_for(seed, STREAM_PERTURB + k);
        let v = random::integer_point(&mut rng, n, 10);
        let xp: Vec<Rational> = x.iter().zip(&v).map(|(xi, vi)| xi + &h * vi).collect();
        let qp = line_poly(&p_sf, &xp, a)?;
        for (i, r) in roots.iter().enumerate() {
            let lp = newton_root(&qp, r.to_complex());
            let y: Vec<Complex64> =
                xp.iter().zip(a).map(|(xi, ai)| xi.to_complex() - lp * ai.to_complex()).collect();
            let nearby = corank_at_complex(alg, &y, tol);
            if nearby != coranks[i] {
                return Ok(Err(NiceViolation::UnstableStabilizer { root: i + 1, at: coranks[i], nearby }));
            }
        }
    }
    Ok(Ok(roots))
}

/// A seeded random nice point (coordinates of height 10).
pub fn find_nice_point(
    alg: &LieAlgebra,
    a: &[Rational],
    p_g: &MultiPoly,
    ind: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Vec<Rational>, CriterionError> {
    const ATTEMPTS: usize = 50;
    for k in 0..ATTEMPTS {
        let mut rng = random::rng_for(seed, STREAM_NICE + k as u64);
        let x = random::integer_point(&mut rng, alg.dim(), 10);
        if nice_check(alg, a, p_g, &x, ind, seed, tol)?.is_ok() {
            return Ok(x);
        }
    }
    Err(CriterionError::NoNicePoint { attempts: ATTEMPTS })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaDifferential {
    pub lambda: Root,
    pub d_lambda: PointValue,
    pub stabilizer_dim: usize,
    /// `|A_y d lambda|`, relative; zero when exact.
    pub prefund_residual: f64,
    /// Largest `|[xi, eta] - <a, [xi, eta]> d lambda|` over stabilizer basis
    /// pairs, relative; zero when exact.
    pub fundid_residual: f64,
    pub prefund_ok: bool,
    pub fundid_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaReport {
    pub roots: Vec<LambdaDifferential>,
    pub span_lambda_dim: usize,
    pub span_shift_dim: usize,
    pub spandiff_ok: bool,
    /// All roots rational, so every check above is exact.
    pub exact: bool,
}

impl LambdaReport {
    pub fn all_ok(&self) -> bool {
        self.spandiff_ok && self.roots.iter().all(|r| r.prefund_ok && r.fundid_ok)
    }
}

/// Residual threshold for numeric identity checks.
pub const IDENTITY_TOL: f64 = 1e-8;

fn root_checks<S: Scalar>(
    alg: &LieAlgebra,
    p_sf: &MultiPoly,
    x: &[S],
    a: &[S],
    lambda: &S,
    tol: &Tolerance,
) -> Result<(Vec<S>, usize, f64, f64), CriterionError> {
    let y: Vec<S> = x.iter().zip(a).map(|(xi, ai)| xi.clone() - lambda.clone() * ai.clone()).collect();
    let g = gradient_at(p_sf, &y);
    let denom = dot(&g, a);
    let dl: Vec<S> = g.iter().map(|v| v.clone() / denom.clone()).collect();
    let ay = alg.structure_matrix_at(&y);
    let ay_scale = ay.max_magnitude().max(f64::MIN_POSITIVE);
    let res = ay.mul_vec(&dl);
    let prefund = if S::EXACT && res.iter().all(Scalar::is_exact_zero) {
        0.0
    } else {
        vec_norm(&res) / (ay_scale * vec_norm(&dl).max(f64::MIN_POSITIVE))
    };
    let h = stabilizer(alg, &y, tol)?;
    let basis = h.basis();
    let mut fundid: f64 = 0.0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let br = alg.bracket(&basis[i], &basis[j]);
            let pairing = dot(a, &br);
            let diff: Vec<S> = br.iter().zip(&dl).map(|(b, d)| b.clone() - pairing.clone() * d.clone()).collect();
            if S::EXACT && diff.iter().all(Scalar::is_exact_zero) {
                continue;
            }
            let scale = vec_norm(&basis[i]) * vec_norm(&basis[j]) * (1.0 + vec_norm(a) * vec_norm(&dl));
            fundid = fundid.max(vec_norm(&diff) / scale.max(f64::MIN_POSITIVE));
        }
    }
    Ok((dl, h.dim(), prefund, fundid))
}

/// Computes `d lambda_i(x) = grad p_sf(y_i) / <grad p_sf(y_i), a>` at
/// `y_i = x - lambda_i a` for each root, and checks that it lies in the
/// stabilizer of `y_i`, the identity `[xi, eta] = <a, [xi, eta]> d lambda_i`
/// on that stabilizer, and that the `d lambda_i` span the same space as the
/// differentials of the shifts of `p_g`.
pub fn verify_lambda_differentials(
    alg: &LieAlgebra,
    a: &ShiftPoint,
    p_g: &MultiPoly,
    x: &[Rational],
    seed: u64,
    tol: &Tolerance,
) -> Result<LambdaReport, CriterionError> {
    let n = alg.dim();
    if x.len() != n {
        return Err(CriterionError::PointLength { expected: n, got: x.len() });
    }
    let cert: IndexCertificate = index(alg);
    let av = a.coords();
    let roots = nice_check(alg, av, p_g, x, cert.index, seed, tol)?.map_err(CriterionError::NotNice)?;
    let p_sf = squarefree_part(p_g)?;
    let exact = roots.iter().all(Root::is_exact);

    let mut out = Vec::new();
    let mut dls: Vec<Vec<Complex64>> = Vec::new();
    let mut dls_exact: Vec<Vec<Rational>> = Vec::new();
    for root in &roots {
        let (d_lambda, stabilizer_dim, prefund, fundid) = match root {
            Root::Exact(l) => {
                let (dl, k, p, f) = root_checks(alg, &p_sf, x, av, l, tol)?;
                dls.push(dl.iter().map(Scalar::to_complex).collect());
                dls_exact.push(dl.clone());
                (PointValue::Exact(dl), k, p, f)
            }
            Root::Numeric { value, .. } => {
                let xc: Vec<Complex64> = x.iter().map(Scalar::to_complex).collect();
                let ac: Vec<Complex64> = av.iter().map(Scalar::to_complex).collect();
                let (dl, k, p, f) = root_checks(alg, &p_sf, &xc, &ac, value, tol)?;
                dls.push(dl.clone());
                (PointValue::Numeric(dl), k, p, f)
            }
        };
        out.push(LambdaDifferential {
            lambda: root.clone(),
            d_lambda,
            stabilizer_dim,
            prefund_residual: prefund,
            fundid_residual: fundid,
            prefund_ok: prefund <= IDENTITY_TOL,
            fundid_ok: fundid <= IDENTITY_TOL,
        });
    }

    let shifts: Vec<MultiPoly> = shift_expand(p_g, av)?.into_iter().filter(|p| !p.is_constant()).collect();
    let shift_grads: Vec<Vec<Rational>> = shifts.iter().map(|p| gradient_at(p, x)).collect();
    let (span_lambda_dim, span_shift_dim, spandiff_ok) = if exact {
        let dl = span_dim(&dls_exact, n, 0.0);
        let ds = span_dim(&shift_grads, n, 0.0);
        let both = span_dim(&[dls_exact.as_slice(), shift_grads.as_slice()].concat(), n, 0.0);
        (dl, ds, dl == ds && both == dl)
    } else {
        let sg: Vec<Vec<Complex64>> =
            shift_grads.iter().map(|v| v.iter().map(Scalar::to_complex).collect()).collect();
        let dl = span_dim(&dls, n, tol.rank);
        let ds = span_dim(&sg, n, tol.rank);
        let both = span_dim(&[dls.as_slice(), sg.as_slice()].concat(), n, tol.rank);
        (dl, ds, dl == ds && both == dl)
    };
    Ok(LambdaReport { roots: out, span_lambda_dim, span_shift_dim, spandiff_ok, exact })
}

/// Basis of `{d f(x) : f in gens}` (exact Jacobian row space).
pub fn differential_span(gens: &GeneratorSet, x: &[Rational]) -> Vec<Vec<Rational>> {
    let n = x.len();
    let rows: Vec<Vec<Rational>> = gens.generators.iter().map(|g| gradient_at(&g.poly, x)).collect();
    let nonzero: Vec<Vec<Rational>> = rows.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())).collect();
    span_basis(&nonzero, n, 0.0)
}

/// `A_a` restricted to `span(basis)`.
pub fn restricted_frozen_form(alg: &LieAlgebra, a: &[Rational], basis: &[Vec<Rational>]) -> Matrix<Rational> {
    crate::linalg::restrict_form(&alg.structure_matrix_at(a), basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{b2, catalog, heisenberg};
    use crate::ratpoly::int;
    use crate::singular::fundamental_semiinvariant;

    fn pts(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    fn shift_point(alg: &LieAlgebra, a: &[i64]) -> ShiftPoint {
        ShiftPoint::new(alg, pts(a), &index(alg)).unwrap()
    }

    #[test]
    fn b2_samples_are_b2() {
        let alg = b2();
        let samples = sample_sing0(&alg, &fundamental_semiinvariant(&alg).unwrap(), 5, 0, &Tolerance::default()).unwrap();
        assert_eq!(samples.len(), 5);
        for s in &samples {
            assert_eq!(s.corank, 2);
            assert!(s.is_valid());
            assert_eq!(s.stab_class, Some(StabilizerClass::B2PlusAbelian));
            assert_eq!(s.component_tag, "x2");
        }
    }

    #[test]
    fn h3_samples_are_heisenberg() {
        let alg = heisenberg(1);
        let samples = sample_sing0(&alg, &fundamental_semiinvariant(&alg).unwrap(), 5, 0, &Tolerance::default()).unwrap();
        assert!(samples.iter().all(|s| s.corank == 3 && s.stab_class == Some(StabilizerClass::HeisenbergPlusAbelian)));
    }

    #[test]
    fn sum_samples_split_by_component() {
        let alg = catalog("b2+h3").unwrap();
        let samples = sample_sing0(&alg, &fundamental_semiinvariant(&alg).unwrap(), 4, 0, &Tolerance::default()).unwrap();
        for s in &samples {
            let want = if s.component_tag == "x2" {
                StabilizerClass::B2PlusAbelian
            } else {
                StabilizerClass::HeisenbergPlusAbelian
            };
            assert_eq!(s.stab_class, Some(want), "{s:?}");
        }
        assert_eq!(samples.iter().filter(|s| s.component_tag == "x5").count(), 4);
    }

    #[test]
    fn verdicts() {
        let opts = CriterionOptions { samples_per_component: 6, ..Default::default() };
        let cases = [("b2", vec![0, 1], true), ("h3", vec![0, 0, 1], false), ("b2+h3", vec![0, 1, 0, 0, 1], false)];
        for (name, a, complete) in cases {
            let alg = catalog(name).unwrap();
            let v = theorem2_decide(&alg, &shift_point(&alg, &a), &opts, false).unwrap();
            assert_eq!(v.criterion_complete, complete, "{name}");
            assert_eq!(v.direct_complete, complete, "{name}");
            assert!(v.agreement);
        }
        let sl2 = catalog("sl2").unwrap();
        let v = theorem2_decide(&sl2, &ShiftPoint::random(&sl2, &index(&sl2), 0), &opts, false).unwrap();
        assert_eq!(v.branch, Branch::CodimTwo);
        assert!(v.direct_complete && v.agreement);
    }

    #[test]
    fn b2_lambda_differential() {
        let alg = b2();
        let p = fundamental_semiinvariant(&alg).unwrap();
        let rep = verify_lambda_differentials(&alg, &shift_point(&alg, &[0, 1]), &p, &pts(&[1, 0]), 0, &Tolerance::default())
            .unwrap();
        assert_eq!(rep.roots.len(), 1);
        assert_eq!(rep.roots[0].lambda, Root::Exact(int(0)));
        assert_eq!(rep.roots[0].d_lambda, PointValue::Exact(pts(&[0, 1])));
        assert_eq!(rep.roots[0].stabilizer_dim, 2);
        assert!(rep.all_ok() && rep.exact);
    }

    #[test]
    fn non_nice_point_is_rejected() {
        let alg = catalog("b2+h3").unwrap();
        let p = fundamental_semiinvariant(&alg).unwrap();
        let a = shift_point(&alg, &[0, 1, 0, 0, 1]);
        // x2/a2 = x5/a5 makes the two roots collide.
        let err = verify_lambda_differentials(&alg, &a, &p, &pts(&[1, 2, 3, 4, 2]), 0, &Tolerance::default());
        assert!(matches!(err, Err(CriterionError::NotNice(NiceViolation::RootCount { found: 1, expected: 2 }))));
    }

    #[test]
    fn sum_lambda_differentials_span_two() {
        let alg = catalog("b2+h3").unwrap();
        let p = fundamental_semiinvariant(&alg).unwrap();
        let a = shift_point(&alg, &[0, 1, 0, 0, 1]);
        let x = find_nice_point(&alg, a.coords(), &p, 1, 0, &Tolerance::default()).unwrap();
        let rep = verify_lambda_differentials(&alg, &a, &p, &x, 0, &Tolerance::default()).unwrap();
        assert_eq!((rep.span_lambda_dim, rep.span_shift_dim), (2, 2));
        assert!(rep.all_ok());
    }
}
