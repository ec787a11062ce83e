//! Argument-shift expansion, classical and extended Mischenko–Fomenko
//! generator sets, and transcendence degree by Jacobian rank.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::liealg::LieAlgebra;
use crate::linalg::{exact_rank, Matrix};
use crate::poisson::{check_pairwise_commute, CommuteWitness, PoissonError};
use crate::random;
use crate::ratpoly::{format_rational, MultiPoly, PolyError, Rational};
use crate::singular::IndexCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("shift point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("shift point is not regular: rank A_a = {rank}, generic rank is {t}")]
    Irregular { rank: usize, t: usize },
    #[error("generators {} and {} do not commute ({:?} bracket is {})", .0.first + 1, .0.second + 1, .0.kind, .0.bracket)]
    NotCommuting(Box<CommuteWitness>),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

/// A shift point `a` whose regularity (`rank A_a = t`) was checked exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftPoint {
    a: Vec<Rational>,
}

impl ShiftPoint {
    pub fn new(alg: &LieAlgebra, a: Vec<Rational>, cert: &IndexCertificate) -> Result<Self, ShiftError> {
        if a.len() != alg.dim() {
            return Err(ShiftError::PointLength { expected: alg.dim(), got: a.len() });
        }
        let rank = exact_rank(&alg.structure_matrix_at(&a));
        if rank != cert.t {
            return Err(ShiftError::Irregular { rank, t: cert.t });
        }
        Ok(ShiftPoint { a })
    }

    /// A seeded random regular point (integer coordinates in `[-10, 10]`).
    pub fn random(alg: &LieAlgebra, cert: &IndexCertificate, seed: u64) -> Self {
        for stream in 0.. {
            let mut rng = random::rng_for(seed, stream);
            let a = random::integer_point(&mut rng, alg.dim(), 10);
            if let Ok(p) = ShiftPoint::new(alg, a, cert) {
                return p;
            }
        }
        unreachable!("regular points are dense")
    }

    pub fn coords(&self) -> &[Rational] {
        &self.a
    }
}

impl Serialize for ShiftPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.a.iter().map(format_rational))
    }
}

/// Coefficients `f_0, ..., f_deg` of `f(a + lambda x) = sum_j f_j(x) lambda^j`.
pub fn shift_expand(f: &MultiPoly, a: &[Rational]) -> Result<Vec<MultiPoly>, ShiftError> {
    if f.nvars() != a.len() {
        return Err(ShiftError::PointLength { expected: f.nvars(), got: a.len() });
    }
    Ok(f.shift_coefficients(a)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Classical,
    Extended,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Index into the algebra's invariant list.
    Invariant(usize),
    FundamentalSemiInvariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    #[serde(serialize_with = "crate::singular::serialize_poly")]
    pub poly: MultiPoly,
    pub origin: Origin,
    /// Power of `lambda` the generator multiplies.
    pub power: usize,
}

/// A set of pairwise commuting, non-constant generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub kind: GeneratorKind,
    pub generators: Vec<Generator>,
    pub notes: Vec<String>,
}

impl GeneratorSet {
    pub fn polys(&self) -> Vec<MultiPoly> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }
}

/// Adds the non-constant shift coefficients of `f`, skipping those equal
/// (up to scalar) to one already present.
fn push_shifts(
    out: &mut Vec<Generator>,
    seen: &mut BTreeSet<String>,
    f: &MultiPoly,
    a: &[Rational],
    origin: Origin,
) -> Result<(), ShiftError> {
    for (power, c) in shift_expand(f, a)?.into_iter().enumerate() {
        if c.is_constant() {
            continue;
        }
        if seen.insert(c.normalized().to_string()) {
            out.push(Generator { poly: c, origin: origin.clone(), power });
        }
    }
    Ok(())
}

fn certify(alg: &LieAlgebra, a: &ShiftPoint, gens: &[Generator]) -> Result<(), ShiftError> {
    let polys: Vec<MultiPoly> = gens.iter().map(|g| g.poly.clone()).collect();
    match check_pairwise_commute(alg, a.coords(), &polys)? {
        Some(w) => Err(ShiftError::NotCommuting(Box::new(w))),
        None => Ok(()),
    }
}

/// Shifts of the attached invariants (the classical family `F_a`).
pub fn mf_generators(alg: &LieAlgebra, a: &ShiftPoint) -> Result<GeneratorSet, ShiftError> {
    let mut gens = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, f) in alg.invariants().iter().enumerate() {
        push_shifts(&mut gens, &mut seen, f, a.coords(), Origin::Invariant(i))?;
    }
    let mut notes = Vec::new();
    if alg.invariants().is_empty() {
        notes.push("no invariants attached: classical set is empty".to_string());
    }
    certify(alg, a, &gens)?;
    Ok(GeneratorSet { kind: GeneratorKind::Classical, generators: gens, notes })
}

/// The classical set together with the shifts of `p_g`.
pub fn extended_generators(alg: &LieAlgebra, a: &ShiftPoint, p_g: &MultiPoly) -> Result<GeneratorSet, ShiftError> {
    let mut gens = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, f) in alg.invariants().iter().enumerate() {
        push_shifts(&mut gens, &mut seen, f, a.coords(), Origin::Invariant(i))?;
    }
    push_shifts(&mut gens, &mut seen, p_g, a.coords(), Origin::FundamentalSemiInvariant)?;
    let mut notes = Vec::new();
    if gens.is_empty() {
        notes.push("no generators available: no invariants attached and p_g is constant".to_string());
    }
    certify(alg, a, &gens)?;
    Ok(GeneratorSet { kind: GeneratorKind::Extended, generators: gens, notes })
}

#[derive(Debug, Clone, Copy)]
pub struct TrdegOptions {
    pub samples: usize,
    /// Consecutive points without a rank increase before stopping.
    pub window: usize,
    pub seed: u64,
}

impl Default for TrdegOptions {
    fn default() -> Self {
        TrdegOptions { samples: 20, window: 8, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrdegEstimate {
    pub trdeg: usize,
    pub witness_point: Option<Vec<Rational>>,
    pub points: usize,
}

impl Serialize for TrdegEstimate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let w: Option<Vec<String>> = self.witness_point.as_ref().map(|p| p.iter().map(format_rational).collect());
        let mut st = s.serialize_struct("TrdegEstimate", 3)?;
        st.serialize_field("trdeg", &self.trdeg)?;
        st.serialize_field("witness_point", &w)?;
        st.serialize_field("points", &self.points)?;
        st.end()
    }
}

/// Exact Jacobian matrix of `polys` at `x`.
pub fn jacobian_at(polys: &[MultiPoly], x: &[Rational]) -> Result<Matrix<Rational>, ShiftError> {
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| p.gradient().iter().map(|d| d.evaluate(x)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_rows_with_cols(&rows, x.len()))
}

/// Maximum exact Jacobian rank over random points: point `i` is drawn from
/// stream `i` of the seed. Stops at `samples` points, after `window` points
/// without increase, or when the rank reaches `min(#polys, nvars)`.
pub fn trdeg_estimate(polys: &[MultiPoly], nvars: usize, opts: &TrdegOptions) -> Result<TrdegEstimate, ShiftError> {
    if polys.is_empty() {
        return Ok(TrdegEstimate { trdeg: 0, witness_point: None, points: 0 });
    }
    let ceiling = polys.len().min(nvars);
    let grads: Vec<Vec<MultiPoly>> = polys.iter().map(MultiPoly::gradient).collect();
    let mut best = 0;
    let mut witness = None;
    let mut stable = 0;
    let mut points = 0;
    while points < opts.samples.max(1) && stable < opts.window && best < ceiling {
        let mut rng = random::rng_for(opts.seed, points as u64);
        let x = random::point(&mut rng, nvars, random::height_for_trial(points));
        points += 1;
        let rows: Vec<Vec<Rational>> = grads
            .iter()
            .map(|g| g.iter().map(|d| d.evaluate(&x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let rank = exact_rank(&Matrix::from_rows_with_cols(&rows, nvars));
        if rank > best || witness.is_none() {
            best = best.max(rank);
            witness = Some(x);
            stable = 0;
        } else {
            stable += 1;
        }
    }
    Ok(TrdegEstimate { trdeg: best, witness_point: witness, points })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectCompleteness {
    pub complete: bool,
    pub trdeg: usize,
    pub b_g: usize,
}

/// `b(g) = (dim + ind) / 2`.
pub fn b_of(alg: &LieAlgebra, cert: &IndexCertificate) -> usize {
    (alg.dim() + cert.index) / 2
}

/// Compares the Jacobian-rank transcendence degree with `b(g)`.
pub fn completeness_direct(
    alg: &LieAlgebra,
    gens: &GeneratorSet,
    cert: &IndexCertificate,
    opts: &TrdegOptions,
) -> Result<DirectCompleteness, ShiftError> {
    let est = trdeg_estimate(&gens.polys(), alg.dim(), opts)?;
    let b_g = b_of(alg, cert);
    Ok(DirectCompleteness { complete: est.trdeg == b_g, trdeg: est.trdeg, b_g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{b2, heisenberg, sl2};
    use crate::ratpoly::int;
    use crate::singular::{fundamental_semiinvariant, index};

    fn pts(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    fn parse(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s, n).unwrap()
    }

    #[test]
    fn expansions() {
        assert_eq!(
            shift_expand(&parse("x1^2", 2), &pts(&[3, 0])).unwrap(),
            vec![MultiPoly::constant(2, int(9)), parse("6*x1", 2), parse("x1^2", 2)]
        );
        assert_eq!(
            shift_expand(&parse("x3", 3), &pts(&[0, 0, 1])).unwrap(),
            vec![MultiPoly::one(3), parse("x3", 3)]
        );
        let c = parse("x1^2 + 4*x2*x3", 3);
        assert_eq!(
            shift_expand(&c, &pts(&[1, 0, 0])).unwrap(),
            vec![MultiPoly::one(3), parse("2*x1", 3), c.clone()]
        );
        assert_eq!(
            shift_expand(&c, &pts(&[0, 1, 0])).unwrap(),
            vec![MultiPoly::zero(3), parse("4*x3", 3), c.clone()]
        );
    }

    #[test]
    fn regularity_is_checked() {
        let alg = b2();
        let cert = index(&alg);
        assert!(ShiftPoint::new(&alg, pts(&[0, 1]), &cert).is_ok());
        assert_eq!(ShiftPoint::new(&alg, pts(&[1, 0]), &cert), Err(ShiftError::Irregular { rank: 0, t: 2 }));
    }

    #[test]
    fn generator_sets() {
        let alg = b2();
        let a = ShiftPoint::new(&alg, pts(&[0, 1]), &index(&alg)).unwrap();
        assert!(mf_generators(&alg, &a).unwrap().is_empty());
        let ext = extended_generators(&alg, &a, &fundamental_semiinvariant(&alg).unwrap()).unwrap();
        assert_eq!(ext.polys(), vec![parse("x2", 2)]);

        let s = sl2();
        let a = ShiftPoint::new(&s, pts(&[0, 1, 0]), &index(&s)).unwrap();
        let gens = mf_generators(&s, &a).unwrap();
        assert_eq!(gens.polys(), vec![parse("4*x3", 3), parse("x1^2 + 4*x2*x3", 3)]);

        let h = heisenberg(1);
        let a = ShiftPoint::new(&h, pts(&[0, 0, 1]), &index(&h)).unwrap();
        assert_eq!(mf_generators(&h, &a).unwrap().polys(), vec![parse("x3", 3)]);
        let ext = extended_generators(&h, &a, &fundamental_semiinvariant(&h).unwrap()).unwrap();
        assert_eq!(ext.polys(), vec![parse("x3", 3)]);
    }

    #[test]
    fn trdeg_examples() {
        let opts = TrdegOptions::default();
        assert_eq!(trdeg_estimate(&[parse("x1", 2), parse("x1^2", 2)], 2, &opts).unwrap().trdeg, 1);
        assert_eq!(trdeg_estimate(&[], 2, &opts).unwrap().trdeg, 0);
        let s = sl2();
        let cert = index(&s);
        let a = ShiftPoint::random(&s, &cert, 1);
        let gens = mf_generators(&s, &a).unwrap();
        let d = completeness_direct(&s, &gens, &cert, &opts).unwrap();
        assert_eq!((d.trdeg, d.b_g, d.complete), (2, 2, true));
        let h = heisenberg(1);
        let hc = index(&h);
        let a = ShiftPoint::new(&h, pts(&[0, 0, 1]), &hc).unwrap();
        let ext = extended_generators(&h, &a, &fundamental_semiinvariant(&h).unwrap()).unwrap();
        let d = completeness_direct(&h, &ext, &hc, &opts).unwrap();
        assert_eq!((d.trdeg, d.b_g, d.complete), (1, 2, false));
    }
}
