use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{format_rational, rational_to_f64, PolyError, Rational, UniPoly};

/// A root of a rational univariate polynomial: exact when rational,
/// otherwise a floating-point approximation with its relative residual.
#[derive(Debug, Clone, PartialEq)]
pub enum Root {
    Exact(Rational),
    Numeric { value: Complex64, residual: f64 },
}

impl Root {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Root::Exact(r) => Complex64::new(rational_to_f64(r), 0.0),
            Root::Numeric { value, .. } => *value,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Root::Exact(r) => Some(r),
            Root::Numeric { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Root::Exact(_))
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Root::Exact(r) => write!(f, "{}", format_rational(r)),
            Root::Numeric { value, .. } if value.im == 0.0 => write!(f, "{:.12e}", value.re),
            Root::Numeric { value, .. } => write!(f, "{:.12e}{:+.12e}i", value.re, value.im),
        }
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            Root::Exact(r) => {
                let mut st = s.serialize_struct("Root", 1)?;
                st.serialize_field("exact", &format_rational(r))?;
                st.end()
            }
            Root::Numeric { value, residual } => {
                let mut st = s.serialize_struct("Root", 3)?;
                st.serialize_field("re", &value.re)?;
                st.serialize_field("im", &value.im)?;
                st.serialize_field("residual", residual)?;
                st.end()
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Relative residual a numeric root must reach after polishing.
    pub residual_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { residual_tol: 1e-9 }
    }
}

/// All complex roots of `q` with multiplicities.
///
/// Multiplicities come from the square-free decomposition. Each square-free
/// factor is searched for rational roots (confirmed by exact evaluation and
/// deflated exactly); what remains is solved through the eigenvalues of its
/// companion matrix, followed by Newton polishing. Rational roots come first
/// in increasing order, then numeric roots ordered by real then imaginary
/// part.
pub fn univariate_distinct_roots(q: &UniPoly) -> Result<Vec<(Root, usize)>, PolyError> {
    univariate_distinct_roots_with(q, RootOptions::default())
}

pub fn univariate_distinct_roots_with(q: &UniPoly, opts: RootOptions) -> Result<Vec<(Root, usize)>, PolyError> {
    if q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut exact = Vec::new();
    let mut numeric = Vec::new();
    for (factor, mult) in q.squarefree_decomposition() {
        let (rats, rest) = rational_roots(&factor, opts.residual_tol);
        exact.extend(rats.into_iter().map(|r| (r, mult)));
        for (value, residual) in numeric_roots(&rest, &factor, opts.residual_tol) {
            numeric.push((Root::Numeric { value, residual }, mult));
        }
    }
    exact.sort_by(|a, b| a.0.cmp(&b.0));
    numeric.sort_by(|a, b| {
        let (x, y) = (a.0.to_complex(), b.0.to_complex());
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });
    Ok(exact.into_iter().map(|(r, m)| (Root::Exact(r), m)).chain(numeric).collect())
}

/// Rational roots of a square-free polynomial and the exact cofactor left
/// after dividing them out.
fn rational_roots(f: &UniPoly, tol: f64) -> (Vec<Rational>, UniPoly) {
    let mut rest = f.primitive();
    let mut found = Vec::new();
    // roots at zero first: they never show up as convergents of tiny floats
    while rest.degree().unwrap_or(0) > 0 && rest.coeffs()[0].is_zero() {
        found.push(Rational::zero());
        rest = rest.div_rem(&UniPoly::linear_factor(&Rational::zero())).0;
    }
    while let Some(deg) = rest.degree().filter(|&d| d > 0) {
        if deg == 1 {
            let c = rest.coeffs();
            found.push(-&c[0] / &c[1]);
            rest = UniPoly::constant(Rational::one());
            break;
        }
        let lead = rest.primitive().leading_coefficient().cloned().unwrap();
        let bound = lead.numer().abs();
        let mut hit = None;
        for (z, _) in numeric_roots(&rest, &rest, tol) {
            if z.im.abs() > 1e-6 * z.norm().max(1.0) {
                continue;
            }
            if let Some(r) = convergents(z.re, &bound).into_iter().find(|r| rest.eval(r).is_zero()) {
                hit = Some(r);
                break;
            }
        }
        match hit {
            Some(r) => {
                rest = rest.div_rem(&UniPoly::linear_factor(&r)).0.primitive();
                found.push(r);
            }
            None => break,
        }
    }
    (found, rest)
}

/// Continued-fraction convergents of `x` with denominators up to `bound`.
fn convergents(x: f64, bound: &BigInt) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if &k2 > bound && !out.is_empty() {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
        if !v.is_finite() || v.abs() > 1e15 {
            break;
        }
    }
    out
}

/// Complex roots of `g` (which divides `f`), polished against `f`, with the
/// relative residual measured on `f`. Roots still above `tol` get a longer
/// polishing run.
fn numeric_roots(g: &UniPoly, f: &UniPoly, tol: f64) -> Vec<(Complex64, f64)> {
    let Some(deg) = g.degree().filter(|&d| d > 0) else {
        return Vec::new();
    };
    let monic = g.monic();
    let c: Vec<f64> = monic.coeffs().iter().map(rational_to_f64).collect();
    let raw: Vec<Complex64> = if deg == 1 {
        vec![Complex64::new(-c[0], 0.0)]
    } else {
        let mut comp = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            comp[(i, deg - 1)] = -c[i];
        }
        comp.complex_eigenvalues().iter().copied().collect()
    };
    let fc: Vec<f64> = f.coeffs().iter().map(rational_to_f64).collect();
    let gc: Vec<f64> = monic.coeffs().iter().map(rational_to_f64).collect();
    raw.into_iter()
        .map(|z0| {
            let z = newton(&gc, z0, 8);
            let mut z = clean_imaginary(newton(&fc, z, 4));
            if relative_residual(&fc, z) > tol {
                z = clean_imaginary(newton(&fc, z, 60));
            }
            (z, relative_residual(&fc, z))
        })
        .collect()
}

fn newton(c: &[f64], mut z: Complex64, iters: usize) -> Complex64 {
    for _ in 0..iters {
        let (v, d) = horner_with_derivative(c, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = v / d;
        let next = z - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        // only accept steps that do not increase the residual
        if horner_with_derivative(c, next).0.norm() > v.norm() {
            break;
        }
        z = next;
        if step.norm() <= 1e-17 * z.norm().max(1e-300) {
            break;
        }
    }
    z
}

fn clean_imaginary(z: Complex64) -> Complex64 {
    if z.im.abs() <= 1e-14 * z.re.abs().max(1e-300) {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

fn horner_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        d = d * z + v;
        v = v * z + ck;
    }
    (v, d)
}

pub(crate) fn relative_residual(c: &[f64], z: Complex64) -> f64 {
    let (v, _) = horner_with_derivative(c, z);
    let r = z.norm();
    let scale: f64 = c.iter().enumerate().map(|(k, ck)| ck.abs() * r.powi(k as i32)).sum();
    if scale == 0.0 {
        0.0
    } else {
        v.norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    #[test]
    fn two_rational_roots() {
        let q = UniPoly::from_i64(&[2, -3, 1]);
        let roots = univariate_distinct_roots(&q).unwrap();
        assert_eq!(roots, vec![(Root::Exact(int(1)), 1), (Root::Exact(int(2)), 1)]);
    }

    #[test]
    fn double_root() {
        let q = UniPoly::from_i64(&[1, -2, 1]);
        assert_eq!(univariate_distinct_roots(&q).unwrap(), vec![(Root::Exact(int(1)), 2)]);
    }

    #[test]
    fn irrational_roots_have_small_residual() {
        let q = UniPoly::from_i64(&[-2, 0, 1]);
        let roots = univariate_distinct_roots(&q).unwrap();
        assert_eq!(roots.len(), 2);
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            let z = r.to_complex();
            // independent check: |q(z)| evaluated directly
            assert!((z * z - 2.0).norm() < 1e-12);
            assert!((z.re.abs() - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn fractional_and_complex_roots() {
        // (3t - 2)(t^2 + 1)(t + 1/2)^2
        let a = UniPoly::from_i64(&[-2, 3]);
        let b = UniPoly::from_i64(&[1, 0, 1]);
        let c = UniPoly::new(vec![rat(1, 2), int(1)]);
        let q = &(&a * &b) * &(&c * &c);
        let roots = univariate_distinct_roots(&q).unwrap();
        assert_eq!(roots[0], (Root::Exact(rat(-1, 2)), 2));
        assert_eq!(roots[1], (Root::Exact(rat(2, 3)), 1));
        assert_eq!(roots.len(), 4);
        for (r, m) in &roots[2..] {
            assert_eq!(*m, 1);
            assert!((r.to_complex().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(univariate_distinct_roots(&UniPoly::zero()), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(univariate_distinct_roots(&UniPoly::constant(int(3))).unwrap().is_empty());
    }
}
