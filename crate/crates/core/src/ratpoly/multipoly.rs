use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::{content_parts, rational_to_f64, Monomial, PolyError, Rational, UniPoly};

/// Sparse polynomial in `nvars` variables with rational coefficients.
///
/// Terms are kept in a map keyed by graded-lex ordered monomials and never
/// store a zero coefficient, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    /// The coordinate function `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range for {nvars} variables");
        Self::monomial(nvars, Monomial::var(nvars, index), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated terms; like terms are merged.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum_k coeffs[k] * x_{k+1}`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(n, coeffs.iter().enumerate().map(|(k, c)| (Monomial::var(n, k), c.clone())))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Indicator of the variables that actually occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(m.exponents()) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    fn check_same(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable {var} out of range for {} variables", self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            *m2.exponent_mut(var) -= 1;
            out.terms.insert(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn checked_partial_derivative(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VariableOutOfRange { index: var, nvars: self.nvars });
        }
        Ok(self.partial_derivative(var))
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    fn check_point<T>(&self, point: &[T]) -> Result<(), PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: point.len() });
        }
        Ok(())
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        self.check_point(point)?;
        let maxexp = self.max_exponents();
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .zip(&maxexp)
            .map(|(v, &e)| {
                let mut pw = Vec::with_capacity(e as usize + 1);
                pw.push(Rational::one());
                for k in 1..=e as usize {
                    let next = &pw[k - 1] * v;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn evaluate_complex(&self, point: &[Complex64]) -> Result<Complex64, PolyError> {
        self.check_point(point)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= point[i].powu(e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.nvars];
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(m.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    /// `q(t) = p(base + t * direction)`.
    pub fn restrict_to_line(&self, base: &[Rational], direction: &[Rational]) -> Result<UniPoly, PolyError> {
        self.check_point(base)?;
        self.check_point(direction)?;
        let maxexp = self.max_exponents();
        let powers: Vec<Vec<UniPoly>> = (0..self.nvars)
            .map(|i| {
                let lin = UniPoly::new(vec![base[i].clone(), direction[i].clone()]);
                let mut pw = vec![UniPoly::constant(Rational::one())];
                for k in 1..=maxexp[i] as usize {
                    let next = &pw[k - 1] * &lin;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. A zero divisor never divides.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lm, lc) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(MultiPoly::zero(self.nvars));
        }
        if divisor.is_constant() {
            return Some(self.scale(&lc.recip()));
        }
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        // the leading term of any multiple of `divisor` is divisible by `lm`
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(lm)?;
            let qc = rc * &lc_inv;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scalar multiple with coprime integer coefficients and a positive
    /// leading coefficient. Zero maps to zero.
    pub fn normalized(&self) -> MultiPoly {
        let Some(lc) = self.leading_coefficient() else {
            return self.clone();
        };
        let (lcm, gcd) = content_parts(self.terms.values());
        let mut factor = Rational::new(lcm, gcd);
        if lc.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Monic in graded-lex order.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Coefficients of `self` as a polynomial in `x_{var+1}`, lowest power first.
    /// The coefficients do not contain that variable.
    pub fn to_univariate(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            let mut m2 = m.clone();
            *m2.exponent_mut(var) = 0;
            coeffs[e].terms.insert(m2, c.clone());
        }
        coeffs
    }

    pub fn from_univariate(var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let nvars = coeffs.first().map(|c| c.nvars).unwrap_or(var + 1);
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut m2 = m.clone();
                *m2.exponent_mut(var) += k as u32;
                out.add_term(m2, v.clone());
            }
        }
        out
    }

    /// Re-expresses the polynomial in `new_nvars` variables with `x_i`
    /// becoming `x_{i+offset}`.
    pub fn embed(&self, offset: usize, new_nvars: usize) -> MultiPoly {
        assert!(offset + self.nvars <= new_nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; new_nvars];
            e[offset..offset + self.nvars].copy_from_slice(m.exponents());
            (Monomial::new(e), c.clone())
        });
        MultiPoly::from_terms(new_nvars, terms)
    }

    /// Substitutes `x_i -> a_i + t x_i` and returns the coefficients of the
    /// powers of `t`, lowest first. Always has `degree + 1` entries (one for
    /// the zero polynomial).
    pub fn shift_coefficients(&self, a: &[Rational]) -> Result<Vec<MultiPoly>, PolyError> {
        self.check_point(a)?;
        let n = self.nvars;
        let deg = self.degree().unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(n); deg + 1];
        let binom = binomial_table(deg);
        for (m, c) in &self.terms {
            // expand prod_i (a_i + t x_i)^{e_i}
            let mut partial: Vec<(Vec<u32>, Rational)> = vec![(vec![0; n], c.clone())];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut next = Vec::new();
                for (exps, coef) in &partial {
                    for k in 0..=e {
                        let apow = e - k;
                        let av = if apow == 0 {
                            Rational::one()
                        } else if a[i].is_zero() {
                            continue;
                        } else {
                            pow_rational(&a[i], apow)
                        };
                        let mut ex = exps.clone();
                        ex[i] = k;
                        next.push((ex, coef * av * &binom[e as usize][k as usize]));
                    }
                }
                partial = next;
            }
            for (exps, coef) in partial {
                let tdeg: u32 = exps.iter().sum();
                out[tdeg as usize].add_term(Monomial::new(exps), coef);
            }
        }
        Ok(out)
    }
}

fn pow_rational(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

fn binomial_table(n: usize) -> Vec<Vec<Rational>> {
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![Rational::one(); i + 1];
        for k in 1..i {
            row[k] = &t[i - 1][k - 1] + &t[i - 1][k];
        }
        t.push(row);
    }
    t
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn add_cancels_and_merges() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        assert_eq!(&(&x1 + &x2) + &(&x1 - &x2), x1.scale(&int(2)));
        assert_eq!(&x1 + &MultiPoly::zero(2), x1);
        let sq = x1.pow(2);
        assert_eq!(&sq + &sq.scale(&int(2)), sq.scale(&int(3)));
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = x(2, 0).checked_add(&x(3, 0)).unwrap_err();
        assert_eq!(err, PolyError::VariableCountMismatch { left: 2, right: 3 });
        assert!(x(2, 0).checked_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn products() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        assert_eq!(&(&x1 + &x2) * &(&x1 - &x2), &x1.pow(2) - &x2.pow(2));
        assert_eq!(&x1 * &MultiPoly::one(2), x1);
        let (a, b, c) = (x(3, 0), x(3, 1), x(3, 2));
        let lhs = &(&a * &b) * &(&b * &c);
        assert_eq!(lhs, MultiPoly::monomial(3, Monomial::new(vec![1, 2, 1]), int(1)));
    }

    #[test]
    fn derivatives() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let p = &x1.pow(2) * &x2;
        assert_eq!(p.partial_derivative(0), (&x1 * &x2).scale(&int(2)));
        assert!(MultiPoly::constant(2, int(5)).partial_derivative(0).is_zero());
        let q = &(&x1 * &x2) + &x2.pow(3);
        assert_eq!(q.partial_derivative(1), &x1 + &x2.pow(2).scale(&int(3)));
        assert!(q.checked_partial_derivative(2).is_err());
    }

    #[test]
    fn evaluation() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let p = &x1.pow(2) + &x2;
        assert_eq!(p.evaluate(&[int(2), int(3)]).unwrap(), int(7));
        assert_eq!(MultiPoly::zero(2).evaluate(&[int(9), rat(1, 3)]).unwrap(), int(0));
        let q = &(&x(3, 0) * &x(3, 1)) * &x(3, 2);
        assert_eq!(q.evaluate(&[int(1), rat(1, 2), int(4)]).unwrap(), int(2));
        assert!(p.evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn line_restriction() {
        let x2 = x(2, 1);
        let q = x2.restrict_to_line(&[int(0), int(5)], &[int(1), int(7)]).unwrap();
        assert_eq!(q, UniPoly::new(vec![int(5), int(7)]));
        let c = MultiPoly::constant(2, rat(3, 4));
        assert_eq!(c.restrict_to_line(&[int(1), int(1)], &[int(2), int(2)]).unwrap(), UniPoly::constant(rat(3, 4)));
        let sq = x(2, 0).pow(2);
        let q = sq.restrict_to_line(&[int(1), int(0)], &[int(1), int(0)]).unwrap();
        assert_eq!(q, UniPoly::new(vec![int(1), int(2), int(1)]));
    }

    #[test]
    fn exact_division() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let f = &x1 + &x2;
        let g = &x1 - &x2;
        let p = &f * &g;
        assert_eq!(p.div_exact(&f), Some(g.clone()));
        assert_eq!(p.div_exact(&x1), None);
        assert_eq!(x1.div_exact(&MultiPoly::zero(2)), None);
    }

    #[test]
    fn normalization() {
        let p = MultiPoly::linear(&[rat(-2, 3), rat(4, 9)]);
        // -2/3 x1 + 4/9 x2 -> 3 x1 - 2 x2
        assert_eq!(p.normalized(), MultiPoly::linear(&[int(3), int(-2)]));
    }

    #[test]
    fn shift_coefficients_binomial() {
        let sq = x(2, 0).pow(2);
        let parts = sq.shift_coefficients(&[int(3), int(0)]).unwrap();
        assert_eq!(parts, vec![MultiPoly::constant(2, int(9)), x(2, 0).scale(&int(6)), sq]);
    }

    #[test]
    fn univariate_roundtrip() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let p = &(&x1.pow(2) * &x2) + &x2.pow(3);
        let coeffs = p.to_univariate(1);
        assert_eq!(coeffs.len(), 4);
        assert_eq!(MultiPoly::from_univariate(1, &coeffs), p);
    }
}
