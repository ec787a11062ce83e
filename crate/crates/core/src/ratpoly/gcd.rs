//! Multivariate gcd over the rationals by recursive primitive polynomial
//! remainder sequences.
//!
//! A polynomial is viewed as univariate in a main variable with coefficients
//! in the remaining variables. Contents (gcd of those coefficients) are
//! computed recursively, and the primitive parts are reduced with a primitive
//! pseudo-remainder sequence. The final answer is checked by exact division
//! of both inputs.

use super::{MultiPoly, PolyError};

/// Normalized gcd of `p` and `q`. `gcd(p, 0)` is `p` normalized and
/// `gcd(0, 0)` is zero.
pub fn gcd_multivariate(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if p.nvars() != q.nvars() {
        return Err(PolyError::VariableCountMismatch { left: p.nvars(), right: q.nvars() });
    }
    if p.is_zero() {
        return Ok(q.normalized());
    }
    if q.is_zero() {
        return Ok(p.normalized());
    }
    let g = gcd_rec(p, q).normalized();
    if p.div_exact(&g).is_none() {
        return Err(PolyError::GcdCertification { which: "first argument" });
    }
    if q.div_exact(&g).is_none() {
        return Err(PolyError::GcdCertification { which: "second argument" });
    }
    Ok(g)
}

/// `p / gcd(p, dp/dx_1, ..., dp/dx_n)`: the product of the distinct
/// irreducible factors of `p`, normalized.
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if p.is_constant() {
        return Ok(p.normalized());
    }
    let mut g = p.clone();
    for i in 0..p.nvars() {
        let d = p.partial_derivative(i);
        if d.is_zero() {
            continue;
        }
        g = gcd_multivariate(&g, &d)?;
        if g.is_constant() {
            break;
        }
    }
    p.div_exact(&g)
        .map(|q| q.normalized())
        .ok_or(PolyError::GcdCertification { which: "square-free quotient" })
}

/// Gcd up to a nonzero rational factor; both arguments nonzero.
fn gcd_rec(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let n = p.nvars();
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(n);
    }
    if let Some(g) = monomial_shortcut(p, q) {
        return g;
    }
    let sp = p.support();
    let sq = q.support();
    // prefer a variable present in both, of least degree
    let shared = (0..n)
        .filter(|&i| sp[i] && sq[i])
        .min_by_key(|&i| p.degree_in(i).max(q.degree_in(i)));
    let Some(v) = shared else {
        // no variable in common: the gcd only involves the coefficients of
        // one argument with respect to variables absent from the other
        let v = (0..n).find(|&i| sp[i]).expect("non-constant polynomial");
        return gcd_rec(&content(p, v), q);
    };
    let cp = content(p, v);
    let cq = content(q, v);
    let c = gcd_rec(&cp, &cq);
    let pp = p.div_exact(&cp).expect("content divides");
    let pq = q.div_exact(&cq).expect("content divides");
    let g = primitive_prs(pp, pq, v);
    &c * &g
}

/// When one argument is a single term the gcd is a monomial times the gcd
/// of its coefficient with the content, which here is a rational: one.
fn monomial_shortcut(p: &MultiPoly, q: &MultiPoly) -> Option<MultiPoly> {
    let (single, other) = if p.num_terms() == 1 {
        (p, q)
    } else if q.num_terms() == 1 {
        (q, p)
    } else {
        return None;
    };
    let (m, _) = single.leading_term()?;
    let mut exps = m.exponents().to_vec();
    for (om, _) in other.terms() {
        for (e, &o) in exps.iter_mut().zip(om.exponents()) {
            *e = (*e).min(o);
        }
    }
    Some(MultiPoly::monomial(
        p.nvars(),
        super::Monomial::new(exps),
        num_traits::One::one(),
    ))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content(p: &MultiPoly, v: usize) -> MultiPoly {
    let coeffs = p.to_univariate(v);
    let mut acc: Option<MultiPoly> = None;
    for c in coeffs.into_iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c,
            Some(a) => gcd_rec(&a, &c),
        });
        if acc.as_ref().is_some_and(MultiPoly::is_constant) {
            return MultiPoly::one(p.nvars());
        }
    }
    acc.map(|a| a.monic()).unwrap_or_else(|| MultiPoly::zero(p.nvars()))
}

fn primitive_part(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").normalized()
}

/// Gcd of two polynomials primitive in `x_v`, both of positive degree in it.
fn primitive_prs(a: MultiPoly, b: MultiPoly, v: usize) -> MultiPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return primitive_part(&a, v);
        }
        if b.degree_in(v) == 0 {
            return MultiPoly::one(a.nvars());
        }
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in `x_v`.
fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let n = a.nvars();
    let mut r = a.to_univariate(v);
    let bc = b.to_univariate(v);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut e = (r.len() - 1 + 1).saturating_sub(db) as u32;
    while r.len() > db && !r.last().is_some_and(MultiPoly::is_zero) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bj) in bc.iter().enumerate() {
            r[s + j] = &r[s + j] - &(&lr * bj);
        }
        while r.last().is_some_and(MultiPoly::is_zero) {
            r.pop();
        }
        e = e.saturating_sub(1);
        if r.is_empty() {
            return MultiPoly::zero(n);
        }
    }
    let out = MultiPoly::from_univariate(v, &r);
    if e > 0 {
        &out * &lb.pow(e)
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::int;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn monomial_gcd() {
        let g = gcd_multivariate(&(&x(3, 0) * &x(3, 1)), &(&x(3, 0) * &x(3, 2))).unwrap();
        assert_eq!(g, x(3, 0));
    }

    #[test]
    fn gcd_with_zero_is_normalized_argument() {
        let p = x(2, 0).scale(&int(-4));
        assert_eq!(gcd_multivariate(&p, &MultiPoly::zero(2)).unwrap(), x(2, 0));
        assert_eq!(gcd_multivariate(&MultiPoly::zero(2), &p).unwrap(), x(2, 0));
    }

    #[test]
    fn shared_linear_factor() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let p = &x2 * &(&x1 + &x2);
        let q = &x2 * &(&x1 - &x2);
        assert_eq!(gcd_multivariate(&p, &q).unwrap(), x2);
    }

    #[test]
    fn nontrivial_common_factor() {
        let (a, b, c) = (x(3, 0), x(3, 1), x(3, 2));
        let h = &(&a * &b) + &c.pow(2);
        let p = &h * &(&a + &int_poly(3, 1));
        let q = &h * &(&b - &c);
        assert_eq!(gcd_multivariate(&p, &q).unwrap(), h);
        let p2 = &p * &h;
        assert_eq!(gcd_multivariate(&p2, &q.pow(2)).unwrap(), h.pow(2));
    }

    fn int_poly(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, int(v))
    }

    #[test]
    fn squarefree_part_removes_powers() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let p = &x2.pow(3) * &(&x1 + &x2).pow(2);
        assert_eq!(squarefree_part(&p).unwrap(), (&x2 * &(&x1 + &x2)).normalized());
    }
}
