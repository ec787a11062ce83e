//! Text form of rationals and polynomials.
//!
//! Polynomials print as `c * x1^e1 * ... * xn^en` terms joined by ` + `,
//! highest graded-lex term first, with coefficients as `num/den` (just `num`
//! when the denominator is one). Exponent one and unit coefficients are
//! omitted. The parser accepts that output plus ordinary hand-written forms
//! such as `x1^2 - 4*x2*x3 + 1/2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MultiPoly, PolyError, Rational};

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            let mag = c.abs();
            let mut parts = Vec::new();
            if vars.is_empty() || !mag.is_one() {
                parts.push(format_rational(&mag));
            }
            parts.extend(vars);
            let body = parts.join(" * ");
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    /// Parses the text form with variables `x1 .. x{nvars}`.
    pub fn parse(text: &str, nvars: usize) -> Result<MultiPoly, PolyError> {
        let err = |reason: String| PolyError::Parse { text: text.to_string(), reason };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input".into()));
        }
        let mut out = MultiPoly::zero(nvars);
        for (sign, term) in split_terms(&compact) {
            if term.is_empty() {
                return Err(err("empty term".into()));
            }
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(err(format!("empty factor in `{term}`")));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err(format!("bad exponent in `{factor}`")))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err(format!("bad variable `{factor}`")))?;
                    if idx == 0 || idx > nvars {
                        return Err(err(format!("variable x{idx} outside x1..x{nvars}")));
                    }
                    exps[idx - 1] += exp;
                } else {
                    let c = parse_rational(factor).ok_or_else(|| err(format!("bad coefficient `{factor}`")))?;
                    coeff *= c;
                }
            }
            if sign {
                coeff = -coeff;
            }
            out = &out + &MultiPoly::monomial(nvars, Monomial::new(exps), coeff);
        }
        Ok(out)
    }
}

/// Splits on top-level `+`/`-`, returning (negative, term) pairs. A sign
/// directly after `*` or `^` or `/` belongs to the factor.
fn split_terms(s: &str) -> Vec<(bool, &str)> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    if matches!(bytes.first(), Some(b'+') | Some(b'-')) {
        neg = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && i > start && !matches!(bytes[i - 1], b'*' | b'^' | b'/') {
            out.push((neg, &s[start..i]));
            neg = b == b'-';
            start = i + 1;
        }
        i += 1;
    }
    out.push((neg, &s[start..]));
    out
}
