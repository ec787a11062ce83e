//! Standard algebras in fixed bases.
//!
//! * `b2`: `[e1, e2] = e2`.
//! * `heisenberg(n)`: `[e_i, e_{n+i}] = e_{2n+1}`; invariant `x_{2n+1}`.
//! * `sl2` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`;
//!   Casimir `x1^2 + 4 x2 x3`.
//! * `so3`: `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`; invariant
//!   `x1^2 + x2^2 + x3^2`.
//! * `gl2` in the basis `(E11, E12, E21, E22)`; invariants trace `x1 + x4`
//!   and determinant `x1 x4 - x2 x3`.
//! * `abelian(n)`: every coordinate is an invariant.

use crate::ratpoly::{int, MultiPoly};

use super::{LieAlgebra, LieError};

pub fn abelian(n: usize) -> LieAlgebra {
    let invariants = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    LieAlgebra::from_terms_unchecked(n, [])
        .expect("valid table")
        .with_name(format!("abelian({n})"))
        .with_invariants_unchecked(invariants)
}

pub fn b2() -> LieAlgebra {
    LieAlgebra::new(2, [(0, 1, 1, int(1))]).expect("valid table").with_name("b2")
}

pub fn heisenberg(n: usize) -> LieAlgebra {
    let dim = 2 * n + 1;
    let terms: Vec<_> = (0..n).map(|i| (i, n + i, 2 * n, int(1))).collect();
    LieAlgebra::new(dim, terms)
        .expect("valid table")
        .with_name(format!("h{dim}"))
        .with_invariants_unchecked(vec![MultiPoly::var(dim, 2 * n)])
}

pub fn sl2() -> LieAlgebra {
    let casimir = MultiPoly::parse("x1^2 + 4*x2*x3", 3).expect("valid text");
    LieAlgebra::new(3, [(0, 1, 1, int(2)), (0, 2, 2, int(-2)), (1, 2, 0, int(1))])
        .expect("valid table")
        .with_name("sl2")
        .with_invariants_unchecked(vec![casimir])
}

pub fn so3() -> LieAlgebra {
    let casimir = MultiPoly::parse("x1^2 + x2^2 + x3^2", 3).expect("valid text");
    LieAlgebra::new(3, [(0, 1, 2, int(1)), (1, 2, 0, int(1)), (2, 0, 1, int(1))])
        .expect("valid table")
        .with_name("so3")
        .with_invariants_unchecked(vec![casimir])
}

pub fn gl2() -> LieAlgebra {
    let trace = MultiPoly::parse("x1 + x4", 4).expect("valid text");
    let det = MultiPoly::parse("x1*x4 - x2*x3", 4).expect("valid text");
    LieAlgebra::new(
        4,
        [
            (0, 1, 1, int(1)),
            (0, 2, 2, int(-1)),
            (1, 2, 0, int(1)),
            (1, 2, 3, int(-1)),
            (1, 3, 1, int(1)),
            (2, 3, 2, int(-1)),
        ],
    )
    .expect("valid table")
    .with_name("gl2")
    .with_invariants_unchecked(vec![trace, det])
}

/// Looks up an algebra by name. Accepted names: `b2`, `sl2`, `so3`, `gl2`,
/// `abelian(n)`, `heisenberg(n)`, `h3`, `h5`, ... (`h{2n+1}`), `C` and
/// `C^n` for abelian summands, and direct sums joined by `+`, e.g.
/// `b2+h3` or `b2+C^2`.
pub fn catalog(name: &str) -> Result<LieAlgebra, LieError> {
    let unknown = || LieError::UnknownCatalog { name: name.to_string() };
    let mut out: Option<LieAlgebra> = None;
    for part in name.split('+') {
        let part = part.trim();
        let alg = single(part).ok_or_else(unknown)?;
        out = Some(match out {
            None => alg,
            Some(acc) => acc.direct_sum(&alg),
        });
    }
    let alg = out.ok_or_else(unknown)?;
    let canonical = name.split('+').map(str::trim).collect::<Vec<_>>().join("+");
    Ok(alg.with_name(canonical))
}

fn single(part: &str) -> Option<LieAlgebra> {
    let lower = part.to_ascii_lowercase();
    let arg = |prefix: &str| -> Option<usize> {
        lower.strip_prefix(prefix)?.strip_suffix(')')?.trim().parse().ok()
    };
    match lower.as_str() {
        "b2" => return Some(b2()),
        "sl2" => return Some(sl2()),
        "so3" => return Some(so3()),
        "gl2" => return Some(gl2()),
        "c" => return Some(abelian(1)),
        _ => {}
    }
    if let Some(n) = arg("abelian(") {
        return Some(abelian(n));
    }
    if let Some(n) = arg("heisenberg(") {
        return (n > 0).then(|| heisenberg(n));
    }
    if let Some(n) = lower.strip_prefix("c^").and_then(|s| s.parse::<usize>().ok()) {
        return Some(abelian(n));
    }
    if let Some(d) = lower.strip_prefix('h').and_then(|s| s.parse::<usize>().ok()) {
        return (d >= 3 && d % 2 == 1).then(|| heisenberg((d - 1) / 2));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        for alg in [abelian(5), b2(), heisenberg(1), heisenberg(2), sl2(), so3(), gl2()] {
            assert!(alg.validate().is_ok(), "{:?}", alg.name());
        }
    }

    #[test]
    fn names_resolve() {
        assert_eq!(catalog("h3").unwrap().dim(), 3);
        assert_eq!(catalog("heisenberg(2)").unwrap().dim(), 5);
        assert_eq!(catalog("b2 + C^2").unwrap().dim(), 4);
        assert_eq!(catalog("b2+h3").unwrap().name(), Some("b2+h3"));
        assert_eq!(catalog("abelian(7)").unwrap().dim(), 7);
        assert!(matches!(catalog("e8"), Err(LieError::UnknownCatalog { .. })));
        assert!(catalog("h4").is_err());
        assert!(catalog("b2+").is_err());
    }

    #[test]
    fn documented_constants() {
        assert_eq!(b2().c(0, 1, 1), int(1));
        assert_eq!(heisenberg(1).c(0, 1, 2), int(1));
        let s = sl2();
        assert_eq!(s.c(0, 1, 1), int(2));
        assert_eq!(s.c(0, 2, 2), int(-2));
        assert_eq!(s.c(1, 2, 0), int(1));
    }
}
