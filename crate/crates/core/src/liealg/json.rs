//! JSON form of an algebra:
//!
//! ```json
//! {"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": {"2": "1"}}],
//!  "invariants": ["x1^2 + x2"], "name": "b2"}
//! ```
//!
//! Indices are 1-based and coefficients are rational strings (plain JSON
//! integers are accepted on input).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ratpoly::{format_rational, parse_rational, MultiPoly, Rational};

use super::{LieAlgebra, LieError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub invariants: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: BTreeMap<String, Coefficient>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Text(String),
    Integer(i64),
}

impl Coefficient {
    fn to_rational(&self) -> Option<Rational> {
        match self {
            Coefficient::Text(s) => parse_rational(s),
            Coefficient::Integer(n) => Some(Rational::from_integer((*n).into())),
        }
    }
}

impl AlgebraDocument {
    /// Converts to an algebra without checking Jacobi or invariants.
    pub fn to_algebra_unchecked(&self) -> Result<LieAlgebra, LieError> {
        let dim = self.dim;
        let one_based = |idx: usize| {
            if idx == 0 || idx > dim {
                Err(LieError::IndexOutOfRange { index: idx, dim })
            } else {
                Ok(idx - 1)
            }
        };
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::new();
        for b in &self.brackets {
            let (i, j) = (one_based(b.i)?, one_based(b.j)?);
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(LieError::DuplicateBracket { i: b.i.min(b.j), j: b.i.max(b.j) });
            }
            for (k, c) in &b.terms {
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| LieError::Json { message: format!("bracket term key `{k}` is not an index") })?;
                let k = one_based(k)?;
                let c = c.to_rational().ok_or_else(|| LieError::Coefficient {
                    text: match c {
                        Coefficient::Text(s) => s.clone(),
                        Coefficient::Integer(n) => n.to_string(),
                    },
                })?;
                terms.push((i, j, k, c));
            }
        }
        let invariants = self
            .invariants
            .iter()
            .map(|s| MultiPoly::parse(s, dim))
            .collect::<Result<Vec<_>, _>>()?;
        let mut alg = LieAlgebra::from_terms_unchecked(dim, terms)?.with_invariants_unchecked(invariants);
        if let Some(name) = &self.name {
            alg = alg.with_name(name.clone());
        }
        Ok(alg)
    }

    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let brackets = alg
            .brackets()
            .map(|(i, j, ks)| BracketEntry {
                i: i + 1,
                j: j + 1,
                terms: ks
                    .iter()
                    .map(|(k, c)| ((k + 1).to_string(), Coefficient::Text(format_rational(c))))
                    .collect(),
            })
            .collect();
        AlgebraDocument {
            dim: alg.dim(),
            brackets,
            invariants: alg.invariants().iter().map(MultiPoly::to_string).collect(),
            name: alg.name().map(str::to_string),
        }
    }
}

impl LieAlgebra {
    /// Parses JSON without validating the Jacobi identity or invariants.
    pub fn from_json_unchecked(text: &str) -> Result<LieAlgebra, LieError> {
        let doc: AlgebraDocument =
            serde_json::from_str(text).map_err(|e| LieError::Json { message: e.to_string() })?;
        doc.to_algebra_unchecked()
    }

    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<LieAlgebra, LieError> {
        let alg = Self::from_json_unchecked(text)?;
        alg.validate()?;
        Ok(alg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AlgebraDocument::from_algebra(self)).expect("serializable")
    }
}
