//! Text formats, certificates and table reproduction.

mod certificate;
mod presentation;
mod tables;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use certificate::{
    classify4_certificate, frobenius_certificate, iso_certificate, normal_certificate, srns_certificate,
    st_certificate, verify_certificate, Certificate, CertificateError, TOOL_VERSION,
};
pub use presentation::{parse_presentation, parse_presentation_default, parse_presentation_over, PresentationError};
pub use tables::{golden_text, reproduce_table, RowReport, TableError, TableReport};

use crate::algebra::{commutators, AlgebraError, PresentedAlgebra};
use crate::field::{Field, Scalar};
use crate::findim::{FindimError, SCAlgebra};
use crate::freealg::{Alphabet, FreePoly, GeneratorMap};
use crate::linalg::Matrix;
use crate::normality::StStep;

/// A recipe for an algebra, as stored in the golden tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Presentation {
        field: String,
        gens: String,
        #[serde(default)]
        commutative: bool,
        relations: Vec<String>,
    },
    Quiver {
        field: String,
        vertices: usize,
        arrows: Vec<(String, usize, usize)>,
        /// Paths as arrow-name sequences.
        relations: Vec<Vec<String>>,
    },
    Matrix {
        field: String,
        n: usize,
    },
    Product {
        factors: Vec<Construction>,
    },
}

fn bad(msg: impl Into<String>) -> FindimError {
    FindimError::Invalid(msg.into())
}

pub fn parse_field(s: &str) -> Result<Field, AlgebraError> {
    Field::parse(s).map_err(|e| AlgebraError::Invalid(e.to_string()))
}

pub fn parse_alphabet(gens: &str) -> Result<Arc<Alphabet>, AlgebraError> {
    let mut letters = Vec::new();
    for tok in gens.split_whitespace() {
        let (name, w) = tok.split_once(':').unwrap_or((tok, "1"));
        let w = w.parse().map_err(|_| AlgebraError::Invalid(format!("bad weight in `{tok}`")))?;
        letters.push((name.to_string(), w));
    }
    Ok(Alphabet::new(letters)?)
}

impl Construction {
    pub fn field(&self) -> Result<Field, AlgebraError> {
        match self {
            Construction::Presentation { field, .. } | Construction::Quiver { field, .. } | Construction::Matrix { field, .. } => {
                parse_field(field)
            }
            Construction::Product { factors } => {
                factors.first().ok_or_else(|| AlgebraError::Invalid("empty product".into()))?.field()
            }
        }
    }

    /// The presented algebra, for presentation recipes.
    pub fn presented(&self, bound: u32) -> Result<PresentedAlgebra, AlgebraError> {
        let Construction::Presentation { field, gens, commutative, relations } = self else {
            return Err(AlgebraError::Invalid("not a presentation".into()));
        };
        let field = parse_field(field)?;
        let alph = parse_alphabet(gens)?;
        let mut rels = if *commutative { commutators(&alph, field) } else { Vec::new() };
        for r in relations {
            rels.push(FreePoly::parse(r, &alph, field)?);
        }
        PresentedAlgebra::new(&alph, field, rels, bound)
    }

    pub fn build(&self, bound: u32) -> Result<SCAlgebra, FindimError> {
        match self {
            Construction::Presentation { .. } => SCAlgebra::from_quotient(&self.presented(bound)?),
            Construction::Quiver { field, vertices, arrows, relations } => {
                let field = parse_field(field)?;
                let arrs: Vec<(&str, usize, usize)> = arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
                let rels = relations
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|a| arrows.iter().position(|x| &x.0 == a).ok_or_else(|| bad(format!("unknown arrow `{a}`"))))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                SCAlgebra::quiver_algebra(field, *vertices, &arrs, &rels)
            }
            Construction::Matrix { field, n } => SCAlgebra::matrix_algebra(parse_field(field)?, *n),
            Construction::Product { factors } => {
                let mut it = factors.iter();
                let mut acc = it.next().ok_or_else(|| bad("empty product"))?.build(bound)?;
                for f in it {
                    acc = acc.product(&f.build(bound)?)?;
                }
                Ok(acc)
            }
        }
    }
}

/// One step of a witness chain in serialized form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSpec {
    /// Images of the generators.
    pub p: Vec<String>,
    /// `alpha[i][j]`: coefficient of the transformed entry `i` in the new entry `j`.
    pub alpha: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<String>>>,
}

fn scalar_matrix(field: Field, rows: &[Vec<String>]) -> Result<Matrix, AlgebraError> {
    let cols = rows.first().map_or(0, Vec::len);
    let parsed = rows
        .iter()
        .map(|r| {
            if r.len() != cols {
                return Err(AlgebraError::Invalid("ragged matrix".into()));
            }
            r.iter().map(|s| Scalar::parse(s, field).map_err(|e| AlgebraError::Invalid(e.to_string()))).collect()
        })
        .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
    Ok(Matrix::from_rows(field, cols, parsed))
}

impl StepSpec {
    pub fn to_step(&self, alph: &Arc<Alphabet>, field: Field) -> Result<StStep, AlgebraError> {
        let imgs: Vec<&str> = self.p.iter().map(String::as_str).collect();
        let p = GeneratorMap::parse(alph, field, &imgs)?;
        let alpha = scalar_matrix(field, &self.alpha)?;
        let gamma = self.gamma.as_ref().map(|g| scalar_matrix(field, g)).transpose()?;
        Ok(StStep { p, alpha, gamma })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions() {
        let k = Construction::Presentation { field: "Q".into(), gens: "e:1".into(), commutative: false, relations: vec!["e".into()] };
        let prod = Construction::Product { factors: vec![k.clone(), k.clone(), k] };
        assert_eq!(prod.build(12).unwrap().dim(), 3);
        let m2 = Construction::Matrix { field: "Q".into(), n: 2 }.build(12).unwrap();
        assert_eq!(m2.labels(), ["e11", "e12", "e21", "e22"]);
        assert!(!m2.is_commutative());
        let json = serde_json::to_string(&Construction::Matrix { field: "Q".into(), n: 2 }).unwrap();
        assert_eq!(json, r#"{"kind":"matrix","field":"Q","n":2}"#);
    }
}
