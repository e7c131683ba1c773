//! Presented graded and filtered algebras and the constructions built on them.

mod classify;
mod clifford;
mod dual;
mod homog;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use classify::{classify_relation, congruence_witness, is_qpa2, relation_matrix, LambdaKey, RelLabel, RelationClass};
pub use clifford::{check_graded_auto, graded_clifford};
pub use dual::{clifford_c, clifford_pair, dual_hilbert_check, f_shriek, quadratic_dual, CliffordC};
pub use homog::{
    dehomogenized_algebra, find_regular_linear, homogenized_algebra, RegularLinear, HOMOGENIZING_LETTER,
};

use crate::expr::ParseError;
use crate::field::Field;
use crate::freealg::{Alphabet, FreeAlgError, FreePoly, Word};
use crate::grobner::{GroebnerBasis, GrobnerError, HilbertData, DEFAULT_DEGREE_BOUND};
use crate::series::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("relation `{0}` is not homogeneous")]
    Inhomogeneous(String),
    #[error("expected a homogeneous quadratic presentation on weight-one generators")]
    NotQuadratic,
    #[error("expected two weight-one generators")]
    NotTwoGenerators,
    #[error("zero input")]
    ZeroInput,
    #[error("singular map or matrix")]
    Singular,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// `k<X>/(relations)` with its Gröbner basis computed at construction.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    field: Field,
    alph: Arc<Alphabet>,
    relations: Vec<FreePoly>,
    graded: bool,
    gb: GroebnerBasis,
}

impl PresentedAlgebra {
    pub fn new(
        alph: &Arc<Alphabet>,
        field: Field,
        relations: Vec<FreePoly>,
        bound: u32,
    ) -> Result<PresentedAlgebra, AlgebraError> {
        let relations = relations.into_iter().map(|r| r.rebind(alph)).collect::<Result<Vec<_>, _>>()?;
        let graded = relations.iter().all(FreePoly::is_homogeneous);
        let gb = GroebnerBasis::complete_in(alph, field, &relations, bound)?;
        Ok(PresentedAlgebra { field, alph: alph.clone(), relations, graded, gb })
    }

    /// Parses relations given as expressions.
    pub fn from_strs(
        alph: &Arc<Alphabet>,
        field: Field,
        relations: &[&str],
        bound: u32,
    ) -> Result<PresentedAlgebra, AlgebraError> {
        let rels = relations.iter().map(|r| FreePoly::parse(r, alph, field)).collect::<Result<Vec<_>, _>>()?;
        PresentedAlgebra::new(alph, field, rels, bound)
    }

    /// Two weight-one generators `x`, `y` with the given relations and default bound.
    pub fn xy(field: Field, relations: &[&str]) -> Result<PresentedAlgebra, AlgebraError> {
        PresentedAlgebra::from_strs(&Alphabet::uniform(&["x", "y"]), field, relations, DEFAULT_DEGREE_BOUND)
    }

    /// Relations plus all commutators `x_i x_j - x_j x_i` (i < j), listed first.
    pub fn commutative(
        alph: &Arc<Alphabet>,
        field: Field,
        relations: Vec<FreePoly>,
        bound: u32,
    ) -> Result<PresentedAlgebra, AlgebraError> {
        let mut rels = commutators(alph, field);
        rels.extend(relations);
        PresentedAlgebra::new(alph, field, rels, bound)
    }

    pub fn commutative_strs(
        alph: &Arc<Alphabet>,
        field: Field,
        relations: &[&str],
        bound: u32,
    ) -> Result<PresentedAlgebra, AlgebraError> {
        let rels = relations.iter().map(|r| FreePoly::parse(r, alph, field)).collect::<Result<Vec<_>, _>>()?;
        PresentedAlgebra::commutative(alph, field, rels, bound)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alph
    }

    pub fn relations(&self) -> &[FreePoly] {
        &self.relations
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn bound(&self) -> u32 {
        self.gb.bound()
    }

    pub fn parse(&self, text: &str) -> Result<FreePoly, AlgebraError> {
        Ok(FreePoly::parse(text, &self.alph, self.field)?)
    }

    pub fn letter(&self, i: usize) -> FreePoly {
        FreePoly::letter(&self.alph, self.field, i)
    }

    pub fn reduce(&self, f: &FreePoly) -> Result<FreePoly, AlgebraError> {
        Ok(self.gb.reduce(f)?)
    }

    pub fn is_zero(&self, f: &FreePoly) -> Result<bool, AlgebraError> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Normal form of a product.
    pub fn mul(&self, a: &FreePoly, b: &FreePoly) -> Result<FreePoly, AlgebraError> {
        self.reduce(&a.mul(b))
    }

    pub fn normal_words(&self, d: u32) -> Result<Vec<Word>, AlgebraError> {
        Ok(self.gb.normal_words(d)?)
    }

    pub fn normal_words_upto(&self, d: u32) -> Result<Vec<Word>, AlgebraError> {
        Ok(self.gb.normal_words_upto(d)?)
    }

    pub fn hilbert(&self, d: u32) -> Result<HilbertData, AlgebraError> {
        Ok(self.gb.hilbert(d)?)
    }

    pub fn hilbert_rational(&self) -> Result<RatFunc, AlgebraError> {
        Ok(self.gb.hilbert_rational()?)
    }

    pub fn dimension(&self) -> Option<u64> {
        self.gb.quotient_dimension()
    }

    /// `self / (extra)`, keeping the degree bound.
    pub fn quotient(&self, extra: &[FreePoly]) -> Result<PresentedAlgebra, AlgebraError> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        PresentedAlgebra::new(&self.alph, self.field, rels, self.bound())
    }

    /// Associated graded for the degree filtration: tops of the Gröbner basis.
    pub fn associated_graded(&self) -> Result<PresentedAlgebra, AlgebraError> {
        if self.graded {
            return Ok(self.clone());
        }
        let tops = self.gb.generators().iter().map(|g| g.top_part()).collect::<Result<Vec<_>, _>>()?;
        PresentedAlgebra::new(&self.alph, self.field, tops, self.bound())
    }

    /// Whether all generators commute.
    pub fn is_commutative(&self) -> Result<bool, AlgebraError> {
        for c in commutators(&self.alph, self.field) {
            if !self.is_zero(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Relations are homogeneous of degree 2 in weight-one letters.
    pub fn is_quadratic(&self) -> bool {
        self.alph.all_weight_one()
            && self.relations.iter().all(|r| r.is_homogeneous() && r.degree().ok() == Some(2))
    }

    /// Text in the presentation file format.
    /// The line-oriented text format; a full set of commutators is written
    /// as the `commutative` keyword.
    pub fn to_presentation(&self) -> String {
        let mut s = format!("field {}\ngens {}\n{}\n", self.field, self.alph, if self.graded { "graded" } else { "filtered" });
        let comm = commutators(&self.alph, self.field);
        let is_comm = |r: &FreePoly| comm.iter().any(|c| c == r || c.neg() == *r);
        let all = self.alph.len() > 1 && comm.iter().all(|c| self.relations.iter().any(|r| r == c || r.neg() == *c));
        if all {
            s.push_str("commutative\n");
        }
        for r in self.relations.iter().filter(|r| !(all && is_comm(r))) {
            s.push_str(&format!("rel {r}\n"));
        }
        s
    }
}

impl fmt::Display for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = (0..self.alph.len()).map(|i| self.alph.name(i)).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        write!(f, "{}<{}>/({})", self.field, names.join(", "), rels.join(", "))
    }
}

/// `x_i x_j - x_j x_i` for `i < j`.
pub fn commutators(alph: &Arc<Alphabet>, field: Field) -> Vec<FreePoly> {
    let n = alph.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = FreePoly::letter(alph, field, i);
            let b = FreePoly::letter(alph, field, j);
            out.push(a.mul(&b).sub(&b.mul(&a)));
        }
    }
    out
}
