use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::{Alphabet, FreeAlgError, Word};
use crate::expr::{self, ExprTarget, ParseError};
use crate::field::{Field, Scalar};

/// Noncommutative polynomial: a finite map from words to nonzero scalars.
#[derive(Debug, Clone)]
pub struct FreePoly {
    alph: Arc<Alphabet>,
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for FreePoly {
    fn eq(&self, o: &FreePoly) -> bool {
        self.field == o.field && same_alphabet(&self.alph, &o.alph) && self.terms == o.terms
    }
}

impl Eq for FreePoly {}

impl std::hash::Hash for FreePoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FreePoly {
    pub fn zero(alph: &Arc<Alphabet>, field: Field) -> FreePoly {
        FreePoly { alph: alph.clone(), field, terms: BTreeMap::new() }
    }

    pub fn constant(alph: &Arc<Alphabet>, c: Scalar) -> FreePoly {
        FreePoly::monomial(alph, Word::empty(), c)
    }

    pub fn one(alph: &Arc<Alphabet>, field: Field) -> FreePoly {
        FreePoly::constant(alph, field.one())
    }

    pub fn monomial(alph: &Arc<Alphabet>, w: Word, c: Scalar) -> FreePoly {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreePoly { alph: alph.clone(), field, terms }
    }

    pub fn word(alph: &Arc<Alphabet>, field: Field, w: Word) -> FreePoly {
        FreePoly::monomial(alph, w, field.one())
    }

    pub fn letter(alph: &Arc<Alphabet>, field: Field, i: usize) -> FreePoly {
        FreePoly::word(alph, field, alph.word(vec![i as u8]))
    }

    /// Builds from `(word, coefficient)` pairs, summing repeats.
    pub fn from_terms(alph: &Arc<Alphabet>, field: Field, terms: impl IntoIterator<Item = (Word, Scalar)>) -> FreePoly {
        let mut p = FreePoly::zero(alph, field);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    /// Parses an element expression such as `x^2 + 1/2*y*x - 1`.
    pub fn parse(text: &str, alph: &Arc<Alphabet>, field: Field) -> Result<FreePoly, ParseError> {
        expr::parse::<FreePoly>(text, &(alph.clone(), field))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c * w` in place.
    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    /// Largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.leading().map(|(w, _)| w)
    }

    pub fn degree(&self) -> Result<u32, FreeAlgError> {
        self.terms.keys().map(Word::weight).max().ok_or(FreeAlgError::ZeroPolynomial)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Word::weight).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.degree().ok()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Word::is_empty)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    /// Homogeneous component of weight `d`.
    pub fn component(&self, d: u32) -> FreePoly {
        FreePoly {
            alph: self.alph.clone(),
            field: self.field,
            terms: self.terms.iter().filter(|(w, _)| w.weight() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// `f^∨`, the component of maximal weight.
    pub fn top_part(&self) -> Result<FreePoly, FreeAlgError> {
        Ok(self.component(self.degree()?))
    }

    fn check(&self, o: &FreePoly) -> Result<(), FreeAlgError> {
        if !same_alphabet(&self.alph, &o.alph) {
            return Err(FreeAlgError::AlphabetMismatch);
        }
        if self.field != o.field {
            return Err(FreeAlgError::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &FreePoly) -> Result<FreePoly, FreeAlgError> {
        self.check(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &FreePoly) -> Result<FreePoly, FreeAlgError> {
        self.check(o)?;
        let mut out = FreePoly::zero(&self.alph, self.field);
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    /// Panics on alphabet or field mismatch.
    pub fn add(&self, o: &FreePoly) -> FreePoly {
        self.try_add(o).expect("free polynomial mismatch")
    }

    pub fn sub(&self, o: &FreePoly) -> FreePoly {
        self.add(&o.neg())
    }

    /// Panics on alphabet or field mismatch.
    pub fn mul(&self, o: &FreePoly) -> FreePoly {
        self.try_mul(o).expect("free polynomial mismatch")
    }

    pub fn neg(&self) -> FreePoly {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, s: &Scalar) -> FreePoly {
        if s.is_zero() {
            return FreePoly::zero(&self.alph, self.field);
        }
        FreePoly {
            alph: self.alph.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> FreePoly {
        (0..e).fold(FreePoly::one(&self.alph, self.field), |acc, _| acc.mul(self))
    }

    /// `u * self * v` for words `u`, `v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> FreePoly {
        FreePoly {
            alph: self.alph.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (u.concat(w).concat(v), c.clone())).collect(),
        }
    }

    /// Scaled so that the leading coefficient is 1.
    pub fn monic(&self) -> FreePoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Same coefficients over an equal alphabet given by another handle.
    pub fn rebind(&self, alph: &Arc<Alphabet>) -> Result<FreePoly, FreeAlgError> {
        if !same_alphabet(&self.alph, alph) {
            return Err(FreeAlgError::AlphabetMismatch);
        }
        Ok(FreePoly { alph: alph.clone(), field: self.field, terms: self.terms.clone() })
    }

    /// Coefficient vector against `basis`; `None` if some term is missing from it.
    pub fn coords(&self, basis: &[Word]) -> Option<Vec<Scalar>> {
        if self.terms.keys().any(|w| !basis.contains(w)) {
            return None;
        }
        Some(basis.iter().map(|w| self.coeff(w)).collect())
    }

    pub fn from_coords(alph: &Arc<Alphabet>, field: Field, basis: &[Word], v: &[Scalar]) -> FreePoly {
        FreePoly::from_terms(alph, field, basis.iter().cloned().zip(v.iter().cloned()))
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (w, c) in self.terms.iter().rev() {
            let neg = c.to_string().starts_with('-');
            let mag = if neg { -c } else { c.clone() };
            let body = if w.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                w.display(&self.alph)
            } else if mag.is_compound() {
                format!("({mag})*{}", w.display(&self.alph))
            } else {
                format!("{mag}*{}", w.display(&self.alph))
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        write!(f, "{s}")
    }
}

/// Splits `name` into known letters, longest match first (`xy` -> `x`, `y`).
fn split_letters(alph: &Alphabet, name: &str) -> Option<Vec<usize>> {
    if name.is_empty() {
        return Some(Vec::new());
    }
    let mut idx: Vec<usize> = (0..alph.len()).collect();
    idx.sort_by_key(|&i| std::cmp::Reverse(alph.name(i).len()));
    for i in idx {
        if let Some(rest) = name.strip_prefix(alph.name(i)) {
            if let Some(mut tail) = split_letters(alph, rest) {
                tail.insert(0, i);
                return Some(tail);
            }
        }
    }
    None
}

impl ExprTarget for FreePoly {
    type Ctx = (Arc<Alphabet>, Field);

    fn constant(ctx: &Self::Ctx, q: &BigRational) -> Result<Self, ParseError> {
        Ok(FreePoly::constant(&ctx.0, ctx.1.from_rational(q)?))
    }

    fn sqrt_of(ctx: &Self::Ctx, d: i64) -> Result<Self, ParseError> {
        Ok(FreePoly::constant(&ctx.0, <Scalar as ExprTarget>::sqrt_of(&ctx.1, d)?))
    }

    fn letter(ctx: &Self::Ctx, name: &str) -> Result<Self, ParseError> {
        let idx = split_letters(&ctx.0, name).ok_or_else(|| ParseError::UnknownLetter(name.to_string()))?;
        Ok(FreePoly::word(&ctx.0, ctx.1, ctx.0.word(idx.into_iter().map(|i| i as u8).collect())))
    }

    fn expr_add(self, other: Self) -> Result<Self, ParseError> {
        Ok(self.add(&other))
    }

    fn expr_mul(self, other: Self) -> Result<Self, ParseError> {
        Ok(self.mul(&other))
    }

    fn expr_neg(self) -> Self {
        self.neg()
    }

    fn as_scalar(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.constant_term())
    }

    fn expr_scale(self, s: &Scalar) -> Result<Self, ParseError> {
        Ok(self.scale(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> FreePoly {
        FreePoly::parse(s, &Alphabet::uniform(&["x", "y"]), Field::Rationals).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(p("x").mul(&p("y")), p("xy"));
        assert_eq!(p("(x+y)(x-y)"), p("x^2 - x*y + y*x - y^2"));
        assert_eq!(p("(x+y)^2 + (x-y)^2"), p("2*(x^2+y^2)"));
    }

    #[test]
    fn display_round_trip() {
        let f = p("x^2 + 1/2*y*x - 1");
        assert_eq!(f.to_string(), "x^2 + 1/2*y*x - 1");
        assert_eq!(p(&f.to_string()), f);
        let q3 = Field::quadratic(3).unwrap();
        let a = Alphabet::uniform(&["x", "y"]);
        let g = FreePoly::parse("y^2 - (sqrt(3)/2)*x - 1", &a, q3).unwrap();
        assert_eq!(g.to_string(), "y^2 - sqrt(3)/2*x - 1");
        assert_eq!(FreePoly::parse(&g.to_string(), &a, q3).unwrap(), g);
    }

    #[test]
    fn top_parts() {
        assert_eq!(p("x^2+1").top_part().unwrap(), p("x^2"));
        assert_eq!(p("y^2+yx").top_part().unwrap(), p("y^2+yx"));
        assert_eq!(p("x^2-y").top_part().unwrap(), p("x^2"));
        assert!(p("0").top_part().is_err());
    }

    #[test]
    fn unknown_letters_rejected() {
        let a = Alphabet::uniform(&["x", "y"]);
        assert!(FreePoly::parse("x*z", &a, Field::Rationals).is_err());
        assert!(FreePoly::parse("x/y", &a, Field::Rationals).is_err());
    }
}
