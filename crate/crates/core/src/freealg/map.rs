use std::sync::Arc;

use super::poly::same_alphabet;
use super::{Alphabet, FreeAlgError, FreePoly, Word};
use crate::field::Field;
use crate::linalg::Matrix;

/// Algebra map out of a free algebra, given by the image of each letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    source: Arc<Alphabet>,
    images: Vec<FreePoly>,
}

impl GeneratorMap {
    pub fn new(source: &Arc<Alphabet>, images: Vec<FreePoly>) -> Result<GeneratorMap, FreeAlgError> {
        if images.len() != source.len() {
            return Err(FreeAlgError::BadMap(format!(
                "{} images for {} letters",
                images.len(),
                source.len()
            )));
        }
        if images.windows(2).any(|w| !same_alphabet(w[0].alphabet(), w[1].alphabet()) || w[0].field() != w[1].field())
        {
            return Err(FreeAlgError::BadMap("images live in different algebras".into()));
        }
        Ok(GeneratorMap { source: source.clone(), images })
    }

    pub fn identity(alph: &Arc<Alphabet>, field: Field) -> GeneratorMap {
        GeneratorMap {
            source: alph.clone(),
            images: (0..alph.len()).map(|i| FreePoly::letter(alph, field, i)).collect(),
        }
    }

    /// Linear map on a weight-one alphabet with `x_i -> sum_j m[i][j] x_j`.
    pub fn from_matrix(alph: &Arc<Alphabet>, m: &Matrix) -> Result<GeneratorMap, FreeAlgError> {
        if m.rows() != alph.len() || m.cols() != alph.len() || !alph.all_weight_one() {
            return Err(FreeAlgError::BadMap("matrix size does not match a weight-one alphabet".into()));
        }
        let f = m.field();
        let images = (0..m.rows())
            .map(|i| {
                FreePoly::from_terms(alph, f, (0..m.cols()).map(|j| (alph.word(vec![j as u8]), m.get(i, j).clone())))
            })
            .collect();
        GeneratorMap::new(alph, images)
    }

    /// Parses one image expression per letter, in listing order.
    pub fn parse(alph: &Arc<Alphabet>, field: Field, images: &[&str]) -> Result<GeneratorMap, crate::expr::ParseError> {
        let imgs = images.iter().map(|s| FreePoly::parse(s, alph, field)).collect::<Result<Vec<_>, _>>()?;
        GeneratorMap::new(alph, imgs).map_err(|e| crate::expr::ParseError::Syntax { col: 0, msg: e.to_string() })
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn images(&self) -> &[FreePoly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &FreePoly {
        &self.images[i]
    }

    pub fn field(&self) -> Field {
        self.images[0].field()
    }

    fn target(&self) -> &Arc<Alphabet> {
        self.images[0].alphabet()
    }

    pub fn apply_word(&self, w: &Word) -> FreePoly {
        let mut acc = FreePoly::one(self.target(), self.field());
        for &l in w.letters() {
            acc = acc.mul(&self.images[l as usize]);
        }
        acc
    }

    /// `f(images)`.
    pub fn substitute(&self, f: &FreePoly) -> Result<FreePoly, FreeAlgError> {
        if !same_alphabet(f.alphabet(), &self.source) {
            return Err(FreeAlgError::AlphabetMismatch);
        }
        let mut out = FreePoly::zero(self.target(), self.field());
        for (w, c) in f.terms() {
            out = out.add(&self.apply_word(w).scale(c));
        }
        Ok(out)
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn compose(&self, inner: &GeneratorMap) -> Result<GeneratorMap, FreeAlgError> {
        let images = inner.images.iter().map(|p| self.substitute(p)).collect::<Result<Vec<_>, _>>()?;
        GeneratorMap::new(&inner.source, images)
    }

    /// Every image is homogeneous of its letter's weight.
    pub fn is_graded(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, p)| !p.is_zero() && p.is_homogeneous() && p.degree().ok() == Some(self.source.weight(i)))
    }

    /// Matrix of a graded map on a weight-one alphabet (row `i` = image of `x_i`).
    pub fn linear_matrix(&self) -> Option<Matrix> {
        if !self.source.all_weight_one() || !same_alphabet(&self.source, self.target()) || !self.is_graded() {
            return None;
        }
        let n = self.source.len();
        let f = self.field();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.images[i].coeff(&self.source.word(vec![j as u8]))).collect())
            .collect();
        Some(Matrix::from_rows(f, n, rows))
    }

    pub fn is_invertible_linear(&self) -> bool {
        self.linear_matrix().is_some_and(|m| !m.det().is_zero())
    }

    pub fn inverse_linear(&self) -> Option<GeneratorMap> {
        let inv = self.linear_matrix()?.inverse()?;
        GeneratorMap::from_matrix(&self.source, &inv).ok()
    }

    pub fn is_identity(&self) -> bool {
        *self == GeneratorMap::identity(&self.source, self.field())
    }

    /// Canonical image strings, one per letter.
    pub fn display_images(&self) -> Vec<String> {
        self.images.iter().map(|p| p.to_string()).collect()
    }
}

/// `f^z = sum_i f_i z^(d-i)` where `d = deg f`, in an alphabet extended by `z`.
pub fn homogenize(f: &FreePoly, z: &str) -> Result<FreePoly, FreeAlgError> {
    let alph = f.alphabet().with_letter(z, 1)?;
    homogenize_into(f, &alph)
}

/// Homogenizes into an already-extended alphabet whose last letter is `z`.
pub fn homogenize_into(f: &FreePoly, alph: &Arc<Alphabet>) -> Result<FreePoly, FreeAlgError> {
    let d = f.degree()?;
    let zi = (alph.len() - 1) as u8;
    let old = f.alphabet();
    if alph.len() != old.len() + 1 || alph.letters()[..old.len()] != old.letters()[..] {
        return Err(FreeAlgError::AlphabetMismatch);
    }
    let terms = f.terms().iter().map(|(w, c)| {
        let mut letters = w.letters().to_vec();
        letters.extend(std::iter::repeat(zi).take((d - w.weight()) as usize));
        (alph.word(letters), c.clone())
    });
    Ok(FreePoly::from_terms(alph, f.field(), terms))
}

/// `f_z`: substitutes 1 for the letter `z` and drops it from the alphabet.
pub fn dehomogenize(f: &FreePoly, z: &str) -> Result<FreePoly, FreeAlgError> {
    let zi = f.alphabet().index(z).ok_or_else(|| FreeAlgError::UnknownLetter(z.to_string()))?;
    let alph = f.alphabet().without(zi)?;
    dehomogenize_into(f, zi, &alph)
}

pub fn dehomogenize_into(f: &FreePoly, zi: usize, alph: &Arc<Alphabet>) -> Result<FreePoly, FreeAlgError> {
    let zi = zi as u8;
    let terms = f.terms().iter().map(|(w, c)| {
        let letters: Vec<u8> =
            w.letters().iter().filter(|&&l| l != zi).map(|&l| if l > zi { l - 1 } else { l }).collect();
        (alph.word(letters), c.clone())
    });
    Ok(FreePoly::from_terms(alph, f.field(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Alphabet> {
        Alphabet::uniform(&["x", "y"])
    }

    fn p(s: &str) -> FreePoly {
        FreePoly::parse(s, &xy(), Field::Rationals).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let phi = GeneratorMap::parse(&xy(), Field::Rationals, &["x+y", "x-y"]).unwrap();
        let alpha = "3";
        let f = p(&format!("x^2 + {alpha}*x*y"));
        assert_eq!(phi.substitute(&f).unwrap(), p("4x^2 - 2xy + 4yx - 2y^2"));
        assert_eq!(phi.substitute(&p("xy+yx")).unwrap(), p("2(x^2-y^2)"));
        assert_eq!(phi.substitute(&p("x^2+y^2")).unwrap(), p("2(x^2+y^2)"));
        assert!(phi.is_invertible_linear());
        let id = GeneratorMap::identity(&xy(), Field::Rationals);
        assert_eq!(id.substitute(&f).unwrap(), f);
    }

    #[test]
    fn homogenization_examples() {
        let a = xy();
        let q = Field::Rationals;
        let h = homogenize(&p("x^2-1"), "z").unwrap();
        let xyz = h.alphabet().clone();
        assert_eq!(h, FreePoly::parse("x^2 - z^2", &xyz, q).unwrap());
        assert_eq!(homogenize(&p("x^2-y"), "z").unwrap(), FreePoly::parse("x^2 - y*z", &xyz, q).unwrap());
        let q3 = Field::quadratic(3).unwrap();
        let g = FreePoly::parse("y^2 - (sqrt(3)/2)x - 1", &a, q3).unwrap();
        assert_eq!(
            homogenize(&g, "z").unwrap(),
            FreePoly::parse("y^2 - (sqrt(3)/2)x*z - z^2", &xyz, q3).unwrap()
        );
        assert_eq!(dehomogenize(&h, "z").unwrap(), p("x^2-1"));
        let z3 = FreePoly::parse("z^3", &xyz, q).unwrap();
        assert_eq!(dehomogenize(&z3, "z").unwrap(), p("1"));
        assert!(homogenize(&p("x"), "x").is_err());
    }
}
