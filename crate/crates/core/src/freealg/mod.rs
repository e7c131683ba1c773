//! Free associative algebras over a weighted alphabet.

mod map;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use map::{dehomogenize, dehomogenize_into, homogenize, homogenize_into, GeneratorMap};
pub use poly::FreePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("letter `{0}` already exists")]
    LetterCollision(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("generator map: {0}")]
    BadMap(String),
}

/// Ordered list of named letters with positive weights.
///
/// Listing order sets precedence: the first letter is the greatest, so the
/// default `x y` gives `y < x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<(String, u32)>,
}

impl Alphabet {
    pub fn new(letters: Vec<(String, u32)>) -> Result<Arc<Alphabet>, FreeAlgError> {
        if letters.is_empty() || letters.len() > 255 {
            return Err(FreeAlgError::InvalidAlphabet("need between 1 and 255 letters".into()));
        }
        for (i, (n, w)) in letters.iter().enumerate() {
            if *w == 0 {
                return Err(FreeAlgError::InvalidAlphabet(format!("letter `{n}` has weight 0")));
            }
            let valid = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_')
                && n != "sqrt";
            if !valid {
                return Err(FreeAlgError::InvalidAlphabet(format!("bad letter name `{n}`")));
            }
            if letters[..i].iter().any(|(m, _)| m == n) {
                return Err(FreeAlgError::LetterCollision(n.clone()));
            }
        }
        Ok(Arc::new(Alphabet { letters }))
    }

    /// Letters of weight 1.
    pub fn uniform(names: &[&str]) -> Arc<Alphabet> {
        Alphabet::new(names.iter().map(|n| (n.to_string(), 1)).collect()).expect("valid letter names")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.letters[i].0
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.letters[i].1
    }

    pub fn letters(&self) -> &[(String, u32)] {
        &self.letters
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|(n, _)| n == name)
    }

    pub fn all_weight_one(&self) -> bool {
        self.letters.iter().all(|(_, w)| *w == 1)
    }

    /// A copy with `name` appended as the smallest letter.
    pub fn with_letter(&self, name: &str, weight: u32) -> Result<Arc<Alphabet>, FreeAlgError> {
        if self.index(name).is_some() {
            return Err(FreeAlgError::LetterCollision(name.to_string()));
        }
        let mut letters = self.letters.clone();
        letters.push((name.to_string(), weight));
        Alphabet::new(letters)
    }

    /// A copy with letter `i` removed.
    pub fn without(&self, i: usize) -> Result<Arc<Alphabet>, FreeAlgError> {
        let mut letters = self.letters.clone();
        letters.remove(i);
        Alphabet::new(letters)
    }

    pub fn word(&self, letters: Vec<u8>) -> Word {
        let weight = letters.iter().map(|&l| self.weight(l as usize)).sum();
        Word { letters, weight }
    }

    /// All words of exact weight `d`, sorted ascending.
    pub fn words_of_weight(&self, d: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::<u8>::new(), 0u32)];
        while let Some((w, wt)) = stack.pop() {
            if wt == d {
                out.push(Word { letters: w, weight: d });
                continue;
            }
            for i in 0..self.len() {
                let nw = wt + self.weight(i);
                if nw <= d {
                    let mut v = w.clone();
                    v.push(i as u8);
                    stack.push((v, nw));
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|(n, w)| format!("{n}:{w}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A word given by letter indices into an [`Alphabet`], with cached weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<u8>,
    weight: u32,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters, weight: self.weight + other.weight }
    }

    /// Subword `[a, b)`; `alph` supplies the weights.
    pub fn slice(&self, alph: &Alphabet, a: usize, b: usize) -> Word {
        alph.word(self.letters[a..b].to_vec())
    }

    /// First position at which `pat` occurs as a factor.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.letters[i..i + pat.len()] == pat.letters[..])
    }

    pub fn contains(&self, pat: &Word) -> bool {
        self.find(pat).is_some()
    }

    /// Canonical text such as `y^2*x`; `1` for the empty word.
    pub fn display(&self, alph: &Alphabet) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let name = alph.name(l as usize);
            parts.push(if j - i == 1 { name.to_string() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }
}

impl Ord for Word {
    /// Weighted degree first, then left to right with earlier-listed letters greater.
    fn cmp(&self, other: &Word) -> Ordering {
        self.weight.cmp(&other.weight).then_with(|| {
            for (a, b) in self.letters.iter().zip(&other.letters) {
                if a != b {
                    return b.cmp(a);
                }
            }
            self.letters.len().cmp(&other.letters.len())
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_conventions() {
        let a = Alphabet::uniform(&["x", "y"]);
        let x = a.word(vec![0]);
        let y = a.word(vec![1]);
        assert!(y < x);
        assert!(x < a.word(vec![1, 1]));
        assert!(a.word(vec![1, 0]) < a.word(vec![0, 1]));
        assert_eq!(a.words_of_weight(2).len(), 4);
        assert_eq!(a.word(vec![1, 1, 0]).display(&a), "y^2*x");
    }

    #[test]
    fn weighted_words() {
        let a = Alphabet::new(vec![("x".into(), 1), ("y".into(), 2)]).unwrap();
        assert_eq!(a.words_of_weight(2).len(), 2);
        assert!(Alphabet::new(vec![("x".into(), 1), ("x".into(), 1)]).is_err());
    }
}
