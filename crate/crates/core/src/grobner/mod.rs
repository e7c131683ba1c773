//! Two-sided Gröbner bases in free algebras: reduction, overlap completion
//! truncated at a degree bound, normal words and Hilbert series.

mod automaton;

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

pub use automaton::NormalWordAutomaton;

use crate::field::{Field, Scalar};
use crate::freealg::{Alphabet, FreeAlgError, FreePoly, Word};
use crate::series::RatFunc;

pub const DEFAULT_DEGREE_BOUND: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrobnerError {
    #[error("zero relation")]
    ZeroRelation,
    #[error("no relations and no alphabet given")]
    Empty,
    #[error("degree bound {bound} is below the relation degree {degree}")]
    BoundTooSmall { bound: u32, degree: u32 },
    #[error("inconclusive at bound {bound}: degree {degree} exceeds the certified range")]
    Inconclusive { bound: u32, degree: u32 },
    #[error("the basis is not known to be complete")]
    Incomplete,
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

/// An overlap of two leading words: `a = p s`, `b = s q`, ambiguity `p s q`.
#[derive(Debug, Clone)]
pub struct Overlap {
    pub left: usize,
    pub right: usize,
    /// Length of the shared part `s`.
    pub shared: usize,
    pub weight: u32,
}

/// Inter-reduced monic generators with a completeness flag.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    alph: Arc<Alphabet>,
    field: Field,
    gens: Vec<FreePoly>,
    bound: u32,
    complete: bool,
    automaton: NormalWordAutomaton,
}

/// Coefficients `c_0..c_D` of a Hilbert function, plus the exact series when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub coeffs: Vec<u64>,
    pub rational: Option<RatFunc>,
}

fn add_into(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(v) => {
            let s = &*v + &c;
            if s.is_zero() {
                map.remove(&w);
            } else {
                *v = s;
            }
        }
        None => {
            map.insert(w, c);
        }
    }
}

/// Fully reduces `f` modulo monic `gens` (leading words are not assumed reduced).
fn reduce_by(gens: &[FreePoly], f: &FreePoly) -> FreePoly {
    let alph = f.alphabet().clone();
    let mut rem = f.terms().clone();
    let mut out = FreePoly::zero(&alph, f.field());
    'outer: while let Some((w, c)) = rem.pop_last() {
        for g in gens {
            let lw = g.leading_word().unwrap();
            if let Some(pos) = w.find(lw) {
                let u = w.slice(&alph, 0, pos);
                let v = w.slice(&alph, pos + lw.len(), w.len());
                for (gw, gc) in g.terms().iter().rev().skip(1) {
                    add_into(&mut rem, u.concat(gw).concat(&v), -&(&c * gc));
                }
                continue 'outer;
            }
        }
        out.add_term(w, &c);
    }
    out
}

fn interreduce(mut gens: Vec<FreePoly>) -> Vec<FreePoly> {
    loop {
        gens.retain(|g| !g.is_zero());
        gens = gens.into_iter().map(|g| g.monic()).collect();
        gens.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
        gens.dedup();
        let hit = (0..gens.len()).find(|&i| {
            let li = gens[i].leading_word().unwrap();
            (0..gens.len()).any(|j| j != i && li.contains(gens[j].leading_word().unwrap()))
        });
        match hit {
            Some(i) => {
                let g = gens.remove(i);
                let r = reduce_by(&gens, &g);
                if !r.is_zero() {
                    gens.push(r);
                }
            }
            None => break,
        }
    }
    let snapshot = gens.clone();
    let mut out: Vec<FreePoly> = (0..snapshot.len())
        .map(|i| {
            let others: Vec<FreePoly> =
                snapshot.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            reduce_by(&others, &snapshot[i]).monic()
        })
        .collect();
    out.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
    out
}

fn overlaps(gens: &[FreePoly]) -> Vec<Overlap> {
    let mut out = Vec::new();
    for (i, gi) in gens.iter().enumerate() {
        let a = gi.leading_word().unwrap();
        for (j, gj) in gens.iter().enumerate() {
            let b = gj.leading_word().unwrap();
            // Proper overlaps only; inclusions are removed by inter-reduction.
            for k in 1..a.len().min(b.len()) {
                if a.letters()[a.len() - k..] == b.letters()[..k] {
                    let extra: u32 = b.weight() - weight_of_prefix(gj, k);
                    out.push(Overlap { left: i, right: j, shared: k, weight: a.weight() + extra });
                }
            }
        }
    }
    out.sort_by_key(|o| (o.weight, o.left, o.right, o.shared));
    out
}

fn weight_of_prefix(g: &FreePoly, k: usize) -> u32 {
    let w = g.leading_word().unwrap();
    let alph = g.alphabet();
    w.letters()[..k].iter().map(|&l| alph.weight(l as usize)).sum()
}

fn s_poly(gens: &[FreePoly], o: &Overlap) -> FreePoly {
    let gi = &gens[o.left];
    let gj = &gens[o.right];
    let alph = gi.alphabet();
    let a = gi.leading_word().unwrap();
    let b = gj.leading_word().unwrap();
    let q = b.slice(alph, o.shared, b.len());
    let p = a.slice(alph, 0, a.len() - o.shared);
    gi.sandwich(&Word::empty(), &q).sub(&gj.sandwich(&p, &Word::empty()))
}

impl GroebnerBasis {
    /// Completes `relations` through weight `bound`.
    pub fn complete(relations: &[FreePoly], bound: u32) -> Result<GroebnerBasis, GrobnerError> {
        let first = relations.first().ok_or(GrobnerError::Empty)?;
        GroebnerBasis::complete_in(first.alphabet(), first.field(), relations, bound)
    }

    /// As [`GroebnerBasis::complete`], allowing an empty relation list.
    pub fn complete_in(
        alph: &Arc<Alphabet>,
        field: Field,
        relations: &[FreePoly],
        bound: u32,
    ) -> Result<GroebnerBasis, GrobnerError> {
        let mut gens = Vec::new();
        for r in relations {
            if r.is_zero() {
                return Err(GrobnerError::ZeroRelation);
            }
            let r = r.rebind(alph)?;
            if r.field() != field {
                return Err(GrobnerError::FreeAlg(FreeAlgError::FieldMismatch));
            }
            let d = r.degree()?;
            if d > bound {
                return Err(GrobnerError::BoundTooSmall { bound, degree: d });
            }
            gens.push(r);
        }
        let mut gens = interreduce(gens);
        let mut resolved: HashSet<(FreePoly, FreePoly, usize)> = HashSet::new();
        loop {
            let mut added = false;
            for o in overlaps(&gens).into_iter().filter(|o| o.weight <= bound) {
                let key = (gens[o.left].clone(), gens[o.right].clone(), o.shared);
                if resolved.contains(&key) {
                    continue;
                }
                let r = reduce_by(&gens, &s_poly(&gens, &o));
                if r.is_zero() {
                    resolved.insert(key);
                } else {
                    gens.push(r);
                    gens = interreduce(gens);
                    added = true;
                    break;
                }
            }
            if !added {
                // Final unmemoized sweep of the truncated range.
                let stale = overlaps(&gens)
                    .into_iter()
                    .filter(|o| o.weight <= bound)
                    .find_map(|o| Some(reduce_by(&gens, &s_poly(&gens, &o))).filter(|r| !r.is_zero()));
                match stale {
                    Some(r) => {
                        gens.push(r);
                        gens = interreduce(gens);
                    }
                    None => break,
                }
            }
        }
        let complete = overlaps(&gens)
            .into_iter()
            .filter(|o| o.weight > bound)
            .all(|o| reduce_by(&gens, &s_poly(&gens, &o)).is_zero());
        let lws: Vec<Word> = gens.iter().map(|g| g.leading_word().unwrap().clone()).collect();
        let automaton = NormalWordAutomaton::new(alph, &lws);
        Ok(GroebnerBasis { alph: alph.clone(), field, gens, bound, complete, automaton })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[FreePoly] {
        &self.gens
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn automaton(&self) -> &NormalWordAutomaton {
        &self.automaton
    }

    fn certify(&self, d: u32) -> Result<(), GrobnerError> {
        if self.complete || d <= self.bound {
            Ok(())
        } else {
            Err(GrobnerError::Inconclusive { bound: self.bound, degree: d })
        }
    }

    /// Normal form of `f`; no term of the result contains a leading word.
    pub fn reduce(&self, f: &FreePoly) -> Result<FreePoly, GrobnerError> {
        let f = f.rebind(&self.alph)?;
        if let Ok(d) = f.degree() {
            self.certify(d)?;
        }
        Ok(reduce_by(&self.gens, &f))
    }

    pub fn membership(&self, f: &FreePoly) -> Result<bool, GrobnerError> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn normal_words(&self, d: u32) -> Result<Vec<Word>, GrobnerError> {
        self.certify(d)?;
        Ok(self.automaton.words(&self.alph, d))
    }

    /// Normal words of every weight `<= d`, ascending.
    pub fn normal_words_upto(&self, d: u32) -> Result<Vec<Word>, GrobnerError> {
        self.certify(d)?;
        Ok((0..=d).flat_map(|i| self.automaton.words(&self.alph, i)).collect())
    }

    pub fn hilbert_truncated(&self, d: u32) -> Result<HilbertData, GrobnerError> {
        self.certify(d)?;
        Ok(HilbertData { coeffs: self.automaton.counts(d), rational: None })
    }

    pub fn hilbert_rational(&self) -> Result<RatFunc, GrobnerError> {
        if !self.complete {
            return Err(GrobnerError::Incomplete);
        }
        Ok(self.automaton.hilbert_series())
    }

    /// Truncated coefficients, plus the rational form when the basis is complete.
    pub fn hilbert(&self, d: u32) -> Result<HilbertData, GrobnerError> {
        let mut h = self.hilbert_truncated(d)?;
        h.rational = self.hilbert_rational().ok();
        Ok(h)
    }

    /// Finite quotient: total dimension, or `None` if infinite.
    pub fn quotient_dimension(&self) -> Option<u64> {
        if !self.complete {
            return None;
        }
        let top = self.automaton.max_weight()?;
        Some(self.automaton.counts(top).iter().sum())
    }

    /// Every overlap ambiguity of weight `<= limit` resolves to zero.
    pub fn diamond_check(&self, limit: u32) -> bool {
        overlaps(&self.gens)
            .into_iter()
            .filter(|o| o.weight <= limit)
            .all(|o| reduce_by(&self.gens, &s_poly(&self.gens, &o)).is_zero())
    }

    /// All overlaps, regardless of weight.
    pub fn overlaps(&self) -> Vec<Overlap> {
        overlaps(&self.gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Alphabet> {
        Alphabet::uniform(&["x", "y"])
    }

    fn ps(a: &Arc<Alphabet>, rels: &[&str]) -> Vec<FreePoly> {
        rels.iter().map(|r| FreePoly::parse(r, a, Field::Rationals).unwrap()).collect()
    }

    fn gb(rels: &[&str]) -> GroebnerBasis {
        let a = xy();
        GroebnerBasis::complete_in(&a, Field::Rationals, &ps(&a, rels), 12).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let a = xy();
        let g = gb(&["xy+yx"]);
        assert_eq!(g.reduce(&ps(&a, &["xy"])[0]).unwrap(), ps(&a, &["-yx"])[0]);
        let g = gb(&["x^2", "xy+yx"]);
        assert_eq!(g.reduce(&ps(&a, &["x*y^2"])[0]).unwrap(), ps(&a, &["y^2*x"])[0]);
        assert!(gb(&["x^2"]).membership(&ps(&a, &["x^2"])[0]).unwrap());
        assert!(!gb(&["xy"]).membership(&ps(&a, &["yx"])[0]).unwrap());
    }

    #[test]
    fn completion_examples() {
        let g = gb(&["x^2", "xy+yx"]);
        assert!(g.is_complete());
        assert_eq!(g.generators().len(), 2);
        let g = gb(&["xy - 2yx"]);
        assert!(g.is_complete());
        assert_eq!(g.generators().len(), 1);
    }

    #[test]
    fn normal_word_bases() {
        let a = xy();
        let g = gb(&["x^2", "xy+yx"]);
        let show = |d| g.normal_words(d).unwrap().iter().map(|w| w.display(&a)).collect::<Vec<_>>();
        assert_eq!(show(1), vec!["y", "x"]);
        assert_eq!(show(2), vec!["y^2", "y*x"]);
        assert_eq!(show(3), vec!["y^3", "y^2*x"]);
        let free = GroebnerBasis::complete_in(&a, Field::Rationals, &[], 12).unwrap();
        assert_eq!(free.normal_words(2).unwrap().len(), 4);
        assert_eq!(gb(&["xy - yx + y^2"]).normal_words(2).unwrap().len(), 3);
    }

    #[test]
    fn hilbert_series() {
        let h = gb(&["x^2"]).hilbert(12).unwrap();
        assert_eq!(&h.coeffs[..6], &[1, 2, 3, 5, 8, 13]);
        assert_eq!(h.rational.unwrap(), RatFunc::parse("(1+t)/(1-t-t^2)").unwrap());
        for rels in [&["xy-2yx"][..], &["xy"], &["xy+yx"], &["xy-yx+y^2"]] {
            let h = gb(rels).hilbert(12).unwrap();
            assert_eq!(h.coeffs, (1..=13).collect::<Vec<u64>>());
            assert_eq!(h.rational.unwrap(), RatFunc::parse("1/(1-t)^2").unwrap());
        }
        assert_eq!(gb(&["x^2", "xy+yx"]).hilbert_rational().unwrap(), RatFunc::parse("(1+t)/(1-t)").unwrap());
        let a = xy();
        let free = GroebnerBasis::complete_in(&a, Field::Rationals, &[], 12).unwrap();
        assert_eq!(free.hilbert_rational().unwrap(), RatFunc::parse("1/(1-2t)").unwrap());
    }

    #[test]
    fn commutative_quotients_complete() {
        let a = Alphabet::uniform(&["x", "y", "z"]);
        let rels = ps(&a, &["xy-yx", "xz-zx", "yz-zy", "x^2-z^2", "y^2-z^2"]);
        let g = GroebnerBasis::complete(&rels, 12).unwrap();
        assert!(g.is_complete());
        assert!(g.diamond_check(24));
        assert_eq!(g.hilbert_rational().unwrap(), RatFunc::parse("(1-t^2)^2/(1-t)^3").unwrap());
    }

    #[test]
    fn finite_quotient_dimension() {
        let g = gb(&["x^2", "y^2", "xy+yx"]);
        assert_eq!(g.quotient_dimension(), Some(4));
        assert_eq!(gb(&["x^2", "xy+yx"]).quotient_dimension(), None);
    }
}
