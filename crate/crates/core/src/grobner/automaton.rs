//! Aho–Corasick automaton over the leading words of a basis. Accepted words are
//! exactly the normal words; counting paths gives the Hilbert function and the
//! transfer matrix gives the Hilbert series as a rational function.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::Field;
use crate::freealg::{Alphabet, Word};
use crate::series::RatFunc;
use crate::upoly::UPoly;

#[derive(Debug, Clone)]
pub struct NormalWordAutomaton {
    weights: Vec<u32>,
    /// `trans[s][a]` is the state after reading letter `a` in state `s`.
    trans: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl NormalWordAutomaton {
    pub fn new(alph: &Alphabet, forbidden: &[Word]) -> NormalWordAutomaton {
        let n = alph.len();
        let mut goto: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
        let mut dead = vec![false];
        for w in forbidden {
            let mut s = 0;
            for &l in w.letters() {
                s = match goto[s][l as usize] {
                    Some(t) => t,
                    None => {
                        goto.push(vec![None; n]);
                        dead.push(false);
                        let t = goto.len() - 1;
                        goto[s][l as usize] = Some(t);
                        t
                    }
                };
            }
            dead[s] = true;
        }
        let states = goto.len();
        let mut fail = vec![0usize; states];
        let mut trans = vec![vec![0usize; n]; states];
        let mut queue = VecDeque::new();
        for a in 0..n {
            match goto[0][a] {
                Some(t) => {
                    trans[0][a] = t;
                    queue.push_back(t);
                }
                None => trans[0][a] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for a in 0..n {
                match goto[s][a] {
                    Some(t) => {
                        fail[t] = trans[fail[s]][a];
                        trans[s][a] = t;
                        queue.push_back(t);
                    }
                    None => trans[s][a] = trans[fail[s]][a],
                }
            }
        }
        let weights = (0..n).map(|i| alph.weight(i)).collect();
        NormalWordAutomaton { weights, trans, dead }
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    /// Live states reachable from the root, in BFS order (root first).
    fn live_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.trans.len()];
        let mut order = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            for &t in &self.trans[s] {
                if !self.dead[t] && !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Number of accepted words of each weight `0..=d`.
    pub fn counts(&self, d: u32) -> Vec<u64> {
        let d = d as usize;
        let k = self.trans.len();
        let mut table = vec![vec![0u64; k]; d + 1];
        table[0][0] = 1;
        let mut out = vec![0u64; d + 1];
        for w in 0..=d {
            for s in 0..k {
                let c = table[w][s];
                if c == 0 {
                    continue;
                }
                out[w] = out[w].checked_add(c).expect("Hilbert coefficient overflow");
                for (a, &t) in self.trans[s].iter().enumerate() {
                    let nw = w + self.weights[a] as usize;
                    if nw <= d && !self.dead[t] {
                        table[nw][t] = table[nw][t].checked_add(c).expect("Hilbert coefficient overflow");
                    }
                }
            }
        }
        out
    }

    /// Accepted words of weight exactly `d`, sorted ascending.
    pub fn words(&self, alph: &Alphabet, d: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<u8>, u32)> = vec![(0, Vec::new(), 0)];
        while let Some((s, w, wt)) = stack.pop() {
            if wt == d {
                out.push(alph.word(w));
                continue;
            }
            for (a, &t) in self.trans[s].iter().enumerate() {
                let nw = wt + self.weights[a];
                if nw <= d && !self.dead[t] {
                    let mut v = w.clone();
                    v.push(a as u8);
                    stack.push((t, v, nw));
                }
            }
        }
        out.sort();
        out
    }

    /// Whether finitely many words are accepted (no cycle among live states).
    pub fn is_finite(&self) -> bool {
        let live = self.live_states();
        let mut color = vec![0u8; self.trans.len()];
        fn dfs(a: &NormalWordAutomaton, s: usize, color: &mut [u8]) -> bool {
            color[s] = 1;
            for &t in &a.trans[s] {
                if a.dead[t] {
                    continue;
                }
                if color[t] == 1 || (color[t] == 0 && !dfs(a, t, color)) {
                    return false;
                }
            }
            color[s] = 2;
            true
        }
        live.is_empty() || dfs(self, 0, &mut color)
    }

    /// Largest weight of an accepted word, when the language is finite.
    pub fn max_weight(&self) -> Option<u32> {
        if !self.is_finite() {
            return None;
        }
        let bound: u32 = self.weights.iter().max().copied().unwrap_or(1) * self.trans.len() as u32;
        let c = self.counts(bound);
        Some(c.iter().rposition(|&x| x > 0).unwrap_or(0) as u32)
    }

    /// Generating function of accepted words by weight.
    pub fn hilbert_series(&self) -> RatFunc {
        let live = self.live_states();
        let n = live.len();
        let mut pos = vec![usize::MAX; self.trans.len()];
        for (i, &s) in live.iter().enumerate() {
            pos[s] = i;
        }
        // A = I - M(t), integer polynomial entries.
        let mut a: Vec<Vec<ZPoly>> = vec![vec![ZPoly::zero(); n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = ZPoly::one();
        }
        for (i, &s) in live.iter().enumerate() {
            for (l, &t) in self.trans[s].iter().enumerate() {
                if !self.dead[t] {
                    let j = pos[t];
                    a[i][j] = a[i][j].sub(&ZPoly::monomial(self.weights[l] as usize));
                }
            }
        }
        let den = bareiss_det(a.clone());
        for row in a.iter_mut() {
            row[0] = ZPoly::one();
        }
        let num = bareiss_det(a);
        RatFunc::new(num.to_upoly(), den.to_upoly())
    }
}

/// Polynomial in `t` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ZPoly(Vec<BigInt>);

impl ZPoly {
    fn zero() -> ZPoly {
        ZPoly(Vec::new())
    }

    fn one() -> ZPoly {
        ZPoly(vec![BigInt::one()])
    }

    fn monomial(d: usize) -> ZPoly {
        let mut v = vec![BigInt::zero(); d + 1];
        v[d] = BigInt::one();
        ZPoly(v)
    }

    fn trim(mut self) -> ZPoly {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        ZPoly((0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect()).trim()
    }

    fn neg(&self) -> ZPoly {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly(out).trim()
    }

    /// Exact division; the divisor must divide `self` over `Z[t]`.
    fn div_exact(&self, d: &ZPoly) -> ZPoly {
        let dd = d.0.len() - 1;
        let lead = d.0.last().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            assert!(ZPoly(r).trim().is_zero(), "inexact polynomial division");
            return ZPoly::zero();
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / lead;
            assert!((&c * lead) == r[k + dd], "inexact polynomial division");
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
        ZPoly(q).trim()
    }

    fn to_upoly(&self) -> UPoly {
        let q = Field::Rationals;
        UPoly::new(q, self.0.iter().map(|c| q.from_rational(&c.clone().into()).unwrap()).collect())
    }
}

/// Fraction-free determinant over `Z[t]`.
fn bareiss_det(mut m: Vec<Vec<ZPoly>>) -> ZPoly {
    let n = m.len();
    if n == 0 {
        return ZPoly::one();
    }
    let mut sign = false;
    let mut prev = ZPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return ZPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}
