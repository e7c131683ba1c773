use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, Scalar};
use crate::upoly::format_poly;

/// Commutative polynomial in variables `m1..mn` with exponent-vector keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(field: Field, nvars: usize) -> MPoly {
        MPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    /// `sum_i coeffs[i] * m_{i+1}`.
    pub fn linear(field: Field, coeffs: &[Scalar]) -> MPoly {
        let n = coeffs.len();
        let mut p = MPoly::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(|| self.field.zero());
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * s));
        }
        out
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Determinant of a square matrix of polynomials by cofactor expansion.
    pub fn det(field: Field, nvars: usize, m: &[Vec<MPoly>]) -> MPoly {
        let n = m.len();
        if n == 0 {
            return MPoly::constant(field, nvars, field.one());
        }
        let cols: Vec<usize> = (0..n).collect();
        let mut memo = BTreeMap::new();
        det_minor(field, nvars, m, 0, &cols, &mut memo)
    }
}

fn det_minor(
    field: Field,
    nvars: usize,
    m: &[Vec<MPoly>],
    row: usize,
    cols: &[usize],
    memo: &mut BTreeMap<Vec<usize>, MPoly>,
) -> MPoly {
    if cols.is_empty() {
        return MPoly::constant(field, nvars, field.one());
    }
    if let Some(p) = memo.get(cols) {
        return p.clone();
    }
    let mut acc = MPoly::zero(field, nvars);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_minor(field, nvars, m, row + 1, &rest, memo);
        let mut term = m[row][c].mul(&minor);
        if k % 2 == 1 {
            term = term.scale(&-field.one());
        }
        acc = acc.add(&term);
    }
    memo.insert(cols.to_vec(), acc.clone());
    acc
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("m{}", i + 1) } else { format!("m{}^{k}", i + 1) })
                .collect();
            let mono = mono.join("*");
            let coeff = format_poly(std::slice::from_ref(c), "t");
            parts.push(if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else if c.is_compound() {
                format!("({c})*{mono}")
            } else {
                format!("{c}*{mono}")
            });
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(&format!(" - {rest}"));
            } else {
                s.push_str(&format!(" + {p}"));
            }
        }
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_linear_forms() {
        let q = Field::Rationals;
        let s = |n| q.from_i64(n);
        let m1 = MPoly::linear(q, &[s(1), s(0)]);
        let m2 = MPoly::linear(q, &[s(0), s(1)]);
        let z = MPoly::zero(q, 2);
        // [[m1, m2], [m2, 0]] has determinant -m2^2
        let d = MPoly::det(q, 2, &[vec![m1.clone(), m2.clone()], vec![m2.clone(), z]]);
        assert_eq!(d.to_string(), "-m2^2");
        assert_eq!(d.eval(&[s(5), s(3)]), s(-9));
        assert_eq!(MPoly::det(q, 2, &[vec![m1.clone(), m2.clone()], vec![m1, m2]]), MPoly::zero(q, 2));
    }
}
