//! Univariate polynomials over a [`Field`], with exact root finding and the
//! small-degree factorization needed by the finite-dimensional algebra code.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Field, Scalar};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> UPoly {
        UPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> UPoly {
        UPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> UPoly {
        UPoly::new(c.field(), vec![c])
    }

    pub fn one(field: Field) -> UPoly {
        UPoly::constant(field.one())
    }

    /// The polynomial `t`.
    pub fn t(field: Field) -> UPoly {
        UPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `t - r`.
    pub fn linear(r: &Scalar) -> UPoly {
        UPoly::new(r.field(), vec![-r, r.field().one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(self.field, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::new(self.field, out)
    }

    pub fn scale(&self, s: &Scalar) -> UPoly {
        UPoly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(self.field), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let linv = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &linv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * dc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Scalar::is_zero) && r.len() > dd {
                r.pop();
            }
        }
        (UPoly::new(self.field, q), UPoly::new(self.field, r))
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        other.divrem(self).1.is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(f), UPoly::zero(f));
        let (mut t0, mut t1) = (UPoly::zero(f), UPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            Some(l) => {
                let inv = l.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.from_i64(i as i64)).collect(),
        )
    }

    /// Coefficientwise Galois conjugate (identity outside quadratic fields).
    pub fn conjugate(&self) -> UPoly {
        UPoly::new(self.field, self.coeffs.iter().map(Scalar::conjugate).collect())
    }

    /// Distinct roots in the active field, in a deterministic order.
    pub fn roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out: Vec<Scalar> = match self.field {
            Field::Prime(_) => {
                self.field.elements().unwrap().into_iter().filter(|x| self.eval(x).is_zero()).collect()
            }
            Field::Rationals => rational_roots(&to_rational_coeffs(self))
                .into_iter()
                .map(|q| self.field.from_rational(&q).unwrap())
                .collect(),
            Field::Quadratic(_) => quadratic_field_roots(self),
        };
        out.dedup();
        out
    }

    /// Product of the distinct monic irreducible factors. Over `F(p)` a
    /// vanishing derivative leaves the polynomial unchanged.
    pub fn squarefree_part(&self) -> UPoly {
        let m = self.monic();
        let d = m.derivative();
        if d.is_zero() {
            return m;
        }
        m.divrem(&m.gcd(&d)).0.monic()
    }

    /// Monic irreducible factors with multiplicity, as far as the active field
    /// allows. Factors of degree >= 4 without roots are only split into
    /// quadratics over `Q` and `F(p)`; over `Q(sqrt(d))` they are returned as is.
    pub fn factor(&self) -> Vec<(UPoly, usize)> {
        let mut rest = self.monic();
        let mut out: Vec<(UPoly, usize)> = Vec::new();
        if rest.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut core = rest.squarefree_part();
        let mut pieces = Vec::new();
        for r in core.roots() {
            let lin = UPoly::linear(&r);
            core = core.divrem(&lin).0;
            pieces.push(lin);
        }
        let mut pending = vec![core];
        while let Some(p) = pending.pop() {
            let Some(d) = p.degree() else { continue };
            if d == 0 {
                continue;
            }
            if d >= 4 {
                if let Some(q) = quadratic_factor(&p) {
                    pending.push(p.divrem(&q).0);
                    pending.push(q);
                    continue;
                }
            }
            pieces.push(p.monic());
        }
        for q in pieces {
            let mut m = 0;
            while q.divides(&rest) {
                rest = rest.divrem(&q).0;
                m += 1;
            }
            if m > 0 {
                out.push((q, m));
            }
        }
        // only reachable over F(p) when the derivative vanished
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest, 1));
        }
        out
    }
}

fn to_rational_coeffs(p: &UPoly) -> Vec<BigRational> {
    p.coeffs.iter().map(|c| c.to_rational().expect("rational coefficients")).collect()
}

/// Primitive integer polynomial proportional to `coeffs` (lowest degree first).
fn integer_coeffs(coeffs: &[BigRational]) -> Vec<BigInt> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors of `n`, or `None` when `n` is too large to factor by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(BigInt::from(k));
            if k * k != n {
                large.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn eval_rational(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Rational roots by the rational root theorem.
fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut ints = integer_coeffs(coeffs);
    let mut out = Vec::new();
    if ints.iter().all(Zero::is_zero) {
        return out;
    }
    if ints[0].is_zero() {
        out.push(BigRational::zero());
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return out;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    let rc: Vec<BigRational> = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut cands: Vec<BigRational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let r = BigRational::new(p * sign, q.clone());
                if !cands.contains(&r) && eval_rational(&rc, &r).is_zero() {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    out.extend(cands);
    out
}

/// Roots in `Q(sqrt(d))`: every root is a root of the rational norm polynomial
/// `p * conj(p)`, whose rational linear and quadratic factors are found first.
fn quadratic_field_roots(p: &UPoly) -> Vec<Scalar> {
    let field = p.field;
    let norm = p.mul(&p.conjugate());
    let rq = UPoly::new(
        Field::Rationals,
        norm.coeffs.iter().map(|c| Field::Rationals.from_rational(&c.quadratic_parts().unwrap().0).unwrap()).collect(),
    );
    let mut cands: Vec<Scalar> = Vec::new();
    for (f, _) in rq.factor() {
        match f.degree() {
            Some(1) => cands.push(field.from_rational(&(-f.coeff(0)).to_rational().unwrap()).unwrap()),
            Some(2) => {
                let b = field.from_rational(&f.coeff(1).to_rational().unwrap()).unwrap();
                let c = field.from_rational(&f.coeff(0).to_rational().unwrap()).unwrap();
                let disc = &(&b * &b) - &(&field.from_i64(4) * &c);
                if let Some(s) = disc.sqrt() {
                    let half = field.from_ratio(1, 2).unwrap();
                    cands.push(&(&(-&b) + &s) * &half);
                    cands.push(&(&(-&b) - &s) * &half);
                }
            }
            _ => {}
        }
    }
    let mut out: Vec<Scalar> = Vec::new();
    for c in cands {
        if p.eval(&c).is_zero() && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// A monic quadratic factor of a root-free polynomial of degree >= 4.
fn quadratic_factor(p: &UPoly) -> Option<UPoly> {
    match p.field {
        Field::Prime(_) => {
            let els = p.field.elements().unwrap();
            for a in &els {
                for b in &els {
                    let q = UPoly::new(p.field, vec![b.clone(), a.clone(), p.field.one()]);
                    if q.divides(p) {
                        return Some(q);
                    }
                }
            }
            None
        }
        Field::Rationals => rational_quadratic_factor(&to_rational_coeffs(&p.monic()))
            .map(|c| UPoly::new(p.field, c.iter().map(|q| p.field.from_rational(q).unwrap()).collect())),
        Field::Quadratic(_) => None,
    }
}

/// Searches `t^2 + a t + b` dividing a monic rational polynomial with no rational roots.
fn rational_quadratic_factor(monic: &[BigRational]) -> Option<[BigRational; 3]> {
    let n = monic.len() - 1;
    // Substitute t = s / c to get a monic integer polynomial in s.
    let c = monic.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let cr = BigRational::from_integer(c.clone());
    let q: Vec<BigInt> = monic
        .iter()
        .enumerate()
        .map(|(i, x)| (x * num_traits::pow(cr.clone(), n - i)).to_integer())
        .collect();
    let qr: Vec<BigRational> = q.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let at1 = eval_rational(&qr, &BigRational::one()).to_integer();
    let bs = divisors(&q[0])?;
    let es = divisors(&at1)?;
    for b0 in &bs {
        for b in [b0.clone(), -b0.clone()] {
            for e0 in &es {
                for e in [e0.clone(), -e0.clone()] {
                    let a = &e - 1 - &b;
                    let cand = [BigRational::from_integer(b.clone()), BigRational::from_integer(a), BigRational::one()];
                    if divides_rational(&cand, &qr) {
                        return Some([&cand[0] / (&cr * &cr), &cand[1] / &cr, BigRational::one()]);
                    }
                }
            }
        }
    }
    None
}

fn divides_rational(d: &[BigRational; 3], p: &[BigRational]) -> bool {
    let mut r = p.to_vec();
    while r.len() >= 3 {
        let k = r.len() - 3;
        let c = r[r.len() - 1].clone();
        for i in 0..3 {
            r[k + i] = &r[k + i] - &c * &d[i];
        }
        r.pop();
    }
    r.iter().all(Zero::is_zero)
}

/// Formats with variable `var`, lowest degree first (`1 - t - t^2`).
pub fn format_poly(coeffs: &[Scalar], var: &str) -> String {
    let mut s = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let neg = c.to_string().starts_with('-');
        let mag = if neg { -c } else { c.clone() };
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono
        } else if mag.is_compound() {
            format!("({mag})*{mono}")
        } else {
            format!("{mag}*{mono}")
        };
        if s.is_empty() {
            s = if neg { format!("-{body}") } else { body };
        } else {
            s.push_str(if neg { " - " } else { " + " });
            s.push_str(&body);
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(&self.coeffs, "t"))
    }
}
