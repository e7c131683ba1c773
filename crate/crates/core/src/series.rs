//! Rational functions in `t` over `Q`, used for exact Hilbert series.

use std::fmt;

use num_rational::BigRational;

use crate::expr::{self, ExprTarget, ParseError};
use crate::field::{Field, Scalar};
use crate::upoly::UPoly;

const Q: Field = Field::Rationals;

/// `num / den` with `gcd(num, den) = 1` and `den(0) = 1` whenever `den(0) != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        if num.is_zero() {
            return RatFunc { num, den: UPoly::one(Q) };
        }
        let c0 = den.coeffs().iter().find(|c| !c.is_zero()).unwrap().inv().unwrap();
        num = num.scale(&c0);
        den = den.scale(&c0);
        RatFunc { num, den }
    }

    pub fn poly(p: UPoly) -> RatFunc {
        RatFunc::new(p, UPoly::one(Q))
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(UPoly::from_i64(Q, num), UPoly::from_i64(Q, den))
    }

    pub fn constant(c: i64) -> RatFunc {
        RatFunc::from_i64(&[c], &[1])
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &RatFunc) -> Option<RatFunc> {
        if o.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        (0..e).fold(RatFunc::constant(1), |acc, _| RatFunc::mul(&acc, self))
    }

    /// `f(-t)`.
    pub fn at_neg_t(&self) -> RatFunc {
        let flip = |p: &UPoly| {
            UPoly::new(
                Q,
                p.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect(),
            )
        };
        RatFunc::new(flip(&self.num), flip(&self.den))
    }

    /// Power series coefficients `c_0 .. c_n`; requires `den(0) != 0`.
    pub fn expand(&self, n: usize) -> Vec<BigRational> {
        let d0 = self.den.coeff(0);
        assert!(!d0.is_zero(), "series expansion needs den(0) != 0");
        let inv = d0.inv().unwrap();
        let mut out: Vec<Scalar> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.coeffs().len().saturating_sub(1)) {
                acc = &acc - &(&self.den.coeff(j) * &out[k - j]);
            }
            out.push(&acc * &inv);
        }
        out.into_iter().map(|s| s.to_rational().unwrap()).collect()
    }

    /// Expansion coefficients as integers, if they all are.
    pub fn expand_integers(&self, n: usize) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.expand(n)
            .into_iter()
            .map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn parse(text: &str) -> Result<RatFunc, ParseError> {
        expr::parse::<RatFunc>(text, &())
    }
}

impl ExprTarget for RatFunc {
    type Ctx = ();

    fn constant(_: &(), q: &BigRational) -> Result<Self, ParseError> {
        Ok(RatFunc::poly(UPoly::constant(Q.from_rational(q)?)))
    }

    fn sqrt_of(_: &(), d: i64) -> Result<Self, ParseError> {
        let s = Q.sqrt_of_integer(d).ok_or(crate::field::FieldError::SqrtUnavailable(d, Q))?;
        Ok(RatFunc::poly(UPoly::constant(s)))
    }

    fn letter(_: &(), name: &str) -> Result<Self, ParseError> {
        if name == "t" {
            Ok(RatFunc::poly(UPoly::t(Q)))
        } else {
            Err(ParseError::UnknownLetter(name.to_string()))
        }
    }

    fn expr_add(self, other: Self) -> Result<Self, ParseError> {
        Ok(RatFunc::add(&self, &other))
    }

    fn expr_mul(self, other: Self) -> Result<Self, ParseError> {
        Ok(RatFunc::mul(&self, &other))
    }

    fn expr_neg(self) -> Self {
        RatFunc::neg(&self)
    }

    fn as_scalar(&self) -> Option<Scalar> {
        (self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0))
            .then(|| &self.num.coeff(0) * &self.den.coeff(0).inv().unwrap())
    }

    fn expr_scale(self, s: &Scalar) -> Result<Self, ParseError> {
        Ok(RatFunc::new(self.num.scale(s), self.den))
    }

    fn expr_div(self, other: Self) -> Result<Self, ParseError> {
        RatFunc::div(&self, &other).ok_or(ParseError::Field(crate::field::FieldError::DivisionByZero))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &UPoly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_printed_forms() {
        let fib = RatFunc::parse("(1+t)/(1-t-t^2)").unwrap();
        assert_eq!(fib.expand_integers(6).unwrap(), vec![1, 2, 3, 5, 8, 13, 21]);
        let a = RatFunc::parse("(1-t^2)^2(1-t)/(1-t)^3").unwrap();
        let b = RatFunc::parse("(1+t)^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(RatFunc::parse("1/(1-t)^2").unwrap().expand_integers(3).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn reciprocal_identity() {
        let h = RatFunc::parse("1/(1-t)^2").unwrap();
        let dual = RatFunc::constant(1).div(&h.at_neg_t()).unwrap();
        assert_eq!(dual, RatFunc::parse("(1+t)^2").unwrap());
        assert_eq!(dual.to_string(), "1 + 2*t + t^2");
        assert_eq!(RatFunc::parse("(1+t)/(1-t-t^2)").unwrap().to_string(), "(1 + t)/(1 - t - t^2)");
    }
}
