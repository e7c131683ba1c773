//! Exact coefficient fields: the rationals, one quadratic extension `Q(sqrt(d))`
//! at a time, and prime fields `F(p)`.
//!
//! Every [`Scalar`] carries its [`Field`] so that mixing fields is caught at the
//! point of use. The operator impls (`+`, `-`, `*`) panic on a field mismatch;
//! the `try_*` methods report it as a [`FieldError`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{self, ExprTarget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(Field, Field),
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("syntax error in scalar `{text}`: {reason}")]
    Syntax { text: String, reason: String },
    #[error("`sqrt({0})` is not available in {1}")]
    SqrtUnavailable(i64, Field),
    #[error("needs field extension: {0}")]
    NeedsExtension(String),
}

/// Descriptor of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    /// `Q(sqrt(d))` with `d` squarefree, `d != 0, 1`.
    Quadratic(i64),
    /// `F(p)` with `p >= 5` prime.
    Prime(u64),
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k: u64 = 2;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k: u64 = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl Field {
    pub fn quadratic(d: i64) -> Result<Field, FieldError> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(FieldError::InvalidDescriptor(format!(
                "Q(sqrt({d})): d must be squarefree and not 0 or 1"
            )));
        }
        Ok(Field::Quadratic(d))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p < 5 || !is_prime(p) || p > u32::MAX as u64 {
            return Err(FieldError::InvalidDescriptor(format!(
                "F({p}): p must be a prime with 5 <= p < 2^32"
            )));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `Q`, `Q(sqrt(d))` or `F(p)`.
    pub fn parse(text: &str) -> Result<Field, FieldError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || FieldError::InvalidDescriptor(text.to_string());
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(inner) = t.strip_prefix("Q(sqrt(").and_then(|r| r.strip_suffix("))")) {
            let d: i64 = inner.parse().map_err(|_| bad())?;
            return Field::quadratic(d);
        }
        if let Some(inner) = t.strip_prefix("F(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner.parse().map_err(|_| bad())?;
            return Field::prime(p);
        }
        Err(bad())
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every field")
    }

    /// Image of a rational number; fails in `F(p)` when `p` divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, FieldError> {
        let value = match self {
            Field::Rationals => Value::Rational(q.clone()),
            Field::Quadratic(_) => Value::Quadratic(q.clone(), BigRational::zero()),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let num = q.numer().mod_floor(&pm).to_u64().unwrap();
                let den = q.denom().mod_floor(&pm).to_u64().unwrap();
                if den == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                Value::Residue(mul_mod(num, pow_mod(den, p - 2, p), p))
            }
        };
        Ok(Scalar { field: self, value })
    }

    pub fn from_ratio(self, n: i64, d: i64) -> Result<Scalar, FieldError> {
        if d == 0 {
            return Err(FieldError::DivisionByZero);
        }
        self.from_rational(&BigRational::new(n.into(), d.into()))
    }

    /// The element `sqrt(d)` of a quadratic field.
    pub fn sqrt_generator(self) -> Option<Scalar> {
        match self {
            Field::Quadratic(_) => Some(Scalar {
                field: self,
                value: Value::Quadratic(BigRational::zero(), BigRational::one()),
            }),
            _ => None,
        }
    }

    /// All elements of a prime field, in residue order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some(
                (0..p)
                    .map(|r| Scalar { field: self, value: Value::Residue(r) })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// `sqrt(n)` for an integer `n`, if it exists in this field.
    pub fn sqrt_of_integer(self, n: i64) -> Option<Scalar> {
        self.from_i64(n).sqrt()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
            Field::Prime(p) => write!(f, "F({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Rational(BigRational),
    /// `a + b sqrt(d)`
    Quadratic(BigRational, BigRational),
    Residue(u64),
}

/// An element of a [`Field`] in canonical form; equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    value: Value,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

impl Scalar {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Quadratic(a, b) => a.is_zero() && b.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The rational value, when the element lies in the prime subfield `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q.clone()),
            Value::Quadratic(a, b) if b.is_zero() => Some(a.clone()),
            _ => None,
        }
    }

    /// Components `(a, b)` of `a + b sqrt(d)`; `b = 0` outside quadratic fields.
    pub fn quadratic_parts(&self) -> Option<(BigRational, BigRational)> {
        match &self.value {
            Value::Rational(q) => Some((q.clone(), BigRational::zero())),
            Value::Quadratic(a, b) => Some((a.clone(), b.clone())),
            Value::Residue(_) => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(r) => Some(r),
            _ => None,
        }
    }

    pub fn from_quadratic_parts(field: Field, a: BigRational, b: BigRational) -> Result<Scalar, FieldError> {
        match field {
            Field::Quadratic(_) => Ok(Scalar { field, value: Value::Quadratic(a, b) }),
            _ if b.is_zero() => field.from_rational(&a),
            _ => Err(FieldError::NeedsExtension(format!("irrational value in {field}"))),
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field != other.field {
            Err(FieldError::Mismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Quadratic(a, b), Value::Quadratic(c, d)) => Value::Quadratic(a + c, b + d),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                Value::Residue((a + b) % p)
            }
            _ => unreachable!("value kind follows field"),
        };
        Ok(Scalar { field: self.field, value })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Quadratic(a, b), Value::Quadratic(c, e)) => {
                let Field::Quadratic(d) = self.field else { unreachable!() };
                let d = BigRational::from_integer(BigInt::from(d));
                Value::Quadratic(a * c + d * b * e, a * e + b * c)
            }
            (Value::Residue(a), Value::Residue(b)) => {
                Value::Residue(mul_mod(*a, *b, self.field.characteristic()))
            }
            _ => unreachable!("value kind follows field"),
        };
        Ok(Scalar { field: self.field, value })
    }

    fn neg_ref(&self) -> Scalar {
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(-a),
            Value::Quadratic(a, b) => Value::Quadratic(-a, -b),
            Value::Residue(r) => {
                let p = self.field.characteristic();
                Value::Residue((p - r) % p)
            }
        };
        Scalar { field: self.field, value }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(a.recip()),
            Value::Quadratic(a, b) => {
                let Field::Quadratic(d) = self.field else { unreachable!() };
                let d = BigRational::from_integer(BigInt::from(d));
                let norm = a * a - d * b * b;
                Value::Quadratic(a / &norm, -b / &norm)
            }
            Value::Residue(r) => {
                let p = self.field.characteristic();
                Value::Residue(pow_mod(*r, p - 2, p))
            }
        };
        Ok(Scalar { field: self.field, value })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar, FieldError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Galois conjugate `a - b sqrt(d)`; identity outside quadratic fields.
    pub fn conjugate(&self) -> Scalar {
        match &self.value {
            Value::Quadratic(a, b) => Scalar { field: self.field, value: Value::Quadratic(a.clone(), -b) },
            _ => self.clone(),
        }
    }

    /// A square root inside the active field, if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        let field = self.field;
        let cand = match &self.value {
            Value::Rational(q) => Some(Scalar { field, value: Value::Rational(rational_sqrt(q)?) }),
            Value::Residue(r) => {
                Some(Scalar { field, value: Value::Residue(tonelli_shanks(*r, field.characteristic())?) })
            }
            Value::Quadratic(x, y) => {
                let Field::Quadratic(d) = field else { unreachable!() };
                let dq = BigRational::from_integer(BigInt::from(d));
                let two = BigRational::from_integer(BigInt::from(2));
                let mut found = None;
                if y.is_zero() {
                    if let Some(a) = rational_sqrt(x) {
                        found = Some((a, BigRational::zero()));
                    } else if let Some(b) = rational_sqrt(&(x / &dq)) {
                        found = Some((BigRational::zero(), b));
                    }
                } else if let Some(s) = rational_sqrt(&(x * x - &dq * y * y)) {
                    for cand in [(x + &s) / &two, (x - &s) / &two] {
                        if let Some(a) = rational_sqrt(&cand) {
                            if !a.is_zero() {
                                let b = y / (&two * &a);
                                found = Some((a, b));
                                break;
                            }
                        }
                    }
                }
                found.map(|(a, b)| Scalar { field, value: Value::Quadratic(a, b) })
            }
        }?;
        (&cand * &cand == *self).then_some(cand)
    }

    /// Parses integers, fractions, `sqrt(d)` and arithmetic combinations of them.
    pub fn parse(text: &str, field: Field) -> Result<Scalar, FieldError> {
        expr::parse::<Scalar>(text, &field).map_err(|e| match e {
            expr::ParseError::Field(fe) => fe,
            other => FieldError::Syntax { text: text.to_string(), reason: other.to_string() },
        })
    }

    /// Whether this value needs parentheses when used as a coefficient.
    pub fn is_compound(&self) -> bool {
        matches!(&self.value, Value::Quadratic(a, b) if !a.is_zero() && !b.is_zero())
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Value::Residue(r) => write!(f, "{r}"),
            Value::Quadratic(a, b) => {
                let Field::Quadratic(d) = self.field else { unreachable!() };
                if b.is_zero() {
                    return write!(f, "{}", fmt_rational(a));
                }
                let mut s = String::new();
                if !a.is_zero() {
                    s.push_str(&fmt_rational(a));
                    s.push_str(if b.is_negative() { " - " } else { " + " });
                } else if b.is_negative() {
                    s.push('-');
                }
                let babs = b.abs();
                if !babs.numer().is_one() {
                    s.push_str(&format!("{}*", babs.numer()));
                }
                s.push_str(&format!("sqrt({d})"));
                if !babs.denom().is_one() {
                    s.push_str(&format!("/{}", babs.denom()));
                }
                write!(f, "{s}")
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl ExprTarget for Scalar {
    type Ctx = Field;

    fn constant(ctx: &Field, q: &BigRational) -> Result<Self, expr::ParseError> {
        Ok(ctx.from_rational(q)?)
    }

    fn sqrt_of(ctx: &Field, d: i64) -> Result<Self, expr::ParseError> {
        match *ctx {
            Field::Quadratic(dd) if dd == d => Ok(ctx.sqrt_generator().unwrap()),
            _ => ctx
                .sqrt_of_integer(d)
                .ok_or(expr::ParseError::Field(FieldError::SqrtUnavailable(d, *ctx))),
        }
    }

    fn letter(_ctx: &Field, name: &str) -> Result<Self, expr::ParseError> {
        Err(expr::ParseError::UnknownLetter(name.to_string()))
    }

    fn expr_add(self, other: Self) -> Result<Self, expr::ParseError> {
        Ok(self.try_add(&other)?)
    }

    fn expr_mul(self, other: Self) -> Result<Self, expr::ParseError> {
        Ok(self.try_mul(&other)?)
    }

    fn expr_neg(self) -> Self {
        self.neg_ref()
    }

    fn as_scalar(&self) -> Option<Scalar> {
        Some(self.clone())
    }

    fn expr_scale(self, s: &Scalar) -> Result<Self, expr::ParseError> {
        Ok(self.try_mul(s)?)
    }
}
