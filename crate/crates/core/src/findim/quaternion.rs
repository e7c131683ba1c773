//! Splitting of 4-dimensional central simple algebras.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{center, is_zero_vec, vadd, vscale, SCAlgebra};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

const TRIAL_LIMIT: u128 = 2_000_000;

/// Whether a 4-dimensional central simple algebra is `M_2` of its base
/// field. The algebra is written as a quaternion algebra `(a, b)`; a zero
/// divisor or a square among `a`, `b` settles it directly, otherwise the
/// local symbols of `(a, b)` decide over `Q`, and over `Q(sqrt(d))` when `a`
/// and `b` are rational. `None` when no rule applies or an integer is too
/// large to factor by trial division.
pub fn quaternion_split(r: &SCAlgebra) -> Option<bool> {
    let f = r.field();
    if r.dim() != 4 || center(r).len() != 1 {
        return None;
    }
    if f.is_finite() {
        // finite division rings are commutative
        return Some(true);
    }
    let tr: Vec<Scalar> = (0..4).map(|k| r.left_matrix(&r.basis_vec(k)).trace()).collect();
    let pure = Matrix::from_rows(f, 4, vec![tr]).nullspace();
    let unit = r.unit();
    let pivot = unit.iter().position(|u| !u.is_zero())?;
    let square = |v: &[Scalar]| -> Option<Scalar> {
        let sq = r.mul(v, v);
        let c = sq[pivot].try_div(&unit[pivot]).ok()?;
        (vscale(unit, &c) == sq).then_some(c)
    };

    let i = pure.first()?;
    let a = square(i)?;
    if a.is_zero() {
        return Some(true);
    }
    let rows: Vec<Vec<Scalar>> = (0..4)
        .map(|m| pure.iter().map(|p| vadd(&r.mul(i, p), &r.mul(p, i))[m].clone()).collect())
        .collect();
    let anti = Matrix::from_rows(f, pure.len(), rows).nullspace();
    let t = anti.first()?;
    let j = t.iter().zip(&pure).fold(r.zero_vec(), |acc, (c, p)| vadd(&acc, &vscale(p, c)));
    if is_zero_vec(&j) {
        return None;
    }
    let b = square(&j)?;
    if b.is_zero() || a.sqrt().is_some() || b.sqrt().is_some() {
        return Some(true);
    }
    let ramified = ramified_places(&a.to_rational()?, &b.to_rational()?)?;
    match f {
        Field::Rationals => Some(ramified.is_empty()),
        Field::Quadratic(d) => Some(ramified.iter().all(|&p| not_split(d, p))),
        Field::Prime(_) => Some(true),
    }
}

/// Places of `Q` where `(a, b)` ramifies; `0` stands for the real place.
fn ramified_places(a: &BigRational, b: &BigRational) -> Option<Vec<u128>> {
    let (sa, pa) = squarefree(a)?;
    let (sb, pb) = squarefree(b)?;
    let mut primes: Vec<u128> = pa.iter().chain(&pb).copied().filter(|&p| p != 2).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    if sa < 0 && sb < 0 {
        out.push(0);
    }
    for p in primes {
        let (alpha, beta) = (pa.contains(&p), pb.contains(&p));
        let u = if alpha { sa / p as i128 } else { sa };
        let v = if beta { sb / p as i128 } else { sb };
        let mut s = 1;
        if alpha && beta && p % 4 == 3 {
            s = -s;
        }
        if beta {
            s *= legendre(u, p);
        }
        if alpha {
            s *= legendre(v, p);
        }
        if s < 0 {
            out.push(p);
        }
    }
    // product formula
    if out.len() % 2 == 1 {
        out.push(2);
    }
    Some(out)
}

/// Whether the place stays a field in `Q(sqrt(d))`, `d` squarefree.
fn not_split(d: i64, place: u128) -> bool {
    match place {
        0 => d < 0,
        2 => d.rem_euclid(8) != 1,
        p => {
            let d = d as i128;
            d % p as i128 == 0 || legendre(d, p) < 0
        }
    }
}

/// Squarefree integer in the square class of `q`, with its prime factors.
fn squarefree(q: &BigRational) -> Option<(i128, Vec<u128>)> {
    let n: BigInt = q.numer() * q.denom();
    if n.is_zero() {
        return None;
    }
    let mut m = n.abs().to_u128()?;
    let mut core: u128 = 1;
    let mut primes = Vec::new();
    let mut p: u128 = 2;
    while p * p <= m {
        if p > TRIAL_LIMIT {
            return None;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            core *= p;
            primes.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        core *= m;
        primes.push(m);
    }
    let core = i128::try_from(core).ok()?;
    Some((if n.is_negative() { -core } else { core }, primes))
}

fn legendre(u: i128, p: u128) -> i32 {
    let r = u.rem_euclid(p as i128) as u128;
    match pow_mod(r, (p - 1) / 2, p) {
        1 => 1,
        0 => 0,
        _ => -1,
    }
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    match a.checked_mul(b) {
        Some(x) => x % m,
        None => {
            let (a, b, m) = (BigInt::from(a), BigInt::from(b), BigInt::from(m));
            ((a * b) % m).to_u128().expect("residue fits")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PresentedAlgebra;
    use crate::freealg::Alphabet;

    fn quat(field: Field, a: i64, b: i64) -> SCAlgebra {
        let rels = [format!("x^2 - {a}"), format!("y^2 - {b}"), "x*y + y*x".to_string()];
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        let p = PresentedAlgebra::from_strs(&Alphabet::uniform(&["x", "y"]), field, &rels, 8).unwrap();
        SCAlgebra::from_quotient(&p).unwrap()
    }

    #[test]
    fn rational_quaternions() {
        let q = Field::Rationals;
        assert_eq!(quaternion_split(&quat(q, -1, -1)), Some(false));
        assert_eq!(quaternion_split(&quat(q, 1, -1)), Some(true));
        assert_eq!(quaternion_split(&quat(q, 2, 5)), Some(false));
        assert_eq!(quaternion_split(&quat(q, 2, 7)), Some(true));
        assert_eq!(quaternion_split(&quat(q, -1, 3)), Some(false));
        assert_eq!(quaternion_split(&quat(q, 3, 5)), Some(false));
        assert_eq!(quaternion_split(&quat(q, 5, 11)), Some(true));
        assert_eq!(quaternion_split(&SCAlgebra::matrix_algebra(q, 2).unwrap()), Some(true));
    }

    #[test]
    fn base_change_to_quadratic_fields() {
        // (-1, -1) ramifies at 2 and the real place; 2 splits in Q(sqrt(-7))
        assert_eq!(quaternion_split(&quat(Field::Quadratic(-7), -1, -1)), Some(false));
        assert_eq!(quaternion_split(&quat(Field::Quadratic(-3), -1, -1)), Some(true));
        assert_eq!(quaternion_split(&quat(Field::Quadratic(2), -1, -1)), Some(false));
        assert_eq!(quaternion_split(&quat(Field::Quadratic(-1), -1, -1)), Some(true));
        assert_eq!(quaternion_split(&quat(Field::Prime(7), -1, -1)), Some(true));
    }

    #[test]
    fn invariant_under_basis_change() {
        let q = Field::Rationals;
        let h = quat(q, -1, -1);
        let p = Matrix::from_i64(q, &[&[1, 2, 0, -1], &[0, 1, 3, 1], &[2, 0, 1, 0], &[1, 1, 1, 2]]);
        assert_eq!(quaternion_split(&h.change_basis(&p).unwrap()), Some(false));
    }
}
