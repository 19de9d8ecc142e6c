use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{AlgebraError, Field, PrimeFieldElement};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Parses `"a/b"` or an integer literal, with an optional leading sign.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let err = || AlgebraError::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Reduces a rational modulo the prime `p`.
pub fn reduce_mod_p(q: &Rational, p: u64) -> Result<PrimeFieldElement, AlgebraError> {
    if !super::is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    let residue = reduce_raw(q, p)?;
    Ok(PrimeFieldElement { residue, modulus: p })
}

pub(crate) fn reduce_raw(q: &Rational, p: u64) -> Result<u64, AlgebraError> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64().unwrap_or(0);
    if den == 0 {
        return Err(AlgebraError::BadReductionPrime { p, value: render_rational(q) });
    }
    let num = q.numer().mod_floor(&pb).to_u64().unwrap_or(0);
    let inv = mod_inverse(den, p);
    Ok(((num as u128 * inv as u128) % p as u128) as u64)
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

pub(crate) fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational, AlgebraError> {
        Ok(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element(&self, index: u64) -> Rational {
        // Not a field enumeration; used only for sampling small values.
        let i = index as i64;
        let v = if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 };
        self.from_i64(v)
    }
    fn render(&self, a: &Rational) -> String {
        render_rational(a)
    }
    fn to_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_p(&q("1/2"), 7).unwrap().residue, 4);
        assert_eq!(reduce_mod_p(&q("-1"), 13).unwrap().residue, 12);
        assert!(matches!(
            reduce_mod_p(&q("1/3"), 3),
            Err(AlgebraError::BadReductionPrime { p: 3, .. })
        ));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(q("6/-4"), Rational::new(BigInt::from(-3), BigInt::from(2)));
        assert_eq!(q(" -7 "), Rational::from_integer(BigInt::from(-7)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(render_rational(&q("10/4")), "5/2");
    }
}
