use std::fmt;
use std::sync::Arc;

use super::rational::{mod_inverse, reduce_raw};
use super::{AlgebraError, Field, Rational};

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;
/// Fields up to this order also get a full addition table.
const ADD_TABLE_LIMIT: u64 = 1 << 10;

/// Trial-division primality test; the primes used here stay below 10^4.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First monic polynomial of degree `k` over F_p without a root in F_p, in
/// the order of its low coefficients read as base-`p` digits.
///
/// Coefficients are returned from the constant term upwards, leading 1
/// included. For `k <= 3` having no root is the same as being irreducible.
pub fn find_irreducible(p: u64, k: u32) -> Result<Vec<u64>, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    if !(2..=3).contains(&k) {
        return Err(AlgebraError::UnsupportedDegree(k));
    }
    let count = p.pow(k);
    for index in 0..count {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut rest = index;
        for _ in 0..k {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        if (0..p).all(|x| eval_mod(&coeffs, x, p) != 0) {
            return Ok(coeffs);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// A residue modulo a prime, as produced by [`super::reduce_mod_p`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    pub residue: u64,
    pub modulus: u64,
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

#[derive(Debug)]
struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, constant term first; empty for prime fields.
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u32>,
}

/// The finite field F_q with q = p^k, k in {1, 2, 3}.
///
/// Elements are `u32` values whose base-`p` digits are the coefficients of
/// the element as a polynomial in the class `a` of the modulus variable,
/// constant coefficient first. For prime fields this is just the residue.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}", self.inner.p, self.inner.k)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.k == other.inner.k
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        Self::new(p, 1)
    }

    pub fn new(p: u64, k: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if !(1..=3).contains(&k) {
            return Err(AlgebraError::UnsupportedDegree(k));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(AlgebraError::FieldTooLarge { p, k })?;
        let modulus = if k == 1 { Vec::new() } else { find_irreducible(p, k)? };
        let mut inner = Inner { p, k, q, modulus, exp: Vec::new(), log: Vec::new(), add_table: Vec::new() };
        if k > 1 && q <= TABLE_LIMIT {
            build_tables(&mut inner);
        }
        Ok(Self { inner: Arc::new(inner) })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn size(&self) -> u64 {
        self.inner.q
    }

    /// The modulus polynomial (constant term first), empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Coefficient vector of an element, constant term first.
    pub fn coefficients(&self, a: u32) -> Vec<u64> {
        digits(a as u64, self.inner.p, self.inner.k)
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> u32 {
        let p = self.inner.p;
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c % p) as u32
    }

    /// Embeds a prime-field residue.
    pub fn from_residue(&self, r: u64) -> u32 {
        (r % self.inner.p) as u32
    }

    /// Reduces a rational into this field (through the prime subfield).
    pub fn reduce(&self, q: &Rational) -> Result<u32, AlgebraError> {
        Ok(reduce_raw(q, self.inner.p)? as u32)
    }

    /// A root of x^2 + x + 1, when the field contains one.
    pub fn primitive_cube_root_of_unity(&self) -> Option<u32> {
        let one = self.one();
        (0..self.inner.q as u32).find(|&w| {
            w != one && self.is_zero(&self.add(&self.add(&self.mul(&w, &w), &w), &one))
        })
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        let (p, k) = (inner.p, inner.k as usize);
        let da = digits(a as u64, p, inner.k);
        let db = digits(b as u64, p, inner.k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c != 0 {
                for (i, m) in inner.modulus[..k].iter().enumerate() {
                    let j = deg - k + i;
                    prod[j] = (prod[j] + (p - c) * m) % p;
                }
                prod[deg] = 0;
            }
        }
        self.from_coefficients(&prod[..k])
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.inner.p, self.inner.k);
        let mut out = 0u64;
        let mut scale = 1u64;
        let (mut a, mut b) = (a as u64, b as u64);
        for _ in 0..k {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out as u32
    }
}

fn digits(mut a: u64, p: u64, k: u32) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn build_tables(inner: &mut Inner) {
    let q = inner.q;
    let field = FiniteField { inner: Arc::new(Inner { modulus: inner.modulus.clone(), exp: Vec::new(), log: Vec::new(), add_table: Vec::new(), ..*inner }) };
    let factors = prime_factors(q - 1);
    let generator = (2..q as u32)
        .find(|&g| {
            factors.iter().all(|r| {
                let mut acc = 1u32;
                let mut base = g;
                let mut e = (q - 1) / r;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = field.slow_mul(acc, base);
                    }
                    base = field.slow_mul(base, base);
                    e >>= 1;
                }
                acc != 1
            })
        })
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; (q - 1) as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = x;
        log[x as usize] = i as u32;
        x = field.slow_mul(x, generator);
    }
    inner.exp = exp;
    inner.log = log;
    if q <= ADD_TABLE_LIMIT {
        let mut table = vec![0u32; (q * q) as usize];
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                table[(a as u64 * q + b as u64) as usize] = field.slow_add(a, b);
            }
        }
        inner.add_table = table;
    }
}

impl Field for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.inner;
        if inner.k == 1 {
            let s = *a as u64 + *b as u64;
            return if s >= inner.p { (s - inner.p) as u32 } else { s as u32 };
        }
        if !inner.add_table.is_empty() {
            return inner.add_table[(*a as u64 * inner.q + *b as u64) as usize];
        }
        self.slow_add(*a, *b)
    }

    fn neg(&self, a: &u32) -> u32 {
        let inner = &*self.inner;
        if inner.k == 1 {
            return if *a == 0 { 0 } else { (inner.p - *a as u64) as u32 };
        }
        let d: Vec<u64> = digits(*a as u64, inner.p, inner.k)
            .into_iter()
            .map(|c| (inner.p - c) % inner.p)
            .collect();
        self.from_coefficients(&d)
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.inner;
        if inner.k == 1 {
            return ((*a as u64 * *b as u64) % inner.p) as u32;
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        if !inner.exp.is_empty() {
            let n = inner.q - 1;
            let s = (inner.log[*a as usize] as u64 + inner.log[*b as usize] as u64) % n;
            return inner.exp[s as usize];
        }
        self.slow_mul(*a, *b)
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let inner = &*self.inner;
        if inner.k == 1 {
            return Some(mod_inverse(*a as u64, inner.p) as u32);
        }
        if !inner.exp.is_empty() {
            let n = inner.q - 1;
            let l = inner.log[*a as usize] as u64;
            return Some(inner.exp[((n - l) % n) as usize]);
        }
        Some(self.pow(a, inner.q - 2))
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    fn from_rational(&self, q: &Rational) -> Result<u32, AlgebraError> {
        self.reduce(q)
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    fn element(&self, index: u64) -> u32 {
        (index % self.inner.q) as u32
    }

    fn render(&self, a: &u32) -> String {
        if self.inner.k == 1 {
            return a.to_string();
        }
        let d = self.coefficients(*a);
        let mut parts = Vec::new();
        for (i, c) in d.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let coeff = if *c == 1 && i > 0 { String::new() } else { c.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            let sep = if !coeff.is_empty() && !var.is_empty() { "*" } else { "" };
            parts.push(format!("{coeff}{sep}{var}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_examples() {
        // exhaustive root scans, independent of find_irreducible's loop
        let m = find_irreducible(5, 2).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m[2], 1);
        for x in 0..5 {
            assert_ne!((m[0] + m[1] * x + x * x) % 5, 0);
        }
        let m = find_irreducible(7, 3).unwrap();
        for x in 0..7u64 {
            assert_ne!((m[0] + m[1] * x + m[2] * x * x + x * x * x) % 7, 0);
        }
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert!(find_irreducible(4, 2).is_err());
        assert!(find_irreducible(5, 4).is_err());
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for (p, k) in [(2, 2), (3, 3), (5, 2), (7, 2), (31, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.size() as u32;
            for a in (0..q).step_by(3) {
                for b in (0..q).step_by(7) {
                    assert_eq!(f.mul(&a, &b), f.slow_mul(a, b));
                    assert_eq!(f.add(&a, &b), f.slow_add(a, b));
                }
                if a != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn cube_roots_of_unity() {
        assert!(FiniteField::prime(5).unwrap().primitive_cube_root_of_unity().is_none());
        assert!(FiniteField::new(5, 2).unwrap().primitive_cube_root_of_unity().is_some());
        assert_eq!(FiniteField::prime(7).unwrap().primitive_cube_root_of_unity(), Some(2));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(FiniteField::prime(9).is_err());
    }
}
