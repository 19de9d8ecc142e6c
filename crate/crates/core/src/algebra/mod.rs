//! Exact coefficient arithmetic.
//!
//! Coefficient fields are modelled as *descriptors*: a [`Field`] value knows
//! how to combine its elements, and elements are plain data. The rationals
//! carry no state, finite fields share their tables behind an `Arc`, so
//! descriptors are cheap to clone and safe to hand to worker threads.

mod finite;
mod rational;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use finite::{find_irreducible, is_prime, FiniteField, PrimeFieldElement};
pub use rational::{parse_rational, reduce_mod_p, Rational, RationalField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("prime {p} divides the denominator of {value}")]
    BadReductionPrime { p: u64, value: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} is not supported (use 1, 2 or 3)")]
    UnsupportedDegree(u32),
    #[error("field of order {p}^{k} does not fit the 32-bit element encoding")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// A commutative field, given as a descriptor that performs the arithmetic.
/// The `from_*` constructors take the descriptor because a finite field's
/// elements only make sense relative to it.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem, AlgebraError>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// The `index`-th element of a finite field in canonical order.
    fn element(&self, index: u64) -> Self::Elem;
    /// Canonical text form of an element.
    fn render(&self, a: &Self::Elem) -> String;
    /// Exact rational value, available only for characteristic-zero fields.
    fn to_rational(&self, _a: &Self::Elem) -> Option<Rational> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        let inv = self.inv(b).ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }
}
