//! Singularity spectra of Brieskorn singularities, interval counting, the
//! Varchenko bound, and the degree bookkeeping used alongside it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("Brieskorn exponents must be at least 2, got {0}")]
    ExponentTooSmall(u32),
    #[error("a spectrum needs at least one exponent")]
    NoExponents,
    #[error("interval lower bound {lower} is not below upper bound {upper}")]
    EmptyInterval { lower: String, upper: String },
    #[error("cannot parse interval {0:?}; expected e.g. \"(2/5,7/5)\" or \"[0,1)\"")]
    IntervalSyntax(String),
    #[error("deduction {deduction} exceeds ambient spectral length {ambient}")]
    DeductionExceedsAmbient { ambient: u64, deduction: u64 },
    #[error("local spectral length must be positive")]
    ZeroLocalLength,
    #[error("result {0} is not positive")]
    NonPositiveResult(i64),
}

/// A multiset of rational spectral numbers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Spectrum {
    entries: BTreeMap<Rational, u64>,
    nvars: usize,
}

impl Spectrum {
    /// Number of variables of the singularity.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Total multiplicity (the Milnor number).
    pub fn size(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, alpha: &Rational) -> u64 {
        self.entries.get(alpha).copied().unwrap_or(0)
    }

    /// Spectral numbers with multiplicities, increasing.
    pub fn entries(&self) -> impl Iterator<Item = (&Rational, u64)> {
        self.entries.iter().map(|(a, &m)| (a, m))
    }

    /// Centre of symmetry `n/2 - 1`.
    pub fn centre(&self) -> Rational {
        Rational::new((self.nvars as i64).into(), 2.into()) - Rational::one()
    }

    pub fn is_symmetric(&self) -> bool {
        let two_c = self.centre() * Rational::from_integer(2.into());
        self.entries.iter().all(|(a, &m)| self.multiplicity(&(&two_c - a)) == m)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let list: Vec<(String, u64)> = self.entries.iter().map(|(a, &m)| (a.to_string(), m)).collect();
        list.serialize(s)
    }
}

/// Spectrum of `x_1^{a_1} + ... + x_n^{a_n}`: the numbers
/// `sum l_i / a_i - 1` with `1 <= l_i <= a_i - 1`, built by convolving the
/// per-variable histograms.
pub fn brieskorn_spectrum(exponents: &[u32]) -> Result<Spectrum, SpectraError> {
    if exponents.is_empty() {
        return Err(SpectraError::NoExponents);
    }
    let mut hist: BTreeMap<Rational, u64> = BTreeMap::from([(Rational::zero(), 1)]);
    for &a in exponents {
        if a < 2 {
            return Err(SpectraError::ExponentTooSmall(a));
        }
        let mut next = BTreeMap::new();
        for (s, &m) in &hist {
            for l in 1..a {
                *next.entry(s + Rational::new(l.into(), a.into())).or_insert(0) += m;
            }
        }
        hist = next;
    }
    let entries = hist.into_iter().map(|(s, m)| (s - Rational::one(), m)).collect();
    Ok(Spectrum { entries, nvars: exponents.len() })
}

/// Spectrum of an ordinary `m`-fold point in `n` variables.
pub fn ordinary_point_spectrum(m: u32, n: usize) -> Result<Spectrum, SpectraError> {
    brieskorn_spectrum(&vec![m; n])
}

/// An interval of the rational line with open or closed ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSpec {
    pub lower: Rational,
    pub upper: Rational,
    pub lower_open: bool,
    pub upper_open: bool,
}

impl IntervalSpec {
    pub fn new(lower: Rational, upper: Rational, lower_open: bool, upper_open: bool) -> Result<Self, SpectraError> {
        if lower >= upper {
            return Err(SpectraError::EmptyInterval { lower: lower.to_string(), upper: upper.to_string() });
        }
        Ok(Self { lower, upper, lower_open, upper_open })
    }

    /// Both ends open, the default convention.
    pub fn open(lower: Rational, upper: Rational) -> Result<Self, SpectraError> {
        Self::new(lower, upper, true, true)
    }

    /// Parses `(a,b)`, `[a,b]`, `(a,b]` or `[a,b)`.
    pub fn parse(text: &str) -> Result<Self, SpectraError> {
        let err = || SpectraError::IntervalSyntax(text.to_string());
        let t = text.trim();
        let lower_open = match t.chars().next() {
            Some('(') => true,
            Some('[') => false,
            _ => return Err(err()),
        };
        let upper_open = match t.chars().last() {
            Some(')') => true,
            Some(']') => false,
            _ => return Err(err()),
        };
        let (a, b) = t[1..t.len() - 1].split_once(',').ok_or_else(err)?;
        let lower = parse_rational(a.trim()).map_err(|_| err())?;
        let upper = parse_rational(b.trim()).map_err(|_| err())?;
        Self::new(lower, upper, lower_open, upper_open)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lower_open { x > &self.lower } else { x >= &self.lower };
        let below = if self.upper_open { x < &self.upper } else { x <= &self.upper };
        above && below
    }
}

impl fmt::Display for IntervalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lower_open { '(' } else { '[' },
            self.lower,
            self.upper,
            if self.upper_open { ')' } else { ']' }
        )
    }
}

/// Total multiplicity of the spectral numbers inside the interval.
pub fn spectral_length(s: &Spectrum, interval: &IntervalSpec) -> u64 {
    s.entries().filter(|(a, _)| interval.contains(a)).map(|(_, m)| m).sum()
}

/// The semicontinuity bound: at most `floor((ambient - deduction) / local)`
/// singularities of local spectral length `local` fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub ambient_length: u64,
    pub deduction: u64,
    pub local_length: u64,
    pub max_count: u64,
}

pub fn varchenko_max_count(ambient_length: u64, deduction: u64, local_length: u64) -> Result<BoundResult, SpectraError> {
    if local_length == 0 {
        return Err(SpectraError::ZeroLocalLength);
    }
    if deduction > ambient_length {
        return Err(SpectraError::DeductionExceedsAmbient { ambient: ambient_length, deduction });
    }
    Ok(BoundResult {
        ambient_length,
        deduction,
        local_length,
        max_count: (ambient_length - deduction) / local_length,
    })
}

/// Degree of the image of projection from a point of multiplicity `mult`.
pub fn projection_degree(degree: u64, mult: u64) -> Result<u64, SpectraError> {
    if degree <= mult {
        return Err(SpectraError::NonPositiveResult(degree as i64 - mult as i64));
    }
    Ok(degree - mult)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PolarCheck {
    /// Intersection multiplicity forced by the points.
    pub product: u64,
    /// Bezout number of the intersection.
    pub expected: u64,
    pub exceeds: bool,
}

/// `count` points, each contributing the product of `mults`, against the
/// Bezout number of hypersurfaces of the given degrees.
pub fn polar_intersection_check(count: u64, mults: &[u64], degrees: &[u64]) -> PolarCheck {
    let product = count * mults.iter().product::<u64>();
    let expected = degrees.iter().product::<u64>();
    PolarCheck { product, expected, exceeds: product > expected }
}

/// Degree of the intersection of the discriminant with the base.
pub fn branch_surface_degree(disc_degree: u64, base_degree: u64) -> u64 {
    disc_degree * base_degree
}
