//! Sparse multivariate polynomials over a pluggable coefficient field, aware
//! of weighted gradings.

mod linear;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, Field, RationalField};

pub use linear::{
    decompose_in_linear_ideal, matrix_rank, nullspace, reduced_row_echelon, row_echelon, LinearReduction, RowEchelon,
};
pub use parse::parse_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("substitution matrix is singular")]
    SingularMatrix,
    #[error("linear change mixes variables of different weights ({0} and {1})")]
    WeightMixing(String, String),
    #[error("degree in {var} is {degree}, expected 2")]
    WrongDegreeInVariable { var: String, degree: u32 },
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("image of {var} has weighted degree {found:?}, expected {expected}")]
    ImageDegreeMismatch { var: String, expected: u32, found: Option<u32> },
    #[error("expected {expected} images, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Ordered variable names together with their weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VariableContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, weights: Vec<u32>) -> Result<Arc<Self>, String> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != weights.len() {
            return Err(format!("{} names but {} weights", names.len(), weights.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') || n.chars().next().unwrap().is_ascii_digit() {
                return Err(format!("invalid variable name {n:?}"));
            }
            if names[..i].contains(n) {
                return Err(format!("duplicate variable name {n:?}"));
            }
        }
        if weights.contains(&0) {
            return Err("weights must be positive".into());
        }
        Ok(Arc::new(Self { names, weights }))
    }

    /// Straight projective coordinates: every weight 1.
    pub fn uniform<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        Self::new(names, vec![1; n]).expect("valid names")
    }

    /// Variables `prefix0 .. prefix{n-1}` with unit weights.
    pub fn numbered(prefix: &str, n: usize) -> Arc<Self> {
        Self::uniform((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector, one slot per variable of the context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All exponent vectors of total degree `d` in `n` variables, in
    /// descending graded-lex order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d as u16);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e as u16);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// All exponent vectors of weighted degree `d`, in descending
    /// graded-lex order of the plain exponents.
    pub fn all_of_weighted_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
        fn rec(weights: &[u32], d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let i = prefix.len();
            if i == weights.len() {
                if d == 0 {
                    out.push(Monomial(prefix.clone()));
                }
                return;
            }
            for e in (0..=d / weights[i]).rev() {
                prefix.push(e as u16);
                rec(weights, d - e * weights[i], prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(weights, d, &mut Vec::with_capacity(weights.len()), &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Result of [`Polynomial::weighted_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(u32),
    NotHomogeneous,
}

/// Sparse polynomial: a map from monomials to nonzero coefficients.
#[derive(Clone)]
pub struct Polynomial<K: Field = RationalField> {
    ctx: Arc<VariableContext>,
    field: K,
    terms: BTreeMap<Monomial, K::Elem>,
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<K: Field> Polynomial<K> {
    pub fn zero(ctx: Arc<VariableContext>, field: K) -> Self {
        Self { ctx, field, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: Arc<VariableContext>, field: K, c: K::Elem) -> Self {
        let n = ctx.len();
        Self::from_terms(ctx, field, [(Monomial::one(n), c)])
    }

    pub fn one(ctx: Arc<VariableContext>, field: K) -> Self {
        let one = field.one();
        Self::constant(ctx, field, one)
    }

    pub fn var(ctx: Arc<VariableContext>, field: K, i: usize) -> Self {
        let n = ctx.len();
        let one = field.one();
        Self::from_terms(ctx, field, [(Monomial::var(n, i), one)])
    }

    /// Builds a polynomial, merging repeated monomials and dropping zeros.
    pub fn from_terms(
        ctx: Arc<VariableContext>,
        field: K,
        terms: impl IntoIterator<Item = (Monomial, K::Elem)>,
    ) -> Self {
        let mut out = Self::zero(ctx, field);
        for (m, c) in terms {
            assert_eq!(m.0.len(), out.ctx.len(), "monomial length must match the context");
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: K::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> K::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &K::Elem)> {
        self.terms.iter().next_back()
    }

    fn same_ctx(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx,
            "polynomials from different variable contexts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ctx(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self {
            ctx: self.ctx.clone(),
            field: f.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_ctx(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.ctx.clone(), self.field.clone());
        }
        let f = &self.field;
        Self {
            ctx: self.ctx.clone(),
            field: f.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &K::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(self.ctx.clone(), f.clone());
        }
        Self {
            ctx: self.ctx.clone(),
            field: f.clone(),
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), f.mul(x, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ctx(other);
        let mut out = Self::zero(self.ctx.clone(), self.field.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    /// Product with every term above total degree `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        self.same_ctx(other);
        let mut out = Self::zero(self.ctx.clone(), self.field.clone());
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > max_degree {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() <= max_degree {
                    out.add_term(m1.mul(m2), self.field.mul(c1, c2));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx.clone(), self.field.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, point: &[K::Elem]) -> K::Elem {
        assert_eq!(point.len(), self.nvars());
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let f = &self.field;
        let mut out = Self::zero(self.ctx.clone(), f.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] -= 1;
            out.add_term(dm, f.mul(c, &f.from_i64(e as i64)));
        }
        out
    }

    /// Largest total (unweighted) degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            ctx: self.ctx.clone(),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest-degree nonzero homogeneous component.
    pub fn leading_form(&self) -> Option<Self> {
        self.order().map(|d| self.homogeneous_part(d))
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            ctx: self.ctx.clone(),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn weighted_degree(&self) -> Result<WeightedDegree, PolyError> {
        let w = self.ctx.weights();
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = degrees.next().ok_or(PolyError::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(WeightedDegree::Homogeneous(first))
        } else {
            Ok(WeightedDegree::NotHomogeneous)
        }
    }

    /// Weighted degree when homogeneous (zero counts as homogeneous of any
    /// degree and yields `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.weighted_degree() {
            Ok(WeightedDegree::Homogeneous(d)) => Some(d),
            _ => None,
        }
    }

    /// Degree in one variable; `None` for zero.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var] as u32).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Writes `f = sum var^p * c_p` with every `c_p` free of `var`; powers
    /// descending, zero coefficients omitted.
    pub fn group_by_variable(&self, var: usize) -> Vec<(u32, Self)> {
        let mut groups: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let p = m.0[var] as u32;
            let mut rest = m.clone();
            rest.0[var] = 0;
            groups
                .entry(p)
                .or_insert_with(|| Self::zero(self.ctx.clone(), self.field.clone()))
                .add_term(rest, c.clone());
        }
        groups.into_iter().rev().collect()
    }

    /// Coefficient of `var^p` in the grouping of [`Self::group_by_variable`].
    pub fn coefficient_of_power(&self, var: usize, p: u32) -> Self {
        let mut out = Self::zero(self.ctx.clone(), self.field.clone());
        for (m, c) in &self.terms {
            if m.0[var] as u32 == p {
                let mut rest = m.clone();
                rest.0[var] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// `G2^2 - 4 G1 G3` for `f = var^2 G1 + var G2 + G3`.
    pub fn quadratic_discriminant(&self, var: usize) -> Result<Self, PolyError> {
        let degree = self.degree_in(var).unwrap_or(0);
        if degree != 2 {
            return Err(PolyError::WrongDegreeInVariable { var: self.ctx.names[var].clone(), degree });
        }
        let g1 = self.coefficient_of_power(var, 2);
        let g2 = self.coefficient_of_power(var, 1);
        let g3 = self.coefficient_of_power(var, 0);
        let four = self.field.from_i64(4);
        Ok(g2.mul(&g2).sub(&g1.mul(&g3).scale(&four)))
    }

    /// Substitutes `images[i]` for variable `i`; all images share a target
    /// context.
    pub fn substitute(&self, images: &[Self]) -> Result<Self, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::ArityMismatch { expected: self.nvars(), found: images.len() });
        }
        let target = images
            .first()
            .map(|p| p.ctx.clone())
            .unwrap_or_else(|| self.ctx.clone());
        let mut powers: Vec<Vec<Self>> = images
            .iter()
            .map(|img| vec![Self::one(target.clone(), self.field.clone()), img.clone()])
            .collect();
        let mut out = Self::zero(target.clone(), self.field.clone());
        for (m, c) in &self.terms {
            let mut t = Self::constant(target.clone(), self.field.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Weighted substitution: each image must be weighted-homogeneous of the
    /// weight of the variable it replaces (or zero).
    pub fn substitute_weighted(&self, images: &[Self]) -> Result<Self, PolyError> {
        for (i, img) in images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let found = img.homogeneous_degree();
            let expected = self.ctx.weights[i];
            if found != Some(expected) {
                return Err(PolyError::ImageDegreeMismatch { var: self.ctx.names[i].clone(), expected, found });
            }
        }
        self.substitute(images)
    }

    /// `f(M x)`: variable `i` is replaced by `sum_j M[i][j] x_j`.
    pub fn substitute_linear(&self, matrix: &[Vec<K::Elem>]) -> Result<Self, PolyError> {
        let n = self.nvars();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(PolyError::ArityMismatch { expected: n, found: matrix.len() });
        }
        let w = self.ctx.weights();
        for i in 0..n {
            for j in 0..n {
                if !self.field.is_zero(&matrix[i][j]) && w[i] != w[j] {
                    return Err(PolyError::WeightMixing(self.ctx.names[i].clone(), self.ctx.names[j].clone()));
                }
            }
        }
        if linear::matrix_rank(&self.field, matrix.to_vec()) < n {
            return Err(PolyError::SingularMatrix);
        }
        let images: Vec<Self> = matrix
            .iter()
            .map(|row| {
                Self::from_terms(
                    self.ctx.clone(),
                    self.field.clone(),
                    row.iter().enumerate().map(|(j, c)| (Monomial::var(n, j), c.clone())),
                )
            })
            .collect();
        self.substitute(&images)
    }

    /// Exact quotient `self / divisor`, `None` when not divisible.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.same_ctx(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = self.field.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.ctx.clone(), self.field.clone());
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = Monomial(m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect());
            let qc = self.field.mul(c, &lc_inv);
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Re-expresses the polynomial in another context. `map[i]` is the new
    /// index of old variable `i`, or `None` to require that it is absent.
    pub fn reindex(&self, ctx: Arc<VariableContext>, map: &[Option<usize>]) -> Option<Self> {
        let n = ctx.len();
        let mut out = Self::zero(ctx, self.field.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0u16; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                e[map[i]?] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }

    /// Sets the listed variables to zero.
    pub fn set_to_zero(&self, vars: &[usize]) -> Self {
        Self {
            ctx: self.ctx.clone(),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, landing in another field.
    pub fn map_field<L: Field>(
        &self,
        target: &L,
        f: impl Fn(&K::Elem) -> Result<L::Elem, AlgebraError>,
    ) -> Result<Polynomial<L>, AlgebraError> {
        let mut out = Polynomial::zero(self.ctx.clone(), target.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Reduction into another field through `Field::from_rational`. Needs
    /// characteristic-zero source coefficients.
    pub fn reduce_into<L: Field>(&self, target: &L) -> Result<Polynomial<L>, AlgebraError> {
        self.map_field(target, |c| {
            let q = self.field.to_rational(c).expect("reduction needs rational coefficients");
            target.from_rational(&q)
        })
    }

    /// Dense list of coefficients of the monomials in `basis`.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<K::Elem> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    /// Sum of weight times variable times partial derivative; equals
    /// `d * f` for weighted-homogeneous `f` of degree `d`.
    pub fn euler_sum(&self) -> Self {
        let mut out = Self::zero(self.ctx.clone(), self.field.clone());
        for i in 0..self.nvars() {
            let w = self.field.from_i64(self.ctx.weights[i] as i64);
            let xi = Self::var(self.ctx.clone(), self.field.clone(), i);
            out = out.add(&xi.mul(&self.partial_derivative(i)).scale(&w));
        }
        out
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut coeff = self.field.render(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ctx.names[i].clone()
                    } else {
                        format!("{}^{}", self.ctx.names[i], e)
                    }
                })
                .collect();
            let compound = coeff.contains('+');
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else if compound {
                write!(f, "({coeff})*{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
