//! (Weighted) projective ambients, points, varieties, affine charts,
//! linear subspaces and pencils.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::algebra::{parse_rational, AlgebraError, Field, Rational, RationalField};
use crate::polyring::{
    decompose_in_linear_ideal, matrix_rank, Monomial, PolyError, Polynomial, VariableContext,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("point {0} is a singular point of the weighted ambient space")]
    SingularAmbientPoint(String),
    #[error("no affine chart with a weight-1 coordinate contains {0}")]
    UnsupportedChart(String),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("expected {expected} coordinates, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("cannot pick a canonical representative for {0}")]
    NotCanonicalizable(String),
    #[error("generator {index} is not weighted-homogeneous: term {term} has degree {found}, expected {expected}")]
    NotHomogeneous { index: usize, term: String, expected: u32, found: u32 },
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("a variety needs at least one generator")]
    NoGenerators,
    #[error("pencil parameters are both zero")]
    BothParametersZero,
    #[error("pencil generators are proportional")]
    ProportionalPencil,
    #[error("subspace forms must be linear in weight-1 variables")]
    NotLinear,
    #[error("subspace forms are linearly dependent")]
    DependentForms,
    #[error("ambient needs at least two variables")]
    TooFewVariables,
    #[error("bad ambient header: {0}")]
    Header(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A weighted projective space P(w_0, ..., w_n) with named coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambient {
    ctx: Arc<VariableContext>,
}

impl Ambient {
    pub fn new(ctx: Arc<VariableContext>) -> Result<Self, GeometryError> {
        if ctx.len() < 2 {
            return Err(GeometryError::TooFewVariables);
        }
        Ok(Self { ctx })
    }

    pub fn projective<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self::new(VariableContext::uniform(names)).expect("at least two variables")
    }

    pub fn weighted<S: Into<String>>(names: impl IntoIterator<Item = S>, weights: Vec<u32>) -> Result<Self, GeometryError> {
        let ctx = VariableContext::new(names, weights).map_err(GeometryError::Header)?;
        Self::new(ctx)
    }

    /// Parses `ambient P(1,1,1,1,2) vars x y z t u` (the leading keyword is
    /// optional).
    pub fn parse_header(line: &str) -> Result<Self, GeometryError> {
        let err = |m: &str| GeometryError::Header(m.to_string());
        let rest = line.trim().strip_prefix("ambient").unwrap_or(line).trim();
        let rest = rest.strip_prefix('P').ok_or_else(|| err("expected P(w0,...,wn)"))?.trim_start();
        let rest = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
        let (weights, rest) = rest.split_once(')').ok_or_else(|| err("expected ')'"))?;
        let weights: Vec<u32> = weights
            .split(',')
            .map(|w| w.trim().parse::<u32>().map_err(|_| err("weights must be positive integers")))
            .collect::<Result<_, _>>()?;
        let rest = rest.trim().strip_prefix("vars").ok_or_else(|| err("expected 'vars'"))?;
        let names: Vec<&str> = rest.split_whitespace().collect();
        if names.len() != weights.len() {
            return Err(err(&format!("{} weights but {} variables", weights.len(), names.len())));
        }
        Self::weighted(names, weights)
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn dimension(&self) -> usize {
        self.ctx.len() - 1
    }

    pub fn weights(&self) -> &[u32] {
        self.ctx.weights()
    }

    pub fn is_straight(&self) -> bool {
        self.weights().iter().all(|&w| w == 1)
    }

    /// A point is a smooth point of the ambient when the weights of its
    /// nonzero coordinates are coprime.
    pub fn is_smooth_at<K: Field>(&self, field: &K, coords: &[K::Elem]) -> bool {
        let g = coords
            .iter()
            .zip(self.weights())
            .filter(|(c, _)| !field.is_zero(c))
            .fold(0u32, |acc, (_, &w)| acc.gcd(&w));
        g == 1
    }

    pub fn header(&self) -> String {
        let w: Vec<String> = self.weights().iter().map(u32::to_string).collect();
        format!("ambient P({}) vars {}", w.join(","), self.ctx.names().join(" "))
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_straight() {
            write!(f, "P^{}", self.dimension())
        } else {
            let w: Vec<String> = self.weights().iter().map(u32::to_string).collect();
            write!(f, "P({})", w.join(","))
        }
    }
}

/// Canonical representative of a weighted projective point: the first
/// nonzero weight-1 coordinate is scaled to 1; without one, a lone nonzero
/// coordinate is set to 1.
pub fn canonicalize<K: Field>(field: &K, weights: &[u32], coords: &[K::Elem]) -> Result<Vec<K::Elem>, GeometryError> {
    if coords.len() != weights.len() {
        return Err(GeometryError::WrongArity { expected: weights.len(), found: coords.len() });
    }
    let nonzero: Vec<usize> = (0..coords.len()).filter(|&i| !field.is_zero(&coords[i])).collect();
    if nonzero.is_empty() {
        return Err(GeometryError::ZeroPoint);
    }
    if let Some(&j) = nonzero.iter().find(|&&i| weights[i] == 1) {
        let lambda = field.inv(&coords[j]).expect("nonzero");
        return Ok(coords
            .iter()
            .zip(weights)
            .map(|(c, &w)| field.mul(c, &field.pow(&lambda, w as u64)))
            .collect());
    }
    if nonzero.len() == 1 {
        let mut out = vec![field.zero(); coords.len()];
        out[nonzero[0]] = field.one();
        return Ok(out);
    }
    Err(GeometryError::NotCanonicalizable(render_coords(field, coords)))
}

pub fn render_coords<K: Field>(field: &K, coords: &[K::Elem]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| field.render(c)).collect();
    format!("[{}]", parts.join(":"))
}

/// Parses `[1:-1:0:0]` into rational coordinates.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, GeometryError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| GeometryError::Header(format!("point must look like [a:b:..], got {t:?}")))?;
    inner.split(':').map(|c| parse_rational(c).map_err(GeometryError::from)).collect()
}

/// A point of a weighted projective space, stored canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint<E> {
    coords: Vec<E>,
}

impl<E: Clone> ProjectivePoint<E> {
    pub fn new<K: Field<Elem = E>>(field: &K, ambient: &Ambient, coords: &[E]) -> Result<Self, GeometryError> {
        Ok(Self { coords: canonicalize(field, ambient.weights(), coords)? })
    }

    /// Wraps coordinates that are already canonical.
    pub fn from_canonical(coords: Vec<E>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn render<K: Field<Elem = E>>(&self, field: &K) -> String {
        render_coords(field, &self.coords)
    }
}

impl ProjectivePoint<Rational> {
    pub fn parse(ambient: &Ambient, text: &str) -> Result<Self, GeometryError> {
        Self::new(&RationalField, ambient, &parse_point(text)?)
    }
}

/// A (weighted) complete intersection or hypersurface.
#[derive(Debug, Clone)]
pub struct Variety<K: Field = RationalField> {
    ambient: Ambient,
    generators: Vec<Polynomial<K>>,
    expected_codim: usize,
}

impl<K: Field> Variety<K> {
    /// Every generator must be nonzero and weighted-homogeneous; the expected
    /// codimension is the number of generators.
    pub fn new(ambient: Ambient, generators: Vec<Polynomial<K>>) -> Result<Self, GeometryError> {
        if generators.is_empty() {
            return Err(GeometryError::NoGenerators);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.ctx() != ambient.ctx() {
                return Err(PolyError::ContextMismatch.into());
            }
            check_homogeneous(index, g)?;
        }
        let expected_codim = generators.len();
        Ok(Self { ambient, generators, expected_codim })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Polynomial<K>] {
        &self.generators
    }

    pub fn field(&self) -> &K {
        self.generators[0].field()
    }

    pub fn codim(&self) -> usize {
        self.expected_codim
    }

    pub fn dimension(&self) -> usize {
        self.ambient.dimension() - self.expected_codim
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.homogeneous_degree().expect("checked at construction")).collect()
    }

    /// Degree of the variety: product of generator degrees over product of
    /// ambient weights.
    pub fn degree(&self) -> Rational {
        let num: u64 = self.degrees().iter().map(|&d| d as u64).product();
        let den: u64 = self.ambient.weights().iter().map(|&w| w as u64).product();
        Rational::new(num.into(), den.into())
    }

    pub fn contains(&self, coords: &[K::Elem]) -> bool {
        let f = self.field();
        self.generators.iter().all(|g| f.is_zero(&g.evaluate(coords)))
    }

    /// Whether the line through the distinct points `a` and `b` of a
    /// straight projective space lies on the variety: a form of degree `d`
    /// vanishing at `d + 1` points of a line vanishes on it. The field must
    /// have more elements than the largest generator degree.
    pub fn contains_line(&self, a: &[K::Elem], b: &[K::Elem]) -> bool {
        let f = self.field();
        let d = self.degrees().into_iter().max().unwrap_or(0) as u64;
        debug_assert!(f.order().is_none_or(|q| q > d), "field too small for a line test");
        self.contains(b)
            && (0..d).all(|i| {
                let t = f.element(i);
                let p: Vec<K::Elem> = a.iter().zip(b).map(|(x, y)| f.add(x, &f.mul(&t, y))).collect();
                self.contains(&p)
            })
    }

    /// Jacobian matrix of the generators at a point (rows = generators).
    pub fn jacobian_at(&self, coords: &[K::Elem]) -> Vec<Vec<K::Elem>> {
        self.generators
            .iter()
            .map(|g| (0..self.ambient.nvars()).map(|i| g.partial_derivative(i).evaluate(coords)).collect())
            .collect()
    }

    pub fn jacobian_rank(&self, coords: &[K::Elem]) -> usize {
        matrix_rank(self.field(), self.jacobian_at(coords))
    }

    /// The same variety with coefficients pushed into another field.
    pub fn reduce_into<L: Field>(&self, target: &L) -> Result<Variety<L>, AlgebraError> {
        let generators = self
            .generators
            .iter()
            .map(|g| g.reduce_into(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Variety { ambient: self.ambient.clone(), generators, expected_codim: self.expected_codim })
    }

    pub fn map_generators(&self, f: impl Fn(&Polynomial<K>) -> Polynomial<K>) -> Result<Self, GeometryError> {
        Self::new(self.ambient.clone(), self.generators.iter().map(f).collect())
    }
}

fn check_homogeneous<K: Field>(index: usize, g: &Polynomial<K>) -> Result<(), GeometryError> {
    if g.is_zero() {
        return Err(GeometryError::ZeroGenerator(index));
    }
    let w = g.ctx().weights().to_vec();
    // the degree of the leading term is the reference
    let (lead, _) = g.leading_term().expect("nonzero");
    let expected = lead.weighted_degree(&w);
    for (m, c) in g.terms() {
        let found = m.weighted_degree(&w);
        if found != expected {
            let term = Polynomial::from_terms(g.ctx().clone(), g.field().clone(), [(m.clone(), c.clone())]);
            return Err(GeometryError::NotHomogeneous { index, term: term.to_string(), expected, found });
        }
    }
    Ok(())
}

/// Generators written in affine coordinates centred at a point.
#[derive(Debug, Clone)]
pub struct AffineChart<K: Field> {
    /// Ambient coordinate set to 1.
    pub chart_var: usize,
    /// Representative of the point with `chart_var` equal to 1.
    pub point: Vec<K::Elem>,
    /// Local coordinates: the other ambient variables, unit weights.
    pub local_ctx: Arc<VariableContext>,
    /// Ambient index of each local coordinate.
    pub local_vars: Vec<usize>,
    pub polys: Vec<Polynomial<K>>,
    ambient_ctx: Arc<VariableContext>,
    degrees: Vec<u32>,
}

impl<K: Field> AffineChart<K> {
    /// Turns a local polynomial back into a weighted-homogeneous one of
    /// degree `degree` in the ambient variables.
    pub fn rehomogenize(&self, local: &Polynomial<K>, degree: u32) -> Polynomial<K> {
        let field = local.field().clone();
        let ctx = self.ambient_ctx.clone();
        let weights = ctx.weights().to_vec();
        let x = |i: usize| Polynomial::var(ctx.clone(), field.clone(), i);
        let images: Vec<Polynomial<K>> = self
            .local_vars
            .iter()
            .map(|&i| {
                let shift = x(self.chart_var).pow(weights[i]).scale(&self.point[i]);
                x(i).sub(&shift)
            })
            .collect();
        let affine = local.substitute(&images).expect("arity matches");
        let mut out = Polynomial::zero(ctx.clone(), field.clone());
        for (m, c) in affine.terms() {
            let d = m.weighted_degree(&weights);
            assert!(d <= degree, "term above the target degree");
            let mut e = m.clone();
            e.0[self.chart_var] += (degree - d) as u16;
            out = out.add(&Polynomial::from_terms(ctx.clone(), field.clone(), [(e, c.clone())]));
        }
        out
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

/// Local coordinates centred at a point of the ambient space: the point is
/// scaled so that `chart_var` equals 1 and `images[i]` expresses ambient
/// variable `i` in the local coordinates.
#[derive(Debug, Clone)]
pub struct ChartFrame<K: Field> {
    pub chart_var: usize,
    pub point: Vec<K::Elem>,
    pub local_ctx: Arc<VariableContext>,
    pub local_vars: Vec<usize>,
    pub images: Vec<Polynomial<K>>,
}

impl<K: Field> ChartFrame<K> {
    /// Dehomogenizes at the first nonzero weight-1 coordinate of `point` and
    /// translates the point to the origin.
    pub fn at(ambient: &Ambient, field: &K, point: &[K::Elem]) -> Result<Self, GeometryError> {
        let n = ambient.nvars();
        if point.len() != n {
            return Err(GeometryError::WrongArity { expected: n, found: point.len() });
        }
        if point.iter().all(|c| field.is_zero(c)) {
            return Err(GeometryError::ZeroPoint);
        }
        let weights = ambient.weights();
        let Some(chart_var) = (0..n).find(|&i| weights[i] == 1 && !field.is_zero(&point[i])) else {
            let shown = render_coords(field, point);
            return Err(if ambient.is_smooth_at(field, point) {
                GeometryError::UnsupportedChart(shown)
            } else {
                GeometryError::SingularAmbientPoint(shown)
            });
        };
        let lambda = field.inv(&point[chart_var]).expect("nonzero");
        let scaled: Vec<K::Elem> = point
            .iter()
            .zip(weights)
            .map(|(c, &w)| field.mul(c, &field.pow(&lambda, w as u64)))
            .collect();
        let local_vars: Vec<usize> = (0..n).filter(|&i| i != chart_var).collect();
        let names: Vec<String> = local_vars.iter().map(|&i| ambient.ctx().names()[i].clone()).collect();
        let local_ctx = VariableContext::uniform(names);
        let m = local_vars.len();
        let images: Vec<Polynomial<K>> = (0..n)
            .map(|i| {
                if i == chart_var {
                    Polynomial::one(local_ctx.clone(), field.clone())
                } else {
                    let k = local_vars.iter().position(|&j| j == i).expect("local variable");
                    Polynomial::from_terms(
                        local_ctx.clone(),
                        field.clone(),
                        [(Monomial::var(m, k), field.one()), (Monomial::one(m), scaled[i].clone())],
                    )
                }
            })
            .collect();
        Ok(Self { chart_var, point: scaled, local_ctx, local_vars, images })
    }

    /// Expresses an ambient polynomial in the local coordinates.
    pub fn localize(&self, f: &Polynomial<K>) -> Result<Polynomial<K>, GeometryError> {
        Ok(f.substitute(&self.images)?)
    }
}

/// Dehomogenizes at the first nonzero weight-1 coordinate of `point` and
/// translates the point to the origin.
pub fn affine_chart<K: Field>(v: &Variety<K>, point: &[K::Elem]) -> Result<AffineChart<K>, GeometryError> {
    let field = v.field().clone();
    let ambient = v.ambient();
    let well_formed = point.len() == ambient.nvars() && point.iter().any(|c| !field.is_zero(c));
    if well_formed && !v.contains(point) {
        return Err(GeometryError::PointNotOnVariety);
    }
    let frame = ChartFrame::at(ambient, &field, point)?;
    let polys = v.generators().iter().map(|g| frame.localize(g)).collect::<Result<Vec<_>, _>>()?;
    Ok(AffineChart {
        chart_var: frame.chart_var,
        point: frame.point,
        local_ctx: frame.local_ctx,
        local_vars: frame.local_vars,
        polys,
        ambient_ctx: ambient.ctx().clone(),
        degrees: v.degrees(),
    })
}

/// True iff every generator vanishes at the point.
pub fn evaluate<K: Field>(v: &Variety<K>, point: &[K::Elem]) -> bool {
    v.contains(point)
}

/// The pencil of hypersurfaces `alpha F + beta G`.
#[derive(Debug, Clone)]
pub struct Pencil<K: Field = RationalField> {
    f: Polynomial<K>,
    g: Polynomial<K>,
}

impl<K: Field> Pencil<K> {
    pub fn new(f: Polynomial<K>, g: Polynomial<K>) -> Result<Self, GeometryError> {
        let mut monos: Vec<Monomial> = f.terms().chain(g.terms()).map(|(m, _)| m.clone()).collect();
        monos.sort();
        monos.dedup();
        let field = f.field().clone();
        if matrix_rank(&field, vec![f.coefficients_in(&monos), g.coefficients_in(&monos)]) < 2 {
            return Err(GeometryError::ProportionalPencil);
        }
        if f.homogeneous_degree().is_none() || f.homogeneous_degree() != g.homogeneous_degree() {
            return Err(PolyError::ContextMismatch.into());
        }
        Ok(Self { f, g })
    }

    pub fn generators(&self) -> (&Polynomial<K>, &Polynomial<K>) {
        (&self.f, &self.g)
    }

    pub fn member(&self, alpha: &K::Elem, beta: &K::Elem) -> Result<Polynomial<K>, GeometryError> {
        pencil_member(self, alpha, beta)
    }
}

pub fn pencil_member<K: Field>(p: &Pencil<K>, alpha: &K::Elem, beta: &K::Elem) -> Result<Polynomial<K>, GeometryError> {
    let field = p.f.field();
    if field.is_zero(alpha) && field.is_zero(beta) {
        return Err(GeometryError::BothParametersZero);
    }
    Ok(p.f.scale(alpha).add(&p.g.scale(beta)))
}

/// A linear subspace cut out by independent linear forms in weight-1
/// variables.
#[derive(Debug, Clone)]
pub struct LinearSubspace<K: Field = RationalField> {
    forms: Vec<Polynomial<K>>,
}

impl<K: Field> LinearSubspace<K> {
    pub fn new(forms: Vec<Polynomial<K>>) -> Result<Self, GeometryError> {
        if let Some(first) = forms.first() {
            let n = first.nvars();
            let weights = first.ctx().weights();
            for l in &forms {
                let linear = l.terms().all(|(m, _)| m.degree() == 1 && weights[m.0.iter().position(|&e| e == 1).unwrap()] == 1);
                if l.is_zero() || !linear {
                    return Err(GeometryError::NotLinear);
                }
            }
            let rows = forms
                .iter()
                .map(|l| (0..n).map(|j| l.coefficient(&Monomial::var(n, j))).collect())
                .collect();
            if matrix_rank(first.field(), rows) < forms.len() {
                return Err(GeometryError::DependentForms);
            }
        }
        Ok(Self { forms })
    }

    /// The coordinate subspace where the listed variables vanish.
    pub fn coordinate(ctx: &Arc<VariableContext>, field: &K, vars: &[usize]) -> Result<Self, GeometryError> {
        Self::new(vars.iter().map(|&v| Polynomial::var(ctx.clone(), field.clone(), v)).collect())
    }

    pub fn forms(&self) -> &[Polynomial<K>] {
        &self.forms
    }
}

/// Restricts `f` to the subspace, expressed in the surviving coordinates.
pub fn restrict_to_subspace<K: Field>(f: &Polynomial<K>, s: &LinearSubspace<K>) -> Polynomial<K> {
    if s.forms.is_empty() {
        return f.clone();
    }
    let red = decompose_in_linear_ideal(f, &s.forms);
    let names: Vec<String> = red.free.iter().map(|&i| f.ctx().names()[i].clone()).collect();
    let weights: Vec<u32> = red.free.iter().map(|&i| f.ctx().weights()[i]).collect();
    let ctx = VariableContext::new(names, weights).expect("subset of a valid context");
    let map: Vec<Option<usize>> = (0..f.nvars()).map(|i| red.free.iter().position(|&j| j == i)).collect();
    red.remainder.reindex(ctx, &map).expect("remainder is free of pivot variables")
}
