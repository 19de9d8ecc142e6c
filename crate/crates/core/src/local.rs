//! Local analysis at a point: multiplicity, tangent cone, and the
//! ordinary double / triple point tests.
//!
//! Generators are expanded in an affine chart centred at the point. For a
//! complete intersection the expansion is first *aligned*: generators are
//! replaced by combinations `g_j - sum q_i g_i` whenever the leading form of
//! `g_j` is explained by the other leading forms, until the leading forms
//! are `c - 1` independent linear forms plus one residual form. The residual
//! restricted to the common zero locus of the linear forms is the equation of
//! the projectivized tangent cone.

use serde::Serialize;
use thiserror::Error;

use num_traits::Zero;

use crate::algebra::{is_prime, AlgebraError, Field, FiniteField, Rational, RationalField};
use crate::geometry::{affine_chart, render_coords, GeometryError, LinearSubspace, Variety};
use crate::polyring::{decompose_in_linear_ideal, matrix_rank, nullspace, Monomial, Polynomial};

/// Iteration cap of the alignment loop. Each productive step raises the
/// order of one generator; hitting the cap means the leading forms do not
/// separate by single cancellations (typically a unit multiple in the local
/// ring), which is reported as stalled.
const ALIGNMENT_STEP_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("alignment stalled: the leading forms do not reduce to a complete-intersection shape")]
    AlignmentStalled,
    #[error("point has multiplicity {0:?}, not 3")]
    NotTriple(Option<u32>),
    #[error("the zero form has no singular locus to certify")]
    ZeroForm,
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One alignment move: `g[target] <- scale * g[target] + sum q_i * g[i]`.
#[derive(Debug, Clone)]
pub struct AlignmentStep<K: Field> {
    pub target: usize,
    pub scale: K::Elem,
    pub combination: Vec<(usize, Polynomial<K>)>,
}

/// Local equations of a variety at a point.
#[derive(Debug, Clone)]
pub struct LocalExpansion<K: Field> {
    pub polys: Vec<Polynomial<K>>,
    /// Moves applied so far, in order.
    pub history: Vec<AlignmentStep<K>>,
}

impl<K: Field> LocalExpansion<K> {
    /// Expands the generators of `v` in the affine chart centred at `point`.
    pub fn at(v: &Variety<K>, point: &[K::Elem]) -> Result<Self, LocalError> {
        let chart = affine_chart(v, point)?;
        Ok(Self::new(chart.polys))
    }

    pub fn new(polys: Vec<Polynomial<K>>) -> Self {
        Self { polys, history: Vec::new() }
    }

    /// Order of vanishing of each generator (`None` for a zero generator).
    pub fn orders(&self) -> Vec<Option<u32>> {
        self.polys.iter().map(Polynomial::order).collect()
    }

    pub fn leading_forms(&self) -> Vec<Option<Polynomial<K>>> {
        self.polys.iter().map(Polynomial::leading_form).collect()
    }

    fn apply(&mut self, step: AlignmentStep<K>) {
        let mut g = self.polys[step.target].scale(&step.scale);
        for (i, q) in &step.combination {
            g = g.add(&q.mul(&self.polys[*i]));
        }
        self.polys[step.target] = g;
        self.history.push(step);
    }

    /// Recovers the generators before alignment by undoing every move.
    pub fn unaligned(&self) -> Vec<Polynomial<K>> {
        let mut polys = self.polys.clone();
        for step in self.history.iter().rev() {
            let field = polys[0].field().clone();
            let mut g = polys[step.target].clone();
            for (i, q) in &step.combination {
                g = g.sub(&q.mul(&polys[*i]));
            }
            let inv = field.inv(&step.scale).expect("alignment scales are units");
            polys[step.target] = g.scale(&inv);
        }
        polys
    }
}

/// Linear coefficient rows of a set of polynomials.
fn linear_rows<K: Field>(polys: &[&Polynomial<K>]) -> Vec<Vec<K::Elem>> {
    polys
        .iter()
        .map(|p| (0..p.nvars()).map(|j| p.coefficient(&Monomial::var(p.nvars(), j))).collect())
        .collect()
}

/// One productive alignment move, if any exists.
fn next_alignment_step<K: Field>(exp: &LocalExpansion<K>) -> Result<Option<AlignmentStep<K>>, LocalError> {
    let orders: Vec<u32> = exp.orders().into_iter().collect::<Option<_>>().ok_or(LocalError::AlignmentStalled)?;
    if orders.contains(&0) {
        return Err(GeometryError::PointNotOnVariety.into());
    }
    let field = exp.polys[0].field().clone();
    let linear: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] == 1).collect();

    // dependent linear parts: a constant combination kills the linear term
    if linear.len() > 1 {
        let parts: Vec<&Polynomial<K>> = linear.iter().map(|&i| &exp.polys[i]).collect();
        let rows = linear_rows(&parts);
        let ncols = rows[0].len();
        let transposed: Vec<Vec<K::Elem>> = (0..ncols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
        if let Some(lambda) = nullspace(&field, transposed, linear.len()).into_iter().next() {
            let pos = (0..linear.len()).rev().find(|&k| !field.is_zero(&lambda[k])).expect("nonzero kernel vector");
            let combination = (0..linear.len())
                .filter(|&k| k != pos && !field.is_zero(&lambda[k]))
                .map(|k| {
                    let q = Polynomial::constant(exp.polys[0].ctx().clone(), field.clone(), lambda[k].clone());
                    (linear[k], q)
                })
                .collect();
            return Ok(Some(AlignmentStep { target: linear[pos], scale: lambda[pos].clone(), combination }));
        }
    }

    let lin_forms: Vec<Polynomial<K>> = linear.iter().map(|&i| exp.polys[i].homogeneous_part(1)).collect();
    let higher: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] > 1).collect();
    let mut residuals = Vec::with_capacity(higher.len());
    for &j in &higher {
        let lead = exp.polys[j].homogeneous_part(orders[j]);
        let red = decompose_in_linear_ideal(&lead, &lin_forms);
        if red.remainder.is_zero() {
            let combination = linear
                .iter()
                .zip(red.quotients)
                .filter(|(_, q)| !q.is_zero())
                .map(|(&i, q)| (i, q.neg()))
                .collect();
            return Ok(Some(AlignmentStep { target: j, scale: field.one(), combination }));
        }
        residuals.push(red.remainder);
    }

    // a higher leading form that is a multiple of another one
    for (b, &j) in higher.iter().enumerate() {
        for (a, &i) in higher.iter().enumerate() {
            let earlier = orders[i] < orders[j] || (orders[i] == orders[j] && i < j);
            if i == j || !earlier {
                continue;
            }
            if let Some(q) = residuals[b].div_exact(&residuals[a]) {
                return Ok(Some(AlignmentStep { target: j, scale: field.one(), combination: vec![(i, q.neg())] }));
            }
        }
    }
    Ok(None)
}

/// Runs the alignment loop to its fixpoint.
pub fn align_generators<K: Field>(mut exp: LocalExpansion<K>) -> Result<LocalExpansion<K>, LocalError> {
    if exp.polys.len() <= 1 {
        if exp.polys.iter().any(Polynomial::is_zero) {
            return Err(LocalError::AlignmentStalled);
        }
        return Ok(exp);
    }
    for _ in 0..ALIGNMENT_STEP_CAP {
        match next_alignment_step(&exp)? {
            Some(step) => {
                exp.apply(step);
                if exp.polys.iter().any(Polynomial::is_zero) {
                    return Err(LocalError::AlignmentStalled);
                }
            }
            None => return Ok(exp),
        }
    }
    Err(LocalError::AlignmentStalled)
}

/// Tangent cone in the aligned complete-intersection shape.
#[derive(Debug, Clone)]
pub struct TangentConeModel<K: Field> {
    /// Independent linear leading forms, in local coordinates.
    pub linear_forms: Vec<Polynomial<K>>,
    /// Leading form of the remaining generator restricted to the common
    /// zero locus of the linear forms, in the surviving coordinates.
    pub residual: Polynomial<K>,
    /// Degree of the residual, the multiplicity of the point.
    pub degree: u32,
}

/// Extracts the tangent cone from an aligned expansion.
pub fn tangent_cone_of<K: Field>(exp: &LocalExpansion<K>) -> Result<TangentConeModel<K>, LocalError> {
    let orders: Vec<u32> = exp.orders().into_iter().collect::<Option<_>>().ok_or(LocalError::AlignmentStalled)?;
    // the residual generator is the one of largest order (last on ties)
    let r = (0..orders.len()).max_by_key(|&i| (orders[i], i)).expect("nonempty");
    let others: Vec<usize> = (0..orders.len()).filter(|&i| i != r).collect();
    if others.iter().any(|&i| orders[i] != 1) {
        return Err(LocalError::AlignmentStalled);
    }
    let linear_forms: Vec<Polynomial<K>> = others.iter().map(|&i| exp.polys[i].homogeneous_part(1)).collect();
    let subspace = LinearSubspace::new(linear_forms.clone()).map_err(|_| LocalError::AlignmentStalled)?;
    let lead = exp.polys[r].homogeneous_part(orders[r]);
    let residual = crate::geometry::restrict_to_subspace(&lead, &subspace);
    if residual.is_zero() {
        return Err(LocalError::AlignmentStalled);
    }
    Ok(TangentConeModel { linear_forms, residual, degree: orders[r] })
}

/// Aligned expansion and tangent cone of `v` at `point`.
pub fn tangent_cone<K: Field>(v: &Variety<K>, point: &[K::Elem]) -> Result<TangentConeModel<K>, LocalError> {
    let exp = align_generators(LocalExpansion::at(v, point)?)?;
    tangent_cone_of(&exp)
}

/// Multiplicity of `v` at `point`; `None` when the alignment loop cannot
/// bring the leading forms into complete-intersection shape.
pub fn multiplicity_at<K: Field>(v: &Variety<K>, point: &[K::Elem]) -> Result<Option<u32>, LocalError> {
    match tangent_cone(v, point) {
        Ok(model) => Ok(Some(model.degree)),
        Err(LocalError::AlignmentStalled) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Tangent cone at a point that must be a triple point.
pub fn tangent_cone_surface<K: Field>(v: &Variety<K>, point: &[K::Elem]) -> Result<TangentConeModel<K>, LocalError> {
    let model = tangent_cone(v, point)?;
    if model.degree != 3 {
        return Err(LocalError::NotTriple(Some(model.degree)));
    }
    Ok(model)
}

/// Evidence that a projective hypersurface is smooth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessCertificate {
    /// Characteristic of the field the check ran over; 0 for an exact
    /// rational computation.
    pub prime: u64,
    pub extension_degree: u32,
    /// Degree at which the partial derivatives were shown to generate every
    /// monomial, which rules out a common zero over the algebraic closure.
    pub macaulay_degree: u32,
    /// Number of rational points scanned for singular points (0 when the
    /// scan was skipped as too large).
    pub points_scanned: u64,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified(SmoothnessCertificate),
    /// Singular points met at the primes tried, as `(p, point)` pairs; `p = 0`
    /// marks a rational singular point, which proves the form singular.
    NotCertified { witnesses: Vec<(u64, String)> },
}

impl Certification {
    pub fn certificate(&self) -> Option<&SmoothnessCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::NotCertified { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub min_prime: u64,
    pub max_primes: usize,
    /// Rational-point scans larger than this are skipped.
    pub scan_cap: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { min_prime: 5, max_primes: 4, scan_cap: 200_000 }
    }
}

/// Whether the partial derivatives of the degree-`d` form `c` in `n`
/// variables generate every monomial of degree `n(d-2)+1`. For forms of
/// degree `d` with `char K` not dividing `d` this holds exactly when the
/// hypersurface `V(c)` is smooth over the algebraic closure.
pub fn partials_fill_macaulay_degree<K: Field>(c: &Polynomial<K>) -> Result<(bool, u32), LocalError> {
    let d = c.homogeneous_degree().ok_or(LocalError::NotHomogeneous)?;
    let n = c.nvars();
    if d < 2 {
        return Ok((true, 0));
    }
    let top = n as u32 * (d - 2) + 1;
    let cols = Monomial::all_of_degree(n, top);
    let col_index: std::collections::HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let field = c.field();
    let shifts = Monomial::all_of_degree(n, top - (d - 1));
    let mut rows = Vec::new();
    for i in 0..n {
        let di = c.partial_derivative(i);
        if di.is_zero() {
            continue;
        }
        for s in &shifts {
            let mut row = vec![field.zero(); cols.len()];
            for (m, coef) in di.terms() {
                row[col_index[&m.mul(s)]] = coef.clone();
            }
            rows.push(row);
        }
    }
    let full = matrix_rank(field, rows) == cols.len();
    Ok((full, top))
}

/// Calls `visit` on every canonical point of `P^{n-1}` over a finite field,
/// stopping early when it returns `false`.
pub fn for_each_projective_point<K: Field>(field: &K, n: usize, mut visit: impl FnMut(&[K::Elem]) -> bool) {
    let q = field.order().expect("finite field");
    let mut pt = vec![field.zero(); n];
    for lead in 0..n {
        for slot in pt.iter_mut() {
            *slot = field.zero();
        }
        pt[lead] = field.one();
        let free = n - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut r = idx;
            for slot in pt.iter_mut().skip(lead + 1) {
                *slot = field.element(r % q);
                r /= q;
            }
            if !visit(&pt) {
                return;
            }
        }
    }
}

pub fn projective_point_count(q: u64, n: usize) -> u64 {
    (0..n as u32).map(|i| q.pow(i)).sum()
}

/// Rational singular points of `V(c)` over a finite field.
fn singular_points_over<K: Field>(c: &Polynomial<K>, limit: usize) -> Vec<Vec<K::Elem>> {
    let field = c.field().clone();
    let partials: Vec<Polynomial<K>> = (0..c.nvars()).map(|i| c.partial_derivative(i)).collect();
    let mut hits = Vec::new();
    for_each_projective_point(&field, c.nvars(), |pt| {
        if field.is_zero(&c.evaluate(pt)) && partials.iter().all(|p| field.is_zero(&p.evaluate(pt))) {
            hits.push(pt.to_vec());
        }
        hits.len() < limit
    });
    hits
}

/// Smoothness check of a form over a finite field: the Macaulay test
/// decides smoothness over the algebraic closure, the point scan supplies
/// rational witnesses when it fails.
pub fn certify_smooth_form_finite<K: Field>(c: &Polynomial<K>, opts: &CertifyOptions) -> Result<Certification, LocalError> {
    if c.is_zero() {
        return Err(LocalError::ZeroForm);
    }
    let field = c.field();
    let p = field.characteristic();
    let q = field.order().expect("finite field");
    let k = (q as f64).log(p as f64).round() as u32;
    let d = c.homogeneous_degree().ok_or(LocalError::NotHomogeneous)?;
    let size = projective_point_count(q, c.nvars());
    let scan = size <= opts.scan_cap;
    let witnesses: Vec<(u64, String)> = if scan {
        singular_points_over(c, 4).iter().map(|w| (p, render_coords(field, w))).collect()
    } else {
        Vec::new()
    };
    if !witnesses.is_empty() || (d as u64).is_multiple_of(p) {
        return Ok(Certification::NotCertified { witnesses });
    }
    let (full, top) = partials_fill_macaulay_degree(c)?;
    if !full {
        return Ok(Certification::NotCertified { witnesses });
    }
    let field_name = if k == 1 { format!("F_{p}") } else { format!("F_{p}^{k}") };
    Ok(Certification::Certified(SmoothnessCertificate {
        prime: p,
        extension_degree: k,
        macaulay_degree: top,
        points_scanned: if scan { size } else { 0 },
        statement: format!(
            "partial derivatives span all degree-{top} monomials over {field_name}; no singular point over its algebraic closure"
        ),
    }))
}

/// Smoothness certificate for a rational form: tries good primes in
/// increasing order (smooth reduction at one good prime implies smoothness
/// in characteristic 0), then settles the question exactly over the
/// rationals.
pub fn certify_smooth_form(c: &Polynomial<RationalField>, opts: &CertifyOptions) -> Result<Certification, LocalError> {
    if c.is_zero() {
        return Err(LocalError::ZeroForm);
    }
    let d = c.homogeneous_degree().ok_or(LocalError::NotHomogeneous)? as u64;
    let mut witnesses = Vec::new();
    let mut tried = 0;
    let mut p = opts.min_prime.max(2);
    while tried < opts.max_primes {
        if is_prime(p) && !d.is_multiple_of(p) {
            let f = FiniteField::prime(p)?;
            if let Ok(reduced) = c.reduce_into(&f) {
                // the reduction must keep every coefficient of the form alive
                if reduced.num_terms() == c.num_terms() {
                    tried += 1;
                    match certify_smooth_form_finite(&reduced, opts)? {
                        Certification::Certified(cert) => return Ok(Certification::Certified(cert)),
                        Certification::NotCertified { witnesses: w } => witnesses.extend(w),
                    }
                }
            }
        }
        p += 1;
    }
    // a singular point with small coordinates settles the question without
    // the rank computation over Q
    if let Some(pt) = small_rational_singular_point(c) {
        witnesses.push((0, render_coords(&RationalField, &pt)));
        return Ok(Certification::NotCertified { witnesses });
    }
    let (full, top) = partials_fill_macaulay_degree(c)?;
    if full {
        return Ok(Certification::Certified(SmoothnessCertificate {
            prime: 0,
            extension_degree: 1,
            macaulay_degree: top,
            points_scanned: 0,
            statement: format!("partial derivatives span all degree-{top} monomials over Q; smooth over C"),
        }));
    }
    Ok(Certification::NotCertified { witnesses })
}

/// A singular point of `V(c)` with coordinates in `{-1, 0, 1}`, if any.
fn small_rational_singular_point(c: &Polynomial<RationalField>) -> Option<Vec<Rational>> {
    let partials: Vec<_> = (0..c.nvars()).map(|i| c.partial_derivative(i)).collect();
    let f3 = FiniteField::prime(3).expect("3 is prime");
    let mut found = None;
    // points of P^{n-1}(F_3) lifted to representatives in {-1, 0, 1}
    for_each_projective_point(&f3, c.nvars(), |pt| {
        let lifted: Vec<Rational> =
            pt.iter().map(|&e| Rational::from_integer(if e == 2 { (-1).into() } else { e.into() })).collect();
        if c.evaluate(&lifted).is_zero() && partials.iter().all(|d| d.evaluate(&lifted).is_zero()) {
            found = Some(lifted);
        }
        found.is_none()
    });
    found
}

/// The cubic-surface case of [`certify_smooth_form`].
pub fn certify_smooth_cubic_surface(c: &Polynomial<RationalField>, opts: &CertifyOptions) -> Result<Certification, LocalError> {
    if c.is_zero() {
        return Err(LocalError::ZeroForm);
    }
    if c.homogeneous_degree() != Some(3) {
        return Err(LocalError::NotHomogeneous);
    }
    certify_smooth_form(c, opts)
}

/// Smoothness certification dispatched on the coefficient field.
pub fn certify_residual<K: Field>(c: &Polynomial<K>, opts: &CertifyOptions) -> Result<Certification, LocalError> {
    if c.field().is_finite() {
        return certify_smooth_form_finite(c, opts);
    }
    let rational = c.map_field(&RationalField, |x| Ok(c.field().to_rational(x).expect("characteristic-zero field")))?;
    certify_smooth_form(&rational, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SingularityKind {
    Smooth,
    #[serde(rename = "OTP")]
    Otp,
    #[serde(rename = "ODP")]
    Odp,
    Other,
    Indeterminate,
}

impl std::fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SingularityKind::Smooth => "Smooth",
            SingularityKind::Otp => "OTP",
            SingularityKind::Odp => "ODP",
            SingularityKind::Other => "Other",
            SingularityKind::Indeterminate => "Indeterminate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub point: String,
    /// `None` when indeterminate.
    pub multiplicity: Option<u32>,
    pub kind: SingularityKind,
    /// Tangent-cone residual form, when the cone was computed.
    pub residual: Option<String>,
    pub certificate: Option<SmoothnessCertificate>,
}

/// Whether a quadratic form has full-rank symmetric matrix.
pub fn quadric_is_nondegenerate<K: Field>(q: &Polynomial<K>) -> bool {
    let field = q.field();
    let n = q.nvars();
    if field.characteristic() == 2 {
        return false;
    }
    // symmetric matrix of 2q: diagonal 2a_ii, off-diagonal a_ij
    let two = field.from_i64(2);
    let mut rows = vec![vec![field.zero(); n]; n];
    for (m, c) in q.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
        match vars.as_slice() {
            [i] => rows[*i][*i] = field.mul(c, &two),
            [i, j] => {
                rows[*i][*j] = c.clone();
                rows[*j][*i] = c.clone();
            }
            _ => unreachable!("quadratic form"),
        }
    }
    matrix_rank(field, rows) == n
}

/// Classifies a point of `v` as smooth, OTP, ODP, other or indeterminate.
pub fn classify_point<K: Field>(v: &Variety<K>, point: &[K::Elem]) -> Result<SingularityReport, LocalError> {
    classify_point_with(v, point, &CertifyOptions::default())
}

pub fn classify_point_with<K: Field>(v: &Variety<K>, point: &[K::Elem], opts: &CertifyOptions) -> Result<SingularityReport, LocalError> {
    let field = v.field();
    let shown = render_coords(field, point);
    let model = match tangent_cone(v, point) {
        Ok(m) => m,
        Err(LocalError::AlignmentStalled) => {
            return Ok(SingularityReport {
                point: shown,
                multiplicity: None,
                kind: SingularityKind::Indeterminate,
                residual: None,
                certificate: None,
            })
        }
        Err(e) => return Err(e),
    };
    let mut certificate = None;
    let kind = match model.degree {
        1 => SingularityKind::Smooth,
        2 if quadric_is_nondegenerate(&model.residual) => SingularityKind::Odp,
        3 => match certify_residual(&model.residual, opts)? {
            Certification::Certified(c) => {
                certificate = Some(c);
                SingularityKind::Otp
            }
            Certification::NotCertified { .. } => SingularityKind::Other,
        },
        _ => SingularityKind::Other,
    };
    Ok(SingularityReport {
        point: shown,
        multiplicity: Some(model.degree),
        kind,
        residual: Some(model.residual.to_string()),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::geometry::Ambient;
    use crate::polyring::{parse_polynomial, VariableContext};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| q(n)).collect()
    }

    fn x33_nine() -> Variety {
        let a = Ambient::projective(["x", "y", "z", "t", "u", "w"]);
        let f = parse_polynomial("z^3+t^3+u^3+w^3", a.ctx()).unwrap();
        let g = parse_polynomial("x^3+y^3-z^3-t^3", a.ctx()).unwrap();
        Variety::new(a, vec![f, g]).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let v = x33_nine();
        assert_eq!(multiplicity_at(&v, &qs(&[1, -1, 0, 0, 0, 0])).unwrap(), Some(3));
        let p4 = Ambient::projective(["x", "y", "z", "t", "u"]);
        let quintic = Variety::new(p4.clone(), vec![parse_polynomial("x^5+y^5+z^5+t^5+u^5", p4.ctx()).unwrap()]).unwrap();
        assert_eq!(multiplicity_at(&quintic, &qs(&[1, -1, 0, 0, 0])).unwrap(), Some(1));
        assert!(matches!(multiplicity_at(&quintic, &qs(&[1, 0, 0, 0, 0])), Err(LocalError::Geometry(GeometryError::PointNotOnVariety))));
    }

    #[test]
    fn tangent_cone_of_the_nine_point_example() {
        let v = x33_nine();
        let model = tangent_cone_surface(&v, &qs(&[1, -1, 0, 0, 0, 0])).unwrap();
        assert_eq!(model.linear_forms.len(), 1);
        assert_eq!(model.linear_forms[0].to_string(), "3*y");
        let quotient = VariableContext::uniform(["z", "t", "u", "w"]);
        assert_eq!(model.residual, parse_polynomial("z^3+t^3+u^3+w^3", &quotient).unwrap());

        let p4 = Ambient::projective(["x", "y", "z", "t", "u"]);
        let node = Variety::new(p4.clone(), vec![parse_polynomial("x^3*y^2 + x^3*z^2 + x^3*t^2 + x^3*u^2 + y^5", p4.ctx()).unwrap()]).unwrap();
        assert_eq!(tangent_cone_surface(&node, &qs(&[1, 0, 0, 0, 0])).unwrap_err(), LocalError::NotTriple(Some(2)));
    }

    #[test]
    fn alignment_reproduces_the_normal_form_step() {
        // in the chart x = 1 around the origin of P^5
        let ctx = VariableContext::uniform(["y", "z", "t", "u", "w"]);
        let p = |s: &str| parse_polynomial(s, &ctx).unwrap();
        let g1 = p("w");
        let g2 = p("y^2 + z^2 + t*u");
        let h1 = p("y + 2*z");
        let g3 = p("y^3 + z^3 + t^3 + u^3 + w^3");
        let g4 = p("y^4 - t^4 + z*u^3");
        let f2 = g1.add(&g2);
        // x^3 G1 + x^2 (G2 + G1 H1) + x G3 + G4 at x = 1
        let f4 = g1.add(&g2).add(&g1.mul(&h1)).add(&g3).add(&g4);
        let exp = LocalExpansion::new(vec![f2.clone(), f4.clone()]);
        assert_eq!(exp.orders(), vec![Some(1), Some(1)]);
        let aligned = align_generators(exp).unwrap();
        assert_eq!(aligned.orders(), vec![Some(1), Some(3)]);
        assert_eq!(aligned.unaligned(), vec![f2, f4]);

        let fixed = LocalExpansion::new(vec![g1.clone(), g3.clone()]);
        let out = align_generators(fixed).unwrap();
        assert!(out.history.is_empty());
        assert_eq!(out.polys, vec![g1.clone(), g3.clone()]);

        let twin = LocalExpansion::new(vec![g3.clone(), g3.clone()]);
        assert_eq!(align_generators(twin).unwrap_err(), LocalError::AlignmentStalled);
    }

    #[test]
    fn cubic_surface_certificates() {
        let ctx = VariableContext::uniform(["z", "t", "u", "w"]);
        let fermat = parse_polynomial("z^3+t^3+u^3+w^3", &ctx).unwrap();
        let cert = certify_smooth_cubic_surface(&fermat, &CertifyOptions::default()).unwrap();
        let cert = cert.certificate().expect("Fermat cubic is smooth").clone();
        assert_eq!(cert.prime, 5);
        assert_eq!(cert.points_scanned, 156);

        let cone = parse_polynomial("z^3+t^3+u^3", &ctx).unwrap();
        match certify_smooth_cubic_surface(&cone, &CertifyOptions::default()).unwrap() {
            Certification::NotCertified { witnesses } => {
                assert!(!witnesses.is_empty());
                assert!(witnesses.iter().all(|(_, w)| w == "[0:0:0:1]"));
            }
            other => panic!("cone certified: {other:?}"),
        }
        let zero = Polynomial::zero(ctx.clone(), RationalField);
        assert_eq!(certify_smooth_cubic_surface(&zero, &CertifyOptions::default()), Err(LocalError::ZeroForm));
    }

    #[test]
    fn singular_cubic_is_never_certified() {
        // singular at [1:w:w^2:0] for every cube root of unity w
        let ctx = VariableContext::uniform(["x", "y", "z", "w"]);
        let c = parse_polynomial("x^3 + y^3 + z^3 + w^3 - 3*x*y*z", &ctx).unwrap();
        let opts = CertifyOptions { max_primes: 3, ..CertifyOptions::default() };
        match certify_smooth_cubic_surface(&c, &opts).unwrap() {
            Certification::NotCertified { witnesses } => {
                assert!(witnesses.iter().any(|(_, w)| w == "[1:1:1:0]"));
                // [1:1:1:0] is singular over Q, so a rational witness is recorded
                assert!(witnesses.iter().any(|(p, w)| *p == 0 && w == "[1:1:1:0]"));
            }
            other => panic!("singular cubic certified: {other:?}"),
        }
    }

    #[test]
    fn singular_points_outside_the_scan_fall_back_to_the_rank_over_q() {
        // a node at [1:2:0:0], moved there from a node at [1:0:0:0]
        let ctx = VariableContext::uniform(["x", "y", "z", "w"]);
        let c = parse_polynomial("x*((y-2*x)^2 + z^2 + w^2) + (y-2*x)^3 + 2*z^3 + 3*w^3 + (y-2*x)*z*w", &ctx).unwrap();
        let at = |v: &[i64]| v.iter().map(|&n| q(n)).collect::<Vec<_>>();
        assert!((0..4).all(|i| c.partial_derivative(i).evaluate(&at(&[1, 2, 0, 0])).is_zero()));
        let opts = CertifyOptions { max_primes: 2, ..CertifyOptions::default() };
        match certify_smooth_cubic_surface(&c, &opts).unwrap() {
            Certification::NotCertified { witnesses } => assert!(witnesses.iter().all(|(p, _)| *p != 0)),
            other => panic!("nodal cubic certified: {other:?}"),
        }
    }

    #[test]
    fn classification_examples() {
        let v = x33_nine();
        for pt in [[1, -1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0], [0, 0, 0, 0, 1, -1]] {
            let r = classify_point(&v, &qs(&pt)).unwrap();
            assert_eq!(r.kind, SingularityKind::Otp, "{pt:?}");
            assert_eq!(r.multiplicity, Some(3));
            assert!(r.certificate.is_some());
        }
        // X_8 in P(1,1,1,1,4): the local equation starts with u^2
        let w = Ambient::parse_header("P(1,1,1,1,4) vars x y z t u").unwrap();
        let x8 = Variety::new(w.clone(), vec![parse_polynomial("u^2 + u*y^4 + x^5*y^3 + z^8 - t^8", w.ctx()).unwrap()]).unwrap();
        let r = classify_point(&x8, &qs(&[1, 0, 0, 0, 0])).unwrap();
        assert_ne!(r.kind, SingularityKind::Otp);
        assert!(r.multiplicity.unwrap() <= 2);
    }

    #[test]
    fn node_classification() {
        let p4 = Ambient::projective(["x", "y", "z", "t", "u"]);
        let node = Variety::new(p4.clone(), vec![parse_polynomial("x^3*y^2 + x^3*z^2 + x^3*t^2 + x^3*u^2 + y^5", p4.ctx()).unwrap()]).unwrap();
        assert_eq!(classify_point(&node, &qs(&[1, 0, 0, 0, 0])).unwrap().kind, SingularityKind::Odp);
        let cusp = Variety::new(p4.clone(), vec![parse_polynomial("x^3*y^2 + x^3*z^2 + y^5 + t^5 + u^5", p4.ctx()).unwrap()]).unwrap();
        assert_eq!(classify_point(&cusp, &qs(&[1, 0, 0, 0, 0])).unwrap().kind, SingularityKind::Other);
    }

    #[test]
    fn jacobian_rank_agrees_with_smoothness() {
        let v = x33_nine();
        let f7 = FiniteField::prime(7).unwrap();
        let vf = v.reduce_into(&f7).unwrap();
        let mut checked = 0;
        for_each_projective_point(&f7, 6, |pt| {
            if vf.contains(pt) {
                let smooth = multiplicity_at(&vf, pt).unwrap() == Some(1);
                assert_eq!(smooth, vf.jacobian_rank(pt) == 2, "{pt:?}");
                checked += 1;
            }
            checked < 400
        });
        assert_eq!(checked, 400);
    }

    #[test]
    fn otp_certificates_rescan_clean() {
        let f13 = FiniteField::prime(13).unwrap();
        let v = x33_nine().reduce_into(&f13).unwrap();
        let m = f13.neg(&f13.one());
        let model = tangent_cone_surface(&v, &[1, m, 0, 0, 0, 0]).unwrap();
        assert!(certify_residual(&model.residual, &CertifyOptions::default()).unwrap().certificate().is_some());
        assert!(singular_points_over(&model.residual, usize::MAX).is_empty());
    }
}
