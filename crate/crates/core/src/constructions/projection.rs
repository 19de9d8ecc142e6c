//! Projection from an ordinary triple point of `X_{2,4}` or `X_{2,2,3}`.
//!
//! With the centre at the coordinate point of `x`, the generators are
//! brought to the shapes `x G1 + G2, x G3 + G4` (image
//! `V(G1 G4 - G2 G3)` in P^4) or `x A1 + A2, x B1 + B2, F3` with `F3` free
//! of `x` (image `V(F3, A2 B1 - B2 A1)` in P^5). The lines through the
//! centre contained in the threefold are contracted to double points at
//! `V(G1, ..., G4)`, respectively `V(A1, A2, B1, B2, F3)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Field, FiniteField, Rational, RationalField};
use crate::census::{
    configuration_census, consensus_of, count_rational_zeros, zero_scheme_certificate, CensusOptions,
    DeclaredConfiguration, MultiPrimeReport, PrimePolicy, SkippedPrime, ZeroSchemeCertificate,
};
use crate::geometry::{canonicalize, render_coords, Ambient, Variety};
use crate::local::{classify_point, SingularityKind, SingularityReport};
use crate::polyring::{decompose_in_linear_ideal, Polynomial, VariableContext};
use crate::spectra::projection_degree;

use super::ConstructionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProjectionShape {
    /// `X_{2,4}` in P^5 onto a quintic in P^4.
    QuadricQuartic,
    /// `X_{2,2,3}` in P^6 onto `X_{3,3}` in P^5.
    QuadricQuadricCubic,
}

#[derive(Debug, Clone)]
pub struct Projection {
    pub shape: ProjectionShape,
    /// Centre, scaled so that `chart_var` is 1.
    pub center: Vec<Rational>,
    pub chart_var: usize,
    /// Generators after moving the centre to a coordinate point and
    /// reducing to the normal form.
    pub normal_form: Vec<Polynomial>,
    pub source_degree: u64,
    pub image: Variety,
    pub image_degree: u64,
    /// Forms cutting out the expected double points on the image.
    pub double_point_forms: Vec<Polynomial>,
    /// Bezout number of the double-point forms.
    pub expected_double_points: u64,
}

impl Projection {
    /// Image of a point other than the centre, in the image coordinates.
    pub fn project_point(&self, q: &[Rational]) -> Option<Vec<Rational>> {
        let qc = &q[self.chart_var];
        let image: Vec<Rational> = (0..q.len())
            .filter(|&i| i != self.chart_var)
            .map(|i| q[i].clone() - self.center[i].clone() * qc.clone())
            .collect();
        (!image.iter().all(Zero::is_zero)).then_some(image)
    }
}

fn coefficient(f: &Polynomial, x: usize, p: u32) -> Polynomial {
    f.coefficient_of_power(x, p)
}

/// Constant `beta` with `a = beta b`, if any.
fn proportionality(a: &Polynomial, b: &Polynomial) -> Option<Rational> {
    let (m, c) = b.leading_term()?;
    let beta = a.coefficient(m) / c.clone();
    (a == &b.scale(&beta)).then_some(beta)
}

fn not_normal(msg: &str) -> ConstructionError {
    ConstructionError::NotInNormalForm(msg.into())
}

/// Reduces `F2 = x G1 + G2`, `F4` to `x G3 + G4`; returns `[G1, G2, G3, G4]`.
fn quadric_quartic(f2: &Polynomial, f4: &Polynomial, x: usize) -> Result<Vec<Polynomial>, ConstructionError> {
    let xv = Polynomial::var(f2.ctx().clone(), RationalField, x);
    if !coefficient(f2, x, 2).is_zero() || !coefficient(f4, x, 4).is_zero() {
        return Err(not_normal("the centre does not lie on both hypersurfaces"));
    }
    let (g1, g2) = (coefficient(f2, x, 1), coefficient(f2, x, 0));
    if g1.is_zero() {
        return Err(not_normal("the quadric is singular at the centre"));
    }
    let mut f4 = f4.clone();
    let top = coefficient(&f4, x, 3);
    if !top.is_zero() {
        let beta = proportionality(&top, &g1).ok_or_else(|| not_normal("x^3 coefficient of the quartic is not a multiple of G1"))?;
        f4 = f4.sub(&xv.pow(2).mul(f2).scale(&beta));
    }
    let second = coefficient(&f4, x, 2);
    let red = decompose_in_linear_ideal(&second, std::slice::from_ref(&g1));
    if !red.remainder.is_zero() {
        return Err(not_normal("x^2 coefficient of the quartic is not in the ideal of G1"));
    }
    f4 = f4.sub(&xv.mul(&red.quotients[0]).mul(f2));
    debug_assert!(f4.degree_in(x).unwrap_or(0) <= 1);
    Ok(vec![g1, g2, coefficient(&f4, x, 1), coefficient(&f4, x, 0)])
}

/// Reduces `F2 = x A1 + A2`, `G2 = x B1 + B2` and makes the cubic free of
/// `x`; returns `[A1, A2, B1, B2, F3]`.
fn quadric_quadric_cubic(
    f2: &Polynomial,
    g2: &Polynomial,
    f3: &Polynomial,
    x: usize,
) -> Result<Vec<Polynomial>, ConstructionError> {
    let xv = Polynomial::var(f2.ctx().clone(), RationalField, x);
    if !coefficient(f2, x, 2).is_zero() || !coefficient(g2, x, 2).is_zero() || !coefficient(f3, x, 3).is_zero() {
        return Err(not_normal("the centre does not lie on all three hypersurfaces"));
    }
    let (a1, a2, b1, b2) = (coefficient(f2, x, 1), coefficient(f2, x, 0), coefficient(g2, x, 1), coefficient(g2, x, 0));
    let linear = [a1.clone(), b1.clone()];
    let mut f3 = f3.clone();
    let red = decompose_in_linear_ideal(&coefficient(&f3, x, 2), &linear);
    if !red.remainder.is_zero() {
        return Err(not_normal("x^2 coefficient of the cubic is not in the ideal of A1, B1"));
    }
    f3 = f3.sub(&xv.mul(&red.quotients[0].mul(f2).add(&red.quotients[1].mul(g2))));
    let red = decompose_in_linear_ideal(&coefficient(&f3, x, 1), &linear);
    if !red.remainder.is_zero() {
        return Err(not_normal("x coefficient of the cubic is not in the ideal of A1, B1"));
    }
    f3 = f3.sub(&red.quotients[0].mul(f2).add(&red.quotients[1].mul(g2)));
    if f3.involves(x) {
        return Err(not_normal("the cubic still involves the centre coordinate"));
    }
    Ok(vec![a1, a2, b1, b2, f3])
}

/// Projects `v` from the ordinary triple point `center`.
pub fn project_from_otp(v: &Variety, center: &[Rational]) -> Result<Projection, ConstructionError> {
    let ambient = v.ambient();
    let mut degrees = v.degrees();
    degrees.sort_unstable();
    let shape = match (ambient.is_straight(), degrees.as_slice()) {
        (true, [2, 4]) => ProjectionShape::QuadricQuartic,
        (true, [2, 2, 3]) => ProjectionShape::QuadricQuadricCubic,
        _ => return Err(not_normal(&format!("unsupported degrees {degrees:?} in {ambient}"))),
    };
    let field = RationalField;
    let report = classify_point(v, center)?;
    if report.kind != SingularityKind::Otp {
        return Err(ConstructionError::CenterNotTriple(render_coords(&field, center)));
    }
    let center = canonicalize(&field, ambient.weights(), center)?;
    let n = ambient.nvars();
    let x = center.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let center: Vec<Rational> = center.iter().map(|c| c.clone() / center[x].clone()).collect();
    // x_i -> x_i + p_i x_c moves the coordinate point e_c to the centre
    let ctx = ambient.ctx().clone();
    let var = |i: usize| Polynomial::var(ctx.clone(), field, i);
    let images: Vec<Polynomial> =
        (0..n).map(|i| if i == x { var(i) } else { var(i).add(&var(x).scale(&center[i])) }).collect();
    let mut moved: Vec<Polynomial> = v.generators().iter().map(|g| g.substitute(&images)).collect::<Result<_, _>>()?;
    moved.sort_by_key(|g| g.homogeneous_degree());
    let pieces = match shape {
        ProjectionShape::QuadricQuartic => quadric_quartic(&moved[0], &moved[1], x)?,
        ProjectionShape::QuadricQuadricCubic => quadric_quadric_cubic(&moved[0], &moved[1], &moved[2], x)?,
    };
    let normal_form = match shape {
        ProjectionShape::QuadricQuartic => {
            let xv = var(x);
            vec![xv.mul(&pieces[0]).add(&pieces[1]), xv.mul(&pieces[2]).add(&pieces[3])]
        }
        ProjectionShape::QuadricQuadricCubic => {
            let xv = var(x);
            vec![xv.mul(&pieces[0]).add(&pieces[1]), xv.mul(&pieces[2]).add(&pieces[3]), pieces[4].clone()]
        }
    };
    let kept: Vec<usize> = (0..n).filter(|&i| i != x).collect();
    let names: Vec<String> = kept.iter().map(|&i| ctx.names()[i].clone()).collect();
    let image_ctx: Arc<VariableContext> = VariableContext::uniform(names);
    let map: Vec<Option<usize>> = (0..n).map(|i| kept.iter().position(|&j| j == i)).collect();
    let drop_x = |f: &Polynomial| f.reindex(image_ctx.clone(), &map).expect("free of the centre coordinate");
    let forms: Vec<Polynomial> = pieces.iter().map(drop_x).collect();
    let image_gens = match shape {
        ProjectionShape::QuadricQuartic => vec![forms[0].mul(&forms[3]).sub(&forms[1].mul(&forms[2]))],
        ProjectionShape::QuadricQuadricCubic => {
            vec![forms[4].clone(), forms[1].mul(&forms[2]).sub(&forms[3].mul(&forms[0]))]
        }
    };
    if image_gens.iter().any(Polynomial::is_zero) {
        return Err(not_normal("the projected equation vanishes identically"));
    }
    let image = Variety::new(Ambient::new(image_ctx)?, image_gens)?;
    let source_degree: u64 = v.degrees().iter().map(|&d| d as u64).product();
    let image_degree: u64 = image.degrees().iter().map(|&d| d as u64).product();
    let expected = projection_degree(source_degree, 3).map_err(|e| not_normal(&e.to_string()))?;
    if expected != image_degree {
        return Err(not_normal(&format!("image degree {image_degree}, expected {expected}")));
    }
    let expected_double_points = forms.iter().map(|f| f.homogeneous_degree().unwrap_or(0) as u64).product();
    Ok(Projection {
        shape,
        center,
        chart_var: x,
        normal_form,
        source_degree,
        image,
        image_degree,
        double_point_forms: forms,
        expected_double_points,
    })
}

/// Census and certificate evidence for the singularities of a projection.
#[derive(Debug, Clone, Serialize)]
pub struct DoublePointCheck {
    /// Exact classification of the images of the other triple points.
    pub image_otp_reports: Vec<SingularityReport>,
    pub census: MultiPrimeReport,
    /// Triple-point count agreed on by a strict majority of primes.
    pub otp_consensus: Option<usize>,
    /// Largest number of singular points other than OTPs and ODPs at any
    /// prime.
    pub other_singular: usize,
    /// Certificate at the first census prime: the double-point scheme
    /// consists of `expected_double_points` distinct reduced points.
    pub scheme: Option<ZeroSchemeCertificate>,
    /// Per prime: the census ODPs are exactly the rational points of the
    /// double-point scheme.
    pub odp_matches_scheme: BTreeMap<u64, bool>,
    /// Number of double points, when certified and matched at every prime.
    pub double_points: Option<u64>,
}

/// Classifies the projected triple points exactly and compares the census
/// of the image with the double-point scheme at each of the first
/// `n_primes` admissible primes of `primes`. A prime is admissible when the
/// double-point scheme stays `expected_double_points` distinct reduced
/// points and the reduction preserves the images of the other triple points.
pub fn verify_projection(
    proj: &Projection,
    other_otps: &[Vec<Rational>],
    primes: &[u64],
    n_primes: usize,
    opts: &CensusOptions,
    seed: u64,
) -> Result<DoublePointCheck, ConstructionError> {
    let images = other_otps
        .iter()
        .map(|q| {
            proj.project_point(q)
                .ok_or_else(|| ConstructionError::VerificationFailed("a triple point coincides with the centre".into()))
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    let image_otp_reports =
        images.iter().map(|img| classify_point(&proj.image, img)).collect::<Result<Vec<_>, _>>()?;
    let config = DeclaredConfiguration::new(&proj.image, &images)?;
    let mut runs = Vec::new();
    let mut skipped = Vec::new();
    let mut scheme = None;
    for &p in primes {
        if runs.len() == n_primes {
            break;
        }
        let reduced_forms = FiniteField::prime(p).ok().and_then(|field| {
            proj.double_point_forms.iter().map(|f| f.reduce_into(&field)).collect::<Result<Vec<_>, _>>().ok()
        });
        let Some(forms) = reduced_forms else {
            skipped.push(SkippedPrime { prime: p, reason: "the double-point forms do not reduce".into() });
            continue;
        };
        let cert = zero_scheme_certificate(&forms, seed)?;
        if !cert.certifies_distinct_points(proj.expected_double_points) {
            let reason = format!("the double-point scheme is not {} distinct reduced points", proj.expected_double_points);
            skipped.push(SkippedPrime { prime: p, reason });
            continue;
        }
        let report = configuration_census(&proj.image, &config, &PrimePolicy::explicit(vec![p]), 1, opts)?;
        skipped.extend(report.skipped);
        if !report.runs.is_empty() {
            scheme.get_or_insert(cert);
            runs.extend(report.runs);
        }
    }
    let (consensus, unanimous) = consensus_of(runs.iter().map(|r| &r.counts));
    let census = MultiPrimeReport { extension_degree: 1, runs, skipped, consensus, unanimous };
    let otp_votes = census.runs.iter().map(|r| BTreeMap::from([(SingularityKind::Otp, r.count(SingularityKind::Otp))]));
    let tables: Vec<_> = otp_votes.collect();
    let (winner, _) = consensus_of(tables.iter());
    let otp_consensus = winner.map(|t| t[&SingularityKind::Otp]);
    let other_singular = census
        .runs
        .iter()
        .map(|r| r.total_singular() - r.count(SingularityKind::Otp) - r.count(SingularityKind::Odp))
        .max()
        .unwrap_or(0);
    let mut odp_matches_scheme = BTreeMap::new();
    for run in &census.runs {
        let field = FiniteField::prime(run.prime)?;
        let forms: Vec<Polynomial<FiniteField>> =
            proj.double_point_forms.iter().map(|f| f.reduce_into(&field)).collect::<Result<_, _>>()?;
        let odps: Vec<&[u32]> =
            run.singular.iter().filter(|s| s.report.kind == SingularityKind::Odp).map(|s| s.coords.as_slice()).collect();
        let on_scheme = odps.iter().all(|pt| forms.iter().all(|f| field.is_zero(&f.evaluate(pt))));
        let rational = count_rational_zeros(&forms)?;
        odp_matches_scheme.insert(run.prime, on_scheme && rational == odps.len() as u64);
    }
    let double_points = (scheme.is_some() && odp_matches_scheme.values().all(|&b| b)).then_some(proj.expected_double_points);
    Ok(DoublePointCheck {
        image_otp_reports,
        census,
        otp_consensus,
        other_singular,
        scheme,
        odp_matches_scheme,
        double_points,
    })
}
