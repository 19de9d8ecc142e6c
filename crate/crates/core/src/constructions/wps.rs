//! Sextic threefolds `u^3 + u^2 G2 + u G4 + G6` in P(1,1,1,1,2).

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Field, FiniteField, Rational, RationalField};
use crate::census::{verify_rational_points, CensusResult, MultiPrimeReport};
use crate::geometry::{Ambient, Variety};
use crate::local::{classify_point, SingularityKind, SingularityReport};
use crate::polyring::{Monomial, Polynomial, VariableContext};

use super::{census_confirms, consensus_census, describe_candidate, draw_nonzero, impose_triple_points, int, seeded, ConstructionError, SearchOptions};

const U: usize = 4;

/// `F = lead * (u^3 + u^2 G2 + u G4 + G6)`.
#[derive(Debug, Clone)]
pub struct SexticNormalForm {
    pub lead: Rational,
    pub g2: Polynomial,
    pub g4: Polynomial,
    pub g6: Polynomial,
}

fn wrong(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::WrongNormalForm(msg.into())
}

fn is_wps_11112(ctx: &VariableContext) -> bool {
    ctx.weights() == [1, 1, 1, 1, 2]
}

/// Splits a sextic of P(1,1,1,1,2) by powers of the weight-2 variable.
pub fn sextic_normal_form(f: &Polynomial) -> Result<SexticNormalForm, ConstructionError> {
    if !is_wps_11112(f.ctx()) {
        return Err(wrong(format!("ambient weights {:?}", f.ctx().weights())));
    }
    let weights = f.ctx().weights().to_vec();
    if f.is_zero() || f.terms().any(|(m, _)| m.weighted_degree(&weights) != 6) {
        return Err(wrong("not weighted homogeneous of degree 6"));
    }
    let lead = f.coefficient(&Monomial::var(5, U).mul(&Monomial::var(5, U)).mul(&Monomial::var(5, U)));
    if lead.is_zero() {
        return Err(ConstructionError::MissingU3Term);
    }
    let g = f.scale(&(Rational::from_integer(1.into()) / lead.clone()));
    Ok(SexticNormalForm {
        lead,
        g2: g.coefficient_of_power(U, 2),
        g4: g.coefficient_of_power(U, 1),
        g6: g.coefficient_of_power(U, 0),
    })
}

/// The weight-2 form `3u + G2`, on whose zero locus every triple point
/// lies.
#[derive(Debug, Clone)]
pub struct LocusSection {
    pub form: Polynomial,
    pub normal_form: SexticNormalForm,
}

impl LocusSection {
    pub fn contains<K: Field>(&self, field: &K, point: &[K::Elem]) -> Result<bool, ConstructionError> {
        Ok(field.is_zero(&self.form.reduce_into(field)?.evaluate(point)))
    }

    /// True when every triple point found by the census lies on the section.
    pub fn contains_census_otps(&self, run: &CensusResult) -> Result<bool, ConstructionError> {
        let field = FiniteField::new(run.prime, run.extension_degree)?;
        let form = self.form.reduce_into(&field)?;
        Ok(run
            .singular
            .iter()
            .filter(|s| s.report.kind == SingularityKind::Otp)
            .all(|s| field.is_zero(&form.evaluate(&s.coords))))
    }
}

/// `3u + G2` for a sextic threefold in normal form.
pub fn triple_point_locus_section(x6: &Variety) -> Result<LocusSection, ConstructionError> {
    let [f] = x6.generators() else {
        return Err(wrong(format!("{} generators, expected one", x6.generators().len())));
    };
    let normal_form = sextic_normal_form(f)?;
    let u = Polynomial::var(f.ctx().clone(), RationalField, U);
    let form = u.scale(&int(3)).add(&normal_form.g2);
    Ok(LocusSection { form, normal_form })
}

#[derive(Debug, Clone, Serialize)]
pub struct WpsSextic {
    #[serde(skip)]
    pub variety: Variety,
    #[serde(skip)]
    pub surface: Variety,
    pub equation: String,
    /// Exact classification of the declared points on the threefold.
    pub reports: Vec<SingularityReport>,
    pub census: MultiPrimeReport,
    /// Triple-point count agreed on by a strict majority of primes.
    pub otp_consensus: Option<usize>,
    pub singular_consensus: Option<usize>,
    /// Every census triple point satisfies `3u + G2 = 0`, at every prime.
    pub otps_on_section: bool,
}

fn surface_ambient(names: &[String]) -> Ambient {
    Ambient::projective(names.iter().cloned())
}

/// `V(u^3 + G6)` in P(1,1,1,1,2), verified at the declared triple points of
/// the surface `V(G6)` and by census over primes of `opts.primes` that
/// preserve the declared points.
///
/// `g6` is either a sextic in four variables or a full equation in
/// P(1,1,1,1,2), which must then be `u^3 + G6` up to scaling.
pub fn build_x6_wps(g6: &Polynomial, declared: &[Vec<Rational>], opts: &SearchOptions) -> Result<WpsSextic, ConstructionError> {
    let (surface_names, g6) = if is_wps_11112(g6.ctx()) {
        let nf = sextic_normal_form(g6)?;
        if !nf.g2.is_zero() || !nf.g4.is_zero() {
            return Err(wrong("G2 and G4 must vanish"));
        }
        let names: Vec<String> = g6.ctx().names()[..4].to_vec();
        let ctx = VariableContext::uniform(names.clone());
        let map = [Some(0), Some(1), Some(2), Some(3), None];
        (names, nf.g6.reindex(ctx, &map).expect("free of u"))
    } else if g6.nvars() == 4 && g6.ctx().weights() == [1, 1, 1, 1] {
        (g6.ctx().names().to_vec(), g6.clone())
    } else {
        return Err(wrong("expected a sextic in four variables"));
    };
    if g6.homogeneous_degree() != Some(6) {
        return Err(wrong("G6 is not a sextic form"));
    }
    let surface = Variety::new(surface_ambient(&surface_names), vec![g6.clone()])?;
    for p in declared {
        let r = classify_point(&surface, p).map_err(|_| ConstructionError::SurfacePointNotTriple(render(p)))?;
        if r.kind != SingularityKind::Otp {
            return Err(ConstructionError::SurfacePointNotTriple(render(p)));
        }
    }
    let mut names = surface_names.clone();
    names.push(if names.iter().any(|n| n == "u") { "u_".into() } else { "u".into() });
    let ambient = Ambient::weighted(names, vec![1, 1, 1, 1, 2])?;
    let map = [Some(0), Some(1), Some(2), Some(3)];
    let lifted = g6.reindex(ambient.ctx().clone(), &map).expect("four variables");
    let u = Polynomial::var(ambient.ctx().clone(), RationalField, U);
    let equation = u.pow(3).add(&lifted);
    let variety = Variety::new(ambient, vec![equation.clone()])?;
    let vertex = [int(0), int(0), int(0), int(0), int(1)];
    if variety.contains(&vertex) {
        return Err(ConstructionError::MissingU3Term);
    }
    let embedded: Vec<Vec<Rational>> = declared.iter().map(|p| p.iter().cloned().chain([int(0)]).collect()).collect();
    let reports = verify_rational_points(&variety, &embedded)?;
    if let Some(r) = reports.iter().find(|r| r.kind != SingularityKind::Otp) {
        return Err(ConstructionError::VerificationFailed(format!("{} is {} on the threefold", r.point, r.kind)));
    }
    let census = consensus_census(&variety, &embedded, opts)?;
    for run in &census.runs {
        if let Some(s) = run.singular.iter().find(|s| s.coords[U] != 0) {
            return Err(ConstructionError::VerificationFailed(format!(
                "singular point {} with u != 0 at p = {}",
                s.report.point, run.prime
            )));
        }
    }
    let section = triple_point_locus_section(&variety)?;
    let otps_on_section = census.runs.iter().map(|r| section.contains_census_otps(r)).collect::<Result<Vec<_>, _>>()?.into_iter().all(|b| b);
    let votes: Vec<BTreeMap<SingularityKind, usize>> =
        census.runs.iter().map(|r| BTreeMap::from([(SingularityKind::Otp, r.count(SingularityKind::Otp))])).collect();
    let otp_consensus = crate::census::consensus_of(votes.iter()).0.map(|t| t[&SingularityKind::Otp]);
    let singular_consensus = census.consensus_total();
    Ok(WpsSextic {
        variety,
        surface,
        equation: equation.to_string(),
        reports,
        census,
        otp_consensus,
        singular_consensus,
        otps_on_section,
    })
}

fn render(p: &[Rational]) -> String {
    crate::geometry::render_coords(&RationalField, p)
}

/// A sextic surface with ordinary triple points at prescribed rational
/// points and no other singularities, built from the triple-point solver.
#[derive(Debug, Clone)]
pub struct FallbackSextic {
    pub g6: Polynomial,
    pub points: Vec<Vec<Rational>>,
    pub attempts: usize,
    pub census: MultiPrimeReport,
}

/// Triple points of the fallback sextic: the coordinate points of P^3 and
/// `[1:1:1:1]`, `[1:2:3:4]`.
pub fn fallback_points() -> Vec<Vec<Rational>> {
    let rows: [[i64; 4]; 6] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1], [1, 2, 3, 4]];
    rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect()
}

/// Draws sextics through [`fallback_points`] with multiplicity 3 until
/// exactly those points are singular, all ordinary triple.
pub fn fallback_sextic(seed: u64, opts: &SearchOptions) -> Result<FallbackSextic, ConstructionError> {
    let ambient = Ambient::projective(["x", "y", "z", "t"]);
    let points = fallback_points();
    let system = impose_triple_points(6, &ambient, &RationalField, &points)?;
    let mut rng = seeded(seed);
    let mut best = None;
    for attempt in 1..=opts.cap {
        let g6 = system.combination(&draw_nonzero(&mut rng, system.dimension(), opts.coefficient_bound));
        let surface = Variety::new(ambient.clone(), vec![g6.clone()])?;
        let reports = verify_rational_points(&surface, &points)?;
        if reports.iter().any(|r| r.kind != SingularityKind::Otp) {
            best = Some(describe_candidate(attempt, &reports, None));
            continue;
        }
        let census = consensus_census(&surface, &points, opts)?;
        if census_confirms(&census, &BTreeMap::from([(SingularityKind::Otp, points.len())])) {
            return Ok(FallbackSextic { g6, points, attempts: attempt, census });
        }
        best = Some(describe_candidate(attempt, &reports, Some(&census)));
    }
    Err(ConstructionError::SearchExhausted { attempts: opts.cap, best: best.unwrap_or_else(|| "none".into()) })
}
