//! A quadric and a quartic in P^5 with seven ordinary triple points: six
//! inherited from the quartic and one at `[0:0:0:0:0:1]` forced by the
//! shape `w^3 G1 + w^2 G2 + w G3 + G4`, `w G1 + G2`.

use std::collections::BTreeMap;

use crate::algebra::{Rational, RationalField};
use serde::Serialize;

use crate::census::{configuration_census, verify_rational_points, DeclaredConfiguration, MultiPrimeReport, PrimePolicy};
use crate::geometry::{Ambient, Variety};
use crate::local::{multiplicity_at, SingularityKind, SingularityReport};
use crate::polyring::{Monomial, Polynomial, VariableContext};

use super::{
    census_confirms, consensus_census, describe_candidate, draw_nonzero, impose_conditions, ints, seeded, ConstructionError, SearchOptions,
    TriplePointSystem,
};

const W: usize = 5;

#[derive(Debug, Clone)]
pub struct X24Seven {
    pub variety: Variety,
    /// The quartic fourfold with six triple points.
    pub quartic: Variety,
    /// `G1, ..., G4`, free of `w`.
    pub g: Vec<Polynomial>,
    pub seed: u64,
    /// Candidates drawn, including the accepted one.
    pub attempts: usize,
    pub otps: Vec<Vec<Rational>>,
    pub reports: Vec<SingularityReport>,
    pub census: MultiPrimeReport,
}

/// The six triple points of the quartic: `[1:1:1:1:1:1]` and the first five
/// coordinate points.
pub fn quartic_triple_points() -> Vec<Vec<Rational>> {
    let mut pts = vec![ints(&[1, 1, 1, 1, 1, 1])];
    for i in 0..5 {
        let mut e = vec![0; 6];
        e[i] = 1;
        pts.push(ints(&e));
    }
    pts
}

/// Quartics triple at the six points, with no `w^4` term and with
/// `G1` vanishing at `[1:1:1:1:1]`, so that `w G1 + G2` passes through all
/// seven points.
pub fn quartic_system(ambient: &Ambient) -> Result<TriplePointSystem<RationalField>, ConstructionError> {
    let monomials = Monomial::all_of_weighted_degree(ambient.weights(), 4);
    let row = |pred: &dyn Fn(&Monomial) -> bool| -> Vec<Rational> {
        monomials.iter().map(|m| Rational::from_integer(i64::from(pred(m)).into())).collect()
    };
    let no_w4 = row(&|m| m.exponents()[W] == 4);
    let g1_at_ones = row(&|m| m.exponents()[W] == 3);
    impose_conditions(4, ambient, &RationalField, &quartic_triple_points(), &[no_w4, g1_at_ones])
}

/// Splits `F = w^3 G1 + w^2 G2 + w G3 + G4`.
pub fn split_in_w(f: &Polynomial) -> Vec<Polynomial> {
    (1..=4).map(|i| f.coefficient_of_power(W, 4 - i)).collect()
}

/// Four of the quartic's triple points whose span lies on the quartic.
///
/// A quartic triple at the vertices of a tetrahedron restricts to the span
/// as a multiple of the product of the barycentric coordinates. When that
/// multiple vanishes, the threefold contains the quadric surface cut by the
/// quadric and acquires two further nodes on it.
pub fn contained_tetrahedron(f4: &Polynomial) -> Result<Option<[usize; 4]>, ConstructionError> {
    let pts = quartic_triple_points();
    let ctx = VariableContext::numbered("l", 4);
    let params: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(ctx.clone(), RationalField, i)).collect();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            for c in b + 1..pts.len() {
                for d in c + 1..pts.len() {
                    let span = [a, b, c, d];
                    let images: Vec<Polynomial> = (0..6)
                        .map(|coord| {
                            span.iter().zip(&params).fold(Polynomial::zero(ctx.clone(), RationalField), |acc, (&k, l)| {
                                acc.add(&l.scale(&pts[k][coord]))
                            })
                        })
                        .collect();
                    if f4.substitute(&images)?.is_zero() {
                        return Ok(Some(span));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Draws quartics from [`quartic_system`] until the complete intersection
/// passes exact and census verification.
pub fn search_x24_seven(seed: u64, opts: &SearchOptions) -> Result<X24Seven, ConstructionError> {
    let ambient = Ambient::projective(["x", "y", "z", "t", "u", "w"]);
    let system = quartic_system(&ambient)?;
    let mut rng = seeded(seed);
    let mut otps = quartic_triple_points();
    let mut centre = vec![0; 6];
    centre[W] = 1;
    otps.push(ints(&centre));
    let w = Polynomial::var(ambient.ctx().clone(), RationalField, W);
    let mut best: Option<(usize, String)> = None;
    for attempt in 1..=opts.cap {
        let coeffs = draw_nonzero(&mut rng, system.dimension(), opts.coefficient_bound);
        let f4 = system.combination(&coeffs);
        let g = split_in_w(&f4);
        let f2 = w.mul(&g[0]).add(&g[1]);
        if g[0].is_zero() || f2.is_zero() {
            continue;
        }
        let variety = Variety::new(ambient.clone(), vec![f2, f4.clone()])?;
        let reports = verify_rational_points(&variety, &otps)?;
        let otp_count = reports.iter().filter(|r| r.kind == SingularityKind::Otp).count();
        if otp_count < otps.len() {
            let score = otp_count;
            if best.as_ref().is_none_or(|(s, _)| score > *s) {
                best = Some((score, describe_candidate(attempt, &reports, None)));
            }
            continue;
        }
        if let Some(span) = contained_tetrahedron(&f4)? {
            best = Some((otp_count, format!("attempt {attempt}: the quartic contains the span of triple points {span:?}")));
            continue;
        }
        let census = consensus_census(&variety, &otps, opts)?;
        let target = BTreeMap::from([(SingularityKind::Otp, otps.len())]);
        if census_confirms(&census, &target) {
            let quartic = Variety::new(ambient.clone(), vec![f4])?;
            return Ok(X24Seven { variety, quartic, g, seed, attempts: attempt, otps, reports, census });
        }
        best = Some((otp_count, describe_candidate(attempt, &reports, Some(&census))));
    }
    Err(ConstructionError::SearchExhausted {
        attempts: opts.cap,
        best: best.map_or_else(|| "none".into(), |(_, s)| s),
    })
}

/// Evidence that a quartic fourfold has multiplicity exactly 3 at the six
/// points of [`quartic_triple_points`] and is singular along the 15 lines
/// joining them.
#[derive(Debug, Clone, Serialize)]
pub struct QuarticTriplePoints {
    pub multiplicities: Vec<Option<u32>>,
    pub census: MultiPrimeReport,
    /// Per census prime: observed singular points and `15 (p + 1) - 24`,
    /// the number of points on the 15 lines.
    pub line_counts: Vec<(u64, usize, usize)>,
    /// Primes at which the singular points are exactly the line points.
    pub matching_primes: Vec<u64>,
    pub confirmed: bool,
}

/// Exact multiplicities at the six points and a census, at the first
/// `opts.census_primes` primes of `opts.primes` that preserve them, whose
/// singular points must be exactly the points of the joining lines at a
/// strict majority of the census primes.
///
/// A quartic triple at two points is singular along the line joining them:
/// its gradient restricted to the line is a cubic vanishing to order 2 at
/// both ends. The six points are therefore never isolated singularities.
pub fn verify_quartic_triple_points(quartic: &Variety, opts: &SearchOptions) -> Result<QuarticTriplePoints, ConstructionError> {
    let points = quartic_triple_points();
    let multiplicities = points.iter().map(|p| multiplicity_at(quartic, p)).collect::<Result<Vec<_>, _>>()?;
    let config = DeclaredConfiguration::new(quartic, &points)?;
    let policy = PrimePolicy::explicit(opts.primes.clone());
    let census = configuration_census(quartic, &config, &policy, opts.census_primes, &opts.census)?;
    let line_counts: Vec<_> =
        census.runs.iter().map(|r| (r.prime, r.total_singular(), 15 * (r.prime as usize + 1) - 24)).collect();
    let matching_primes: Vec<u64> = census
        .runs
        .iter()
        .zip(&line_counts)
        .filter(|(r, (_, seen, expected))| seen == expected && r.total_singular() == r.count(SingularityKind::Other))
        .map(|(r, _)| r.prime)
        .collect();
    let confirmed = multiplicities.iter().all(|m| *m == Some(3))
        && census.runs.len() >= 2
        && 2 * matching_primes.len() > census.runs.len();
    Ok(QuarticTriplePoints { multiplicities, census, line_counts, matching_primes, confirmed })
}
