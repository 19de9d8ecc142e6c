//! Builders for the example threefolds, projections from a triple point,
//! the pencil-on-a-plane condition system, the triple-point linear solver
//! and the structural no-go checks.
//!
//! Every randomized builder draws from a ChaCha8 stream seeded by the
//! caller and accepts a candidate only after exact classification of its
//! rational triple points and a multi-prime census.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::census::{configuration_census, CensusError, CensusOptions, DeclaredConfiguration, MultiPrimeReport, PrimePolicy};
use crate::geometry::{GeometryError, Variety};
use crate::local::{LocalError, SingularityKind, SingularityReport};
use crate::polyring::PolyError;

mod impose;
mod nogo;
mod pencil;
mod projection;
mod recipe;
mod wps;
mod x223;
mod x24;
mod x33;

pub use impose::{impose_conditions, impose_triple_points, triple_point_conditions, ConditionRows, TriplePointSystem};
pub use nogo::{nogo_check, random_quadric_intersection, FamilyDescriptor, NogoVerdict};
pub use pencil::{pencil_plane_conditions, ConditionClass, PencilOnPlane, PlaneCondition};
pub use projection::{project_from_otp, verify_projection, DoublePointCheck, Projection, ProjectionShape};
pub use recipe::{ConstructionRecipe, RecipeId, VerificationPlan};
pub use wps::{
    build_x6_wps, fallback_sextic, sextic_normal_form, triple_point_locus_section, FallbackSextic, LocusSection,
    SexticNormalForm, WpsSextic,
};
pub use x223::{build_x223_four, X223Four};
pub use x24::{
    contained_tetrahedron, quartic_system, quartic_triple_points, search_x24_seven, split_in_w, verify_quartic_triple_points,
    QuarticTriplePoints, X24Seven,
};
pub use x33::{build_x33_nine, x33_nine_defaults, TripleLine, X33Nine};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("triple-line condition violated: need a1 = -b3 and a2 = -b4, got a1 = {a1}, b3 = {b3}, a2 = {a2}, b4 = {b4}")]
    TripleLineConditionViolated { a1: String, b3: String, a2: String, b4: String },
    #[error("coefficient {0} must be nonzero")]
    ZeroCoefficient(String),
    #[error("only the zero form satisfies the conditions ({unknowns} unknowns, observed rank {rank})")]
    EmptySolutionSpace { unknowns: usize, rank: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("search exhausted after {attempts} attempts; best candidate: {best}")]
    SearchExhausted { attempts: usize, best: String },
    #[error("the sextic has no u^3 term and passes through the singular point of the ambient space")]
    MissingU3Term,
    #[error("declared point {0} is not an ordinary triple point of the surface")]
    SurfacePointNotTriple(String),
    #[error("not of the form u^3 + u^2 G2 + u G4 + G6 in P(1,1,1,1,2): {0}")]
    WrongNormalForm(String),
    #[error("cannot bring the generators into projection normal form: {0}")]
    NotInNormalForm(String),
    #[error("projection centre {0} is not an ordinary triple point")]
    CenterNotTriple(String),
    #[error("the plane is not contained in every member of the pencil")]
    PlaneNotInPencil,
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Retry and verification settings shared by the randomized builders.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum number of candidates drawn.
    pub cap: usize,
    /// Candidate census primes, tried in order.
    pub primes: Vec<u64>,
    /// Number of primes, among `primes`, at which a census is run. Primes
    /// whose reduction does not preserve the declared points are skipped.
    pub census_primes: usize,
    /// Random coefficients lie in `[-bound, bound]`.
    pub coefficient_bound: i64,
    pub census: CensusOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cap: 16,
            primes: vec![11, 13, 17, 19, 23, 29, 31, 37],
            census_primes: 3,
            coefficient_bound: 20,
            census: CensusOptions::default(),
        }
    }
}

/// Census consensus at the first `opts.census_primes` primes of
/// `opts.primes` whose reduction preserves the classification of
/// `declared` and the lines joining them.
pub(crate) fn consensus_census(v: &Variety, declared: &[Vec<Rational>], opts: &SearchOptions) -> Result<MultiPrimeReport, ConstructionError> {
    let config = DeclaredConfiguration::new(v, declared)?;
    let policy = PrimePolicy::explicit(opts.primes.clone());
    Ok(configuration_census(v, &config, &policy, opts.census_primes, &opts.census)?)
}

/// The census agrees with `target` at two or more primes, by strict majority.
pub(crate) fn census_confirms(census: &MultiPrimeReport, target: &BTreeMap<SingularityKind, usize>) -> bool {
    census.runs.len() >= 2 && census.consensus.as_ref() == Some(target)
}

/// One-line summary of a candidate for error messages.
pub(crate) fn describe_candidate(attempt: usize, reports: &[SingularityReport], census: Option<&MultiPrimeReport>) -> String {
    let kinds: Vec<String> = reports.iter().map(|r| r.kind.to_string()).collect();
    let mut s = format!("attempt {attempt}: declared points [{}]", kinds.join(", "));
    if let Some(c) = census {
        let per_prime: Vec<String> = c.runs.iter().map(|r| format!("p={} {:?}", r.prime, r.counts)).collect();
        s.push_str(&format!("; census {}", per_prime.join(", ")));
        for skip in &c.skipped {
            s.push_str(&format!("; p={} skipped: {}", skip.prime, skip.reason));
        }
    }
    s
}

/// Small nonzero integers drawn uniformly from `[-bound, bound] \ {0}`.
pub(crate) fn draw_nonzero(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| loop {
            let c = rng.gen_range(-bound..=bound);
            if c != 0 {
                break Rational::from_integer(c.into());
            }
        })
        .collect()
}

/// Integers drawn uniformly from `[-bound, bound]`.
pub(crate) fn draw_integers(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect()
}

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| int(n)).collect()
}

#[cfg(test)]
mod tests;
