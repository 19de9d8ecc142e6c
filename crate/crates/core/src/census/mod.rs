//! Exhaustive singular-point census of a variety reduced modulo a prime.
//!
//! Canonical points of the (weighted) projective space over F_q are visited
//! chart by chart: in chart `j` the weight-1 coordinates before `j` are zero
//! and coordinate `j` is 1. Within a chart the last free coordinate is the
//! inner loop variable; each generator is pre-grouped by its powers so that
//! the inner loop is a short Horner evaluation whose coefficients are
//! computed once per prefix. Points where every generator vanishes are then
//! tested with the Jacobian criterion and classified locally.

mod scheme;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{is_prime, AlgebraError, Field, FiniteField, Rational, RationalField};
use crate::geometry::{canonicalize, render_coords, GeometryError, Variety};
use crate::local::{classify_point, classify_point_with, CertifyOptions, LocalError, SingularityKind, SingularityReport};
use crate::polyring::{matrix_rank, Monomial, PolyError, Polynomial, VariableContext};

pub use scheme::{count_rational_zeros, zero_scheme_certificate, ZeroSchemeCertificate};

/// Default cap on the number of canonical points a census may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;

/// Prefixes per parallel work item. Fixed, so the partition never depends
/// on the worker count.
const PREFIXES_PER_TASK: u64 = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{p} is a bad reduction prime: {reason}")]
    BadReductionPrime { p: u64, reason: String },
    #[error("enumeration of {size} points exceeds the cap of {cap}")]
    AmbientTooLarge { size: u64, cap: u64 },
    #[error("no admissible prime satisfies the policy")]
    NoAdmissiblePrime,
    #[error("cannot build worker pool: {0}")]
    Workers(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub cap: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub certify: CertifyOptions,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_ENUMERATION_CAP, workers: None, certify: CertifyOptions::default() }
    }
}

/// A singular point found by a census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusPoint {
    #[serde(skip)]
    pub coords: Vec<u32>,
    #[serde(flatten)]
    pub report: SingularityReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusResult {
    pub prime: u64,
    pub extension_degree: u32,
    /// Canonical points visited.
    pub enumerated: u64,
    /// Points of the variety over the field scanned.
    pub points_on_variety: u64,
    pub singular: Vec<CensusPoint>,
    pub counts: BTreeMap<SingularityKind, usize>,
    /// Points of the variety with no weight-1 coordinate; these sit in the
    /// singular stratum of a weighted ambient and are listed, not classified.
    pub ambient_stratum_points: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl CensusResult {
    pub fn count(&self, kind: SingularityKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }

    pub fn total_singular(&self) -> usize {
        self.singular.len()
    }

    pub fn max_multiplicity(&self) -> Option<u32> {
        self.singular.iter().filter_map(|p| p.report.multiplicity).max()
    }
}

/// Terms `(coefficient, [(prefix slot, exponent)])` of one coefficient
/// polynomial.
type CompiledTerms = Vec<(u32, Vec<(usize, u32)>)>;

/// One chart, compiled for fast evaluation.
struct Chart {
    lead: usize,
    /// Free ambient coordinates; the last one is the inner loop variable.
    free: Vec<usize>,
    /// `gens[g][k]`: terms of the coefficient of `inner^k` in generator `g`.
    gens: Vec<Vec<CompiledTerms>>,
    max_exp: Vec<u32>,
}

impl Chart {
    fn build(reduced: &[Polynomial<FiniteField>], weights: &[u32], lead: usize) -> Self {
        let n = weights.len();
        let free: Vec<usize> = (0..n).filter(|&i| i != lead && (i > lead || weights[i] != 1)).collect();
        let fixed_zero: Vec<usize> = (0..lead).filter(|&i| weights[i] == 1).collect();
        let nprefix = free.len().saturating_sub(1);
        let mut max_exp = vec![0u32; nprefix];
        let mut gens = Vec::with_capacity(reduced.len());
        for g in reduced {
            let g = g.set_to_zero(&fixed_zero);
            let mut by_power: Vec<CompiledTerms> = Vec::new();
            for (m, c) in g.terms() {
                let k = free.last().map_or(0, |&v| m.0[v] as usize);
                if by_power.len() <= k {
                    by_power.resize(k + 1, Vec::new());
                }
                let mut factors = Vec::new();
                for (slot, &var) in free.iter().take(nprefix).enumerate() {
                    let e = m.0[var] as u32;
                    if e > 0 {
                        factors.push((slot, e));
                        max_exp[slot] = max_exp[slot].max(e);
                    }
                }
                by_power[k].push((*c, factors));
            }
            gens.push(by_power);
        }
        Self { lead, free, gens, max_exp }
    }

    fn prefix_count(&self, q: u64) -> u64 {
        q.pow(self.free.len().saturating_sub(1) as u32)
    }

    /// Scans prefixes `start..end`; returns zeros of all generators.
    fn scan(&self, field: &FiniteField, n: usize, start: u64, end: u64) -> (u64, Vec<Vec<u32>>) {
        let q = field.order().expect("finite");
        let nprefix = self.free.len().saturating_sub(1);
        let mut prefix = vec![0u32; nprefix];
        let mut powers: Vec<Vec<u32>> = self.max_exp.iter().map(|&e| vec![0; e as usize + 1]).collect();
        let mut coeffs: Vec<Vec<u32>> = self.gens.iter().map(|g| vec![0; g.len()]).collect();
        let inner_values: Vec<u32> = (0..q).map(|i| field.element(i)).collect();
        let has_inner = !self.free.is_empty();
        let mut on_variety = 0u64;
        let mut hits = Vec::new();
        for idx in start..end {
            let mut r = idx;
            for (slot, x) in prefix.iter_mut().enumerate() {
                *x = field.element(r % q);
                r /= q;
                let pw = &mut powers[slot];
                pw[0] = 1;
                for e in 1..pw.len() {
                    pw[e] = field.mul(&pw[e - 1], x);
                }
            }
            for (g, by_power) in self.gens.iter().enumerate() {
                for (k, terms) in by_power.iter().enumerate() {
                    let mut acc = 0u32;
                    for (c, factors) in terms {
                        let mut t = *c;
                        for &(slot, e) in factors {
                            t = field.mul(&t, &powers[slot][e as usize]);
                        }
                        acc = field.add(&acc, &t);
                    }
                    coeffs[g][k] = acc;
                }
            }
            let inner_range: &[u32] = if has_inner { &inner_values } else { &[0] };
            'inner: for &s in inner_range {
                for cs in &coeffs {
                    let mut v = 0u32;
                    for c in cs.iter().rev() {
                        v = field.add(&field.mul(&v, &s), c);
                    }
                    if v != 0 {
                        continue 'inner;
                    }
                }
                on_variety += 1;
                let mut pt = vec![0u32; n];
                pt[self.lead] = 1;
                for (slot, &var) in self.free.iter().take(nprefix).enumerate() {
                    pt[var] = prefix[slot];
                }
                if let Some(&inner) = self.free.last() {
                    pt[inner] = s;
                }
                hits.push(pt);
            }
        }
        (on_variety, hits)
    }
}

/// Number of canonical points of the ambient with weights `weights` over
/// F_q that contain a weight-1 coordinate.
pub fn charted_point_count(weights: &[u32], q: u64) -> u64 {
    (0..weights.len())
        .filter(|&j| weights[j] == 1)
        .map(|j| {
            let free = (0..weights.len()).filter(|&i| i != j && (i > j || weights[i] != 1)).count();
            q.pow(free as u32)
        })
        .sum()
}

/// Canonical representatives of points with every weight-1 coordinate zero.
/// A single nonzero coordinate is scaled to 1; otherwise the smallest
/// vector of the F_q-scaling orbit stands for the orbit.
fn stratum_points(field: &FiniteField, weights: &[u32]) -> Vec<Vec<u32>> {
    let heavy: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] != 1).collect();
    if heavy.is_empty() {
        return Vec::new();
    }
    let q = field.order().expect("finite");
    let mut out = BTreeSet::new();
    for idx in 1..q.pow(heavy.len() as u32) {
        let mut pt = vec![0u32; weights.len()];
        let mut r = idx;
        for &h in &heavy {
            pt[h] = field.element(r % q);
            r /= q;
        }
        let canonical = canonicalize(field, weights, &pt).unwrap_or_else(|_| {
            (1..q)
                .map(|l| {
                    let lambda = field.element(l);
                    pt.iter().zip(weights).map(|(c, &w)| field.mul(c, &field.pow(&lambda, w as u64))).collect::<Vec<u32>>()
                })
                .min()
                .expect("nonempty orbit")
        });
        out.insert(canonical);
    }
    out.into_iter().collect()
}

/// Reduces `v` modulo the characteristic of `field`, rejecting bad primes.
pub fn reduce_variety(v: &Variety<RationalField>, field: &FiniteField) -> Result<Variety<FiniteField>, CensusError> {
    let p = field.characteristic();
    let reduced = v.reduce_into(field).map_err(|e| CensusError::BadReductionPrime { p, reason: e.to_string() })?;
    for (i, g) in reduced.generators().iter().enumerate() {
        if g.is_zero() {
            return Err(CensusError::BadReductionPrime { p, reason: format!("generator {i} vanishes") });
        }
    }
    Ok(reduced)
}

/// Singular points of a variety already defined over a finite field.
pub fn singular_census_over(v: &Variety<FiniteField>, opts: &CensusOptions) -> Result<CensusResult, CensusError> {
    let started = Instant::now();
    let field = v.field().clone();
    let q = field.order().expect("finite");
    let weights = v.ambient().weights().to_vec();
    let n = weights.len();
    let heavy = weights.iter().filter(|&&w| w != 1).count();
    let charted = charted_point_count(&weights, q);
    let estimate = charted + q.pow(heavy as u32).saturating_sub(1);
    if estimate > opts.cap {
        return Err(CensusError::AmbientTooLarge { size: estimate, cap: opts.cap });
    }
    let stratum = stratum_points(&field, &weights);
    let size = charted + stratum.len() as u64;
    let charts: Vec<Chart> = (0..n).filter(|&j| weights[j] == 1).map(|j| Chart::build(v.generators(), &weights, j)).collect();
    let mut tasks = Vec::new();
    for (c, chart) in charts.iter().enumerate() {
        let total = chart.prefix_count(q);
        let mut start = 0;
        while start < total {
            let end = (start + PREFIXES_PER_TASK).min(total);
            tasks.push((c, start, end));
            start = end;
        }
    }
    let codim = v.codim();
    let jacobian: Vec<Vec<Polynomial<FiniteField>>> = v
        .generators()
        .iter()
        .map(|g| (0..n).map(|i| g.partial_derivative(i)).collect())
        .collect();
    let is_singular = |pt: &[u32]| -> bool {
        let rows: Vec<Vec<u32>> = jacobian.iter().map(|row| row.iter().map(|d| d.evaluate(pt)).collect()).collect();
        matrix_rank(&field, rows) < codim
    };
    let run = || -> (u64, Vec<Vec<u32>>) {
        let parts: Vec<(u64, Vec<Vec<u32>>)> = tasks
            .par_iter()
            .map(|&(c, start, end)| {
                let (on, hits) = charts[c].scan(&field, n, start, end);
                (on, hits.into_iter().filter(|pt| is_singular(pt)).collect())
            })
            .collect();
        let on = parts.iter().map(|(o, _)| o).sum();
        let mut all: Vec<Vec<u32>> = parts.into_iter().flat_map(|(_, h)| h).collect();
        all.sort();
        (on, all)
    };
    let classify_all = |pts: &[Vec<u32>]| -> Result<Vec<SingularityReport>, LocalError> {
        pts.par_iter().map(|pt| classify_point_with(v, pt, &opts.certify)).collect()
    };
    let (mut on_variety, singular, reports) = match opts.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build().map_err(|e| CensusError::Workers(e.to_string()))?;
            pool.install(|| {
                let (on, s) = run();
                let r = classify_all(&s);
                (on, s, r)
            })
        }
        None => {
            let (on, s) = run();
            let r = classify_all(&s);
            (on, s, r)
        }
    };
    let reports = reports?;

    let mut ambient_stratum_points = Vec::new();
    for pt in stratum {
        if v.contains(&pt) {
            on_variety += 1;
            ambient_stratum_points.push(render_coords(&field, &pt));
        }
    }

    let mut counts = BTreeMap::new();
    for r in &reports {
        *counts.entry(r.kind).or_insert(0) += 1;
    }
    let singular = singular.into_iter().zip(reports).map(|(coords, report)| CensusPoint { coords, report }).collect();
    let p = field.characteristic();
    let k = (q as f64).log(p as f64).round() as u32;
    Ok(CensusResult {
        prime: p,
        extension_degree: k,
        enumerated: size,
        points_on_variety: on_variety,
        singular,
        counts,
        ambient_stratum_points,
        elapsed_ms: started.elapsed().as_millis(),
    })
}

/// Census of the reduction of `v` over F_{p^k}.
pub fn singular_census(v: &Variety<RationalField>, p: u64, k: u32, opts: &CensusOptions) -> Result<CensusResult, CensusError> {
    let field = FiniteField::new(p, k)?;
    let reduced = reduce_variety(v, &field)?;
    singular_census_over(&reduced, opts)
}

/// Which primes a multi-prime census may use.
#[derive(Debug, Clone, Serialize)]
pub struct PrimePolicy {
    pub min_prime: u64,
    /// `(m, r)`: only primes with `p % m == r`.
    pub congruence: Option<(u64, u64)>,
    pub excluded: Vec<u64>,
    /// Candidates examined before giving up.
    pub max_candidates: usize,
    /// Use exactly these primes, in this order, instead of searching.
    pub explicit: Option<Vec<u64>>,
}

impl Default for PrimePolicy {
    fn default() -> Self {
        Self { min_prime: 5, congruence: None, excluded: Vec::new(), max_candidates: 1000, explicit: None }
    }
}

impl PrimePolicy {
    pub fn explicit(primes: Vec<u64>) -> Self {
        Self { explicit: Some(primes), ..Self::default() }
    }

    pub fn congruent(modulus: u64, residue: u64) -> Self {
        Self { congruence: Some((modulus, residue)), ..Self::default() }
    }

    fn admits(&self, p: u64) -> bool {
        is_prime(p)
            && p >= self.min_prime
            && !self.excluded.contains(&p)
            && self.congruence.is_none_or(|(m, r)| p % m == r)
    }

    /// Candidate primes in the order they are tried.
    pub fn candidates(&self) -> Vec<u64> {
        if let Some(list) = &self.explicit {
            return list.clone();
        }
        let mut out = Vec::new();
        let mut p = self.min_prime.max(2);
        while out.len() < self.max_candidates && p < 10_000 {
            if self.admits(p) {
                out.push(p);
            }
            p += 1;
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedPrime {
    pub prime: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiPrimeReport {
    pub extension_degree: u32,
    pub runs: Vec<CensusResult>,
    pub skipped: Vec<SkippedPrime>,
    /// Singular-point counts by kind shared by a strict majority of runs.
    pub consensus: Option<BTreeMap<SingularityKind, usize>>,
    pub unanimous: bool,
}

impl MultiPrimeReport {
    pub fn consensus_count(&self, kind: SingularityKind) -> Option<usize> {
        self.consensus.as_ref().map(|c| c.get(&kind).copied().unwrap_or(0))
    }

    pub fn consensus_total(&self) -> Option<usize> {
        self.consensus.as_ref().map(|c| c.values().sum())
    }
}

/// Runs the census at the first `n_primes` admissible primes with good
/// reduction and aggregates the counts.
pub fn multi_prime_census(
    v: &Variety<RationalField>,
    policy: &PrimePolicy,
    n_primes: usize,
    k: u32,
    opts: &CensusOptions,
) -> Result<MultiPrimeReport, CensusError> {
    let mut runs = Vec::new();
    let mut skipped = Vec::new();
    for p in policy.candidates() {
        if runs.len() == n_primes {
            break;
        }
        if policy.explicit.is_some() && !is_prime(p) {
            skipped.push(SkippedPrime { prime: p, reason: "not prime".into() });
            continue;
        }
        if policy.excluded.contains(&p) {
            skipped.push(SkippedPrime { prime: p, reason: "excluded by policy".into() });
            continue;
        }
        match singular_census(v, p, k, opts) {
            Ok(r) => runs.push(r),
            Err(CensusError::BadReductionPrime { p, reason }) => skipped.push(SkippedPrime { prime: p, reason }),
            Err(e) => return Err(e),
        }
    }
    if runs.is_empty() {
        return Err(CensusError::NoAdmissiblePrime);
    }
    let (consensus, unanimous) = consensus_of(runs.iter().map(|r| &r.counts));
    Ok(MultiPrimeReport { extension_degree: k, runs, skipped, consensus, unanimous })
}

/// Largest number of declared points whose span is compared under reduction.
const MAX_SPAN_POINTS: usize = 4;

/// Dimensions of the degree-`d` parts of the ideal generated by the
/// restrictions of the generators to the span of `points`, for `d` from the
/// lowest generator degree to one past the highest.
fn span_ideal_profile<K: Field>(v: &Variety<K>, points: &[&Vec<K::Elem>]) -> Result<Vec<usize>, CensusError> {
    let field = v.field();
    let m = points.len();
    let params = VariableContext::numbered("l", m);
    let images: Vec<Polynomial<K>> = (0..v.ambient().nvars())
        .map(|coord| {
            points.iter().enumerate().fold(Polynomial::zero(params.clone(), field.clone()), |acc, (k, p)| {
                acc.add(&Polynomial::var(params.clone(), field.clone(), k).scale(&p[coord]))
            })
        })
        .collect();
    let restricted: Vec<Polynomial<K>> = v.generators().iter().map(|g| g.substitute(&images)).collect::<Result<_, _>>()?;
    let degrees = v.degrees();
    let (low, high) = (*degrees.iter().min().unwrap_or(&0), *degrees.iter().max().unwrap_or(&0) + 1);
    let mut profile = Vec::new();
    for d in low..=high {
        let monomials = Monomial::all_of_degree(m, d);
        let mut rows = Vec::new();
        for (r, &e) in restricted.iter().zip(&degrees) {
            if e > d || r.is_zero() {
                continue;
            }
            for shift in Monomial::all_of_degree(m, d - e) {
                let product = r.mul_monomial(&shift, &field.one());
                rows.push(product.coefficients_in(&monomials));
            }
        }
        profile.push(matrix_rank(field, rows));
    }
    Ok(profile)
}

/// Index subsets of `0..n` with `2..=MAX_SPAN_POINTS` elements.
fn small_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for _ in 1..MAX_SPAN_POINTS {
        frontier = frontier
            .iter()
            .flat_map(|s| (s[s.len() - 1] + 1..n).map(move |j| s.iter().copied().chain([j]).collect::<Vec<_>>()))
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

/// What the reduction of a configuration of rational points must preserve:
/// the exact classification of each point and, in straight projective
/// space, the ideal cut on the span of any two to four of the points,
/// through its Hilbert function near the generator degrees.
///
/// Small primes often break one of these (a tangent cubic acquires a node,
/// a coefficient of a restriction vanishes), and the reduction then carries
/// singularities that have nothing to do with the variety in characteristic
/// zero.
#[derive(Debug, Clone)]
pub struct DeclaredConfiguration {
    pub points: Vec<Vec<Rational>>,
    pub kinds: Vec<SingularityKind>,
    /// Ideal profile of the restriction to each span (see
    /// `span_ideal_profile`), keyed by point indices.
    pub spans: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl DeclaredConfiguration {
    pub fn new(v: &Variety<RationalField>, points: &[Vec<Rational>]) -> Result<Self, CensusError> {
        let kinds = verify_rational_points(v, points)?.into_iter().map(|r| r.kind).collect();
        Ok(Self { points: points.to_vec(), kinds, spans: Self::spans_of(v, points)? })
    }

    fn spans_of<K: Field>(v: &Variety<K>, points: &[Vec<K::Elem>]) -> Result<BTreeMap<Vec<usize>, Vec<usize>>, CensusError> {
        let mut spans = BTreeMap::new();
        if !v.ambient().is_straight() {
            return Ok(spans);
        }
        for subset in small_subsets(points.len()) {
            let chosen: Vec<&Vec<K::Elem>> = subset.iter().map(|&i| &points[i]).collect();
            spans.insert(subset, span_ideal_profile(v, &chosen)?);
        }
        Ok(spans)
    }

    /// `None` when the reduction over `field` preserves the configuration,
    /// otherwise the first discrepancy found.
    pub fn discrepancy(&self, reduced: &Variety<FiniteField>, field: &FiniteField) -> Result<Option<String>, CensusError> {
        let mut pts = Vec::with_capacity(self.points.len());
        for pt in &self.points {
            let Ok(coords) = pt.iter().map(|c| field.reduce(c)).collect::<Result<Vec<u32>, _>>() else {
                return Ok(Some("a declared point has a coordinate with denominator divisible by p".into()));
            };
            if coords.iter().all(|c| *c == 0) {
                return Ok(Some("a declared point reduces to zero".into()));
            }
            pts.push(coords);
        }
        let weights = reduced.ambient().weights();
        let canonical: Vec<Vec<u32>> = pts.iter().map(|p| canonicalize(field, weights, p)).collect::<Result<_, _>>()?;
        for i in 0..canonical.len() {
            if let Some(j) = (i + 1..canonical.len()).find(|&j| canonical[i] == canonical[j]) {
                return Ok(Some(format!("declared points {i} and {j} coincide")));
            }
        }
        for (pt, kind) in pts.iter().zip(&self.kinds) {
            let r = classify_point(reduced, pt)?;
            if r.kind != *kind {
                return Ok(Some(format!("declared point {} is {} but reduces to {}", r.point, kind, r.kind)));
            }
        }
        let spans = Self::spans_of(reduced, &pts)?;
        if let Some((subset, _)) = spans.iter().find(|(k, profile)| self.spans.get(*k) != Some(*profile)) {
            return Ok(Some(format!("the variety meets the span of declared points {subset:?} differently")));
        }
        Ok(None)
    }
}

/// As [`multi_prime_census`], additionally skipping primes whose reduction
/// does not preserve `config` or whose enumeration exceeds the cap. When no
/// prime qualifies the report has no runs and no consensus.
pub fn configuration_census(
    v: &Variety<RationalField>,
    config: &DeclaredConfiguration,
    policy: &PrimePolicy,
    n_primes: usize,
    opts: &CensusOptions,
) -> Result<MultiPrimeReport, CensusError> {
    let mut runs = Vec::new();
    let mut skipped = Vec::new();
    for p in policy.candidates() {
        if runs.len() == n_primes {
            break;
        }
        if policy.explicit.is_some() && !is_prime(p) {
            skipped.push(SkippedPrime { prime: p, reason: "not prime".into() });
            continue;
        }
        if policy.excluded.contains(&p) {
            skipped.push(SkippedPrime { prime: p, reason: "excluded by policy".into() });
            continue;
        }
        let field = FiniteField::prime(p)?;
        let reduced = match reduce_variety(v, &field) {
            Ok(r) => r,
            Err(CensusError::BadReductionPrime { p, reason }) => {
                skipped.push(SkippedPrime { prime: p, reason });
                continue;
            }
            Err(e) => return Err(e),
        };
        if let Some(reason) = config.discrepancy(&reduced, &field)? {
            skipped.push(SkippedPrime { prime: p, reason });
            continue;
        }
        match singular_census_over(&reduced, opts) {
            Ok(r) => runs.push(r),
            Err(e @ CensusError::AmbientTooLarge { .. }) => skipped.push(SkippedPrime { prime: p, reason: e.to_string() }),
            Err(e) => return Err(e),
        }
    }
    let (consensus, unanimous) = consensus_of(runs.iter().map(|r| &r.counts));
    Ok(MultiPrimeReport { extension_degree: 1, runs, skipped, consensus, unanimous })
}

/// Majority vote over per-prime count tables.
pub fn consensus_of<'a>(
    tables: impl IntoIterator<Item = &'a BTreeMap<SingularityKind, usize>>,
) -> (Option<BTreeMap<SingularityKind, usize>>, bool) {
    let tables: Vec<&BTreeMap<SingularityKind, usize>> = tables.into_iter().collect();
    let mut votes: BTreeMap<&BTreeMap<SingularityKind, usize>, usize> = BTreeMap::new();
    for t in &tables {
        *votes.entry(t).or_insert(0) += 1;
    }
    let unanimous = votes.len() == 1;
    let winner = votes.into_iter().max_by_key(|(_, c)| *c).filter(|(_, c)| 2 * c > tables.len()).map(|(t, _)| t.clone());
    (winner, unanimous)
}

/// Exact characteristic-zero classification of rational points.
pub fn verify_rational_points(v: &Variety<RationalField>, points: &[Vec<Rational>]) -> Result<Vec<SingularityReport>, CensusError> {
    points.iter().map(|pt| classify_point(v, pt).map_err(CensusError::from)).collect()
}

#[cfg(test)]
mod tests;
