//! Two quadrics and a cubic in P^6 with four ordinary triple points: the
//! cubic is triple along the plane `V(s,t,u,w)` and the quadrics cut the
//! plane in four prescribed rational points.

use std::collections::BTreeMap;

use crate::algebra::{Rational, RationalField};
use crate::census::{verify_rational_points, MultiPrimeReport};
use crate::geometry::{Ambient, Variety};
use crate::local::{SingularityKind, SingularityReport};
use crate::polyring::{matrix_rank, Monomial, Polynomial};

use super::{census_confirms, consensus_census, describe_candidate, draw_integers, draw_nonzero, int, seeded, ConstructionError, SearchOptions};

pub const X223_VARIABLES: [&str; 7] = ["x", "y", "z", "s", "t", "u", "w"];
const NORMAL: [usize; 4] = [3, 4, 5, 6];

#[derive(Debug, Clone)]
pub struct X223Four {
    pub variety: Variety,
    pub seed: u64,
    pub attempts: usize,
    /// The four triple points, on the plane; the first is `[1:0:0:0:0:0:0]`.
    pub otps: Vec<Vec<Rational>>,
    pub reports: Vec<SingularityReport>,
    pub census: MultiPrimeReport,
}

/// Coordinates of the intersection point of two lines in the plane
/// `(x, y, z)`, given by coefficient vectors.
fn meet(l: &[Rational; 3], m: &[Rational; 3]) -> Vec<Rational> {
    vec![
        l[1].clone() * m[2].clone() - l[2].clone() * m[1].clone(),
        l[2].clone() * m[0].clone() - l[0].clone() * m[2].clone(),
        l[0].clone() * m[1].clone() - l[1].clone() * m[0].clone(),
    ]
}

/// Draws cubics in the cube of the ideal of the plane and quadrics
/// restricting to `y a(x,y,z)` and `z b(x,y,z)` on it, until four triple
/// points and nothing else survive verification.
pub fn build_x223_four(seed: u64, opts: &SearchOptions) -> Result<X223Four, ConstructionError> {
    let ambient = Ambient::projective(X223_VARIABLES);
    let ctx = ambient.ctx().clone();
    let n = ambient.nvars();
    let var = |i: usize| Polynomial::var(ctx.clone(), RationalField, i);
    let linear = |coeffs: &[Rational], vars: &[usize]| {
        Polynomial::from_terms(ctx.clone(), RationalField, vars.iter().zip(coeffs).map(|(&i, c)| (Monomial::var(n, i), c.clone())))
    };
    let cubic_monomials: Vec<Monomial> = Monomial::all_of_degree(4, 3)
        .into_iter()
        .map(|m| {
            let mut e = vec![0u16; n];
            for (k, &i) in NORMAL.iter().enumerate() {
                e[i] = m.0[k];
            }
            Monomial(e)
        })
        .collect();
    let all: Vec<usize> = (0..n).collect();
    let mut rng = seeded(seed);
    let bound = opts.coefficient_bound;
    let mut best: Option<String> = None;
    for attempt in 1..=opts.cap {
        let cubic_coeffs = draw_integers(&mut rng, cubic_monomials.len(), bound);
        let cubic = Polynomial::from_terms(ctx.clone(), RationalField, cubic_monomials.iter().cloned().zip(cubic_coeffs));
        // lines of the plane: a = x + a1 y + a2 z, b = x + b1 y + b2 z
        let ab = draw_nonzero(&mut rng, 4, bound);
        let a_line = [int(1), ab[0].clone(), ab[1].clone()];
        let b_line = [int(1), ab[2].clone(), ab[3].clone()];
        let y_line = [int(0), int(1), int(0)];
        let z_line = [int(0), int(0), int(1)];
        let plane_points = [meet(&y_line, &z_line), meet(&y_line, &b_line), meet(&a_line, &z_line), meet(&a_line, &b_line)];
        let mut tails = Vec::new();
        for _ in 0..2 {
            let mut tail = Polynomial::zero(ctx.clone(), RationalField);
            for &i in &NORMAL {
                tail = tail.add(&var(i).mul(&linear(&draw_integers(&mut rng, n, bound), &all)));
            }
            tails.push(tail);
        }
        // four distinct points on the plane: every pair independent
        let distinct = (0..4).all(|i| {
            (i + 1..4).all(|j| matrix_rank(&RationalField, vec![plane_points[i].clone(), plane_points[j].clone()]) == 2)
        });
        if !distinct {
            best.get_or_insert_with(|| format!("attempt {attempt}: quadrics meet the plane in a curve"));
            continue;
        }
        let q1 = var(1).mul(&linear(&a_line, &[0, 1, 2])).add(&tails[0]);
        let q2 = var(2).mul(&linear(&b_line, &[0, 1, 2])).add(&tails[1]);
        let variety = Variety::new(ambient.clone(), vec![q1, q2, cubic])?;
        let otps: Vec<Vec<Rational>> = plane_points
            .iter()
            .map(|p| p.iter().cloned().chain(std::iter::repeat_n(int(0), 4)).collect())
            .collect();
        let reports = verify_rational_points(&variety, &otps)?;
        if reports.iter().any(|r| r.kind != SingularityKind::Otp) {
            best = Some(describe_candidate(attempt, &reports, None));
            continue;
        }
        let census = consensus_census(&variety, &otps, opts)?;
        if census_confirms(&census, &BTreeMap::from([(SingularityKind::Otp, 4)])) {
            return Ok(X223Four { variety, seed, attempts: attempt, otps, reports, census });
        }
        best = Some(describe_candidate(attempt, &reports, Some(&census)));
    }
    Err(ConstructionError::SearchExhausted { attempts: opts.cap, best: best.unwrap_or_else(|| "none".into()) })
}
