use std::collections::BTreeSet;

use super::*;
use crate::geometry::Ambient;
use crate::polyring::{parse_polynomial, Monomial, VariableContext};

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

/// Naive oracle: all canonical points of P^5(F_p), plain integer
/// arithmetic, hand-written partial derivatives, all 2x2 minors.
fn naive_x33_singular_count(p: i64) -> usize {
    let md = |x: i64| x.rem_euclid(p);
    let mut count = 0;
    let total = p.pow(6);
    let mut seen = BTreeSet::new();
    for idx in 1..total {
        let mut c = [0i64; 6];
        let mut r = idx;
        for slot in c.iter_mut() {
            *slot = r % p;
            r /= p;
        }
        let lead = c.iter().position(|&x| x != 0).unwrap();
        if c[lead] != 1 {
            continue;
        }
        if !seen.insert(c) {
            continue;
        }
        let [x, y, z, t, u, w] = c;
        let f = md(z * z * z + t * t * t + u * u * u + w * w * w);
        let g = md(x * x * x + y * y * y - z * z * z - t * t * t);
        if f != 0 || g != 0 {
            continue;
        }
        let df = [0, 0, 3 * z * z, 3 * t * t, 3 * u * u, 3 * w * w];
        let dg = [3 * x * x, 3 * y * y, -3 * z * z, -3 * t * t, 0, 0];
        let mut rank_one = true;
        for i in 0..6 {
            for j in i + 1..6 {
                if md(df[i] * dg[j] - df[j] * dg[i]) != 0 {
                    rank_one = false;
                }
            }
        }
        if rank_one {
            count += 1;
        }
    }
    count
}

#[test]
fn nine_triple_points_over_f7_match_the_naive_oracle() {
    let oracle = naive_x33_singular_count(7);
    let r = singular_census(&x33_nine(), 7, 1, &CensusOptions::default()).unwrap();
    assert_eq!(r.enumerated, (7u64.pow(6) - 1) / 6);
    assert_eq!(r.total_singular(), oracle);
    assert_eq!(r.count(SingularityKind::Otp), 9);
    assert_eq!(r.total_singular(), 9);
}

#[test]
fn fermat_quintic_is_smooth_over_f11() {
    let a = Ambient::projective(["x", "y", "z", "t", "u"]);
    let v = Variety::new(a.clone(), vec![parse_polynomial("x^5+y^5+z^5+t^5+u^5", a.ctx()).unwrap()]).unwrap();
    let r = singular_census(&v, 11, 1, &CensusOptions::default()).unwrap();
    assert_eq!(r.total_singular(), 0);
    assert!(r.points_on_variety > 0);
}

#[test]
fn straight_enumeration_sizes() {
    for (p, n) in [(2u64, 3usize), (3, 4), (5, 3), (7, 2)] {
        let a = Ambient::new(VariableContext::numbered("x", n + 1)).unwrap();
        let v = Variety::new(a.clone(), vec![Polynomial::var(a.ctx().clone(), RationalField, 0)]).unwrap();
        let r = singular_census(&v, p, 1, &CensusOptions::default()).unwrap();
        assert_eq!(r.enumerated, (p.pow(n as u32 + 1) - 1) / (p - 1));
        // the hyperplane x0 = 0 is a copy of P^{n-1}
        assert_eq!(r.points_on_variety, (p.pow(n as u32) - 1) / (p - 1));
    }
}

/// Oracle for P(1,1,1,1,2) over F_p: vectors are identified when related by
/// a scalar of F_{p^2}, which contains a square root of every element of
/// F_p; scaling a weight-1 coordinate forces the scalar into F_p.
fn naive_wps_orbit_count(p: u64) -> usize {
    let big = FiniteField::new(p, 2).unwrap();
    let weights = [1u32, 1, 1, 1, 2];
    let mut classes = BTreeSet::new();
    for idx in 1..p.pow(5) {
        let mut v = [0u32; 5];
        let mut r = idx;
        for slot in v.iter_mut() {
            *slot = (r % p) as u32;
            r /= p;
        }
        let orbit_min = (1..big.size())
            .map(|l| {
                let lambda = big.element(l);
                let img: Vec<u32> = v.iter().zip(weights).map(|(c, w)| big.mul(c, &big.pow(&lambda, w as u64))).collect();
                img
            })
            .filter(|img| img.iter().all(|&c| (c as u64) < p))
            .min()
            .unwrap();
        classes.insert(orbit_min);
    }
    classes.len()
}

#[test]
fn weighted_enumeration_matches_orbit_oracle() {
    let a = Ambient::parse_header("ambient P(1,1,1,1,2) vars x y z t u").unwrap();
    let v = Variety::new(a.clone(), vec![parse_polynomial("u^3 + x^6 + y^6 + z^6 + t^6", a.ctx()).unwrap()]).unwrap();
    for p in [3u64, 5] {
        let r = singular_census(&v, p, 1, &CensusOptions::default()).unwrap();
        assert_eq!(r.enumerated as usize, naive_wps_orbit_count(p), "p = {p}");
        assert!(r.ambient_stratum_points.is_empty());
    }
}

#[test]
fn census_is_independent_of_worker_count() {
    let v = x33_nine();
    let runs: Vec<String> = [1usize, 2, 5]
        .iter()
        .map(|&w| {
            let opts = CensusOptions { workers: Some(w), ..CensusOptions::default() };
            let r = singular_census(&v, 13, 1, &opts).unwrap();
            format!("{:?} {:?} {} {}", r.singular, r.counts, r.points_on_variety, r.enumerated)
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn cube_roots_of_unity_need_an_extension_at_p5() {
    let v = x33_nine();
    let r1 = singular_census(&v, 5, 1, &CensusOptions::default()).unwrap();
    assert_eq!(r1.count(SingularityKind::Otp), 3);
    assert_eq!(r1.total_singular(), 3);
    let r2 = singular_census(&v, 5, 2, &CensusOptions::default()).unwrap();
    assert_eq!(r2.count(SingularityKind::Otp), 9);
    assert_eq!(r2.total_singular(), 9);
}

#[test]
fn multi_prime_consensus_and_bad_primes() {
    let v = x33_nine();
    let report = multi_prime_census(&v, &PrimePolicy::congruent(3, 1), 3, 1, &CensusOptions::default()).unwrap();
    let primes: Vec<u64> = report.runs.iter().map(|r| r.prime).collect();
    assert_eq!(primes, vec![7, 13, 19]);
    assert!(report.unanimous);
    assert_eq!(report.consensus_count(SingularityKind::Otp), Some(9));
    assert_eq!(report.consensus_total(), Some(9));

    let a = Ambient::projective(["x", "y", "z"]);
    let cubic = Variety::new(a.clone(), vec![parse_polynomial("x^3 + 1/7*y^3 + z^3", a.ctx()).unwrap()]).unwrap();
    let report = multi_prime_census(&cubic, &PrimePolicy::explicit(vec![5, 7, 11]), 3, 1, &CensusOptions::default()).unwrap();
    assert_eq!(report.runs.len(), 2);
    assert_eq!(report.skipped.len(), 1);
    assert_eq!(report.skipped[0].prime, 7);
}

#[test]
fn enumeration_cap_is_enforced() {
    let opts = CensusOptions { cap: 1000, ..CensusOptions::default() };
    assert!(matches!(singular_census(&x33_nine(), 7, 1, &opts), Err(CensusError::AmbientTooLarge { .. })));
}

#[test]
fn rational_singular_points_survive_reduction() {
    let v = x33_nine();
    let rational = [[1, -1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0], [0, 0, 0, 0, 1, -1]];
    let exact = verify_rational_points(&v, &rational.iter().map(|p| qs(p)).collect::<Vec<_>>()).unwrap();
    assert!(exact.iter().all(|r| r.kind == SingularityKind::Otp));
    for p in [7u64, 13, 19] {
        let field = FiniteField::prime(p).unwrap();
        let r = singular_census(&v, p, 1, &CensusOptions::default()).unwrap();
        for pt in &rational {
            let reduced: Vec<u32> = pt.iter().map(|&c| field.from_i64(c)).collect();
            assert!(r.singular.iter().any(|s| s.coords == reduced), "p = {p}, {pt:?}");
        }
    }
    let smooth = verify_rational_points(&v, &[qs(&[1, -1, 1, -1, 0, 0])]);
    // [1:-1:1:-1:0:0] lies on both cubics and is a smooth point
    assert_eq!(smooth.unwrap()[0].kind, SingularityKind::Smooth);
}

#[test]
fn zero_scheme_certificates() {
    let f = FiniteField::prime(31).unwrap();
    let plane = VariableContext::uniform(["x", "y", "z"]);
    let p = |s: &str| parse_polynomial(s, &plane).unwrap().reduce_into(&f).unwrap();
    let four = zero_scheme_certificate(&[p("x^2 - z^2"), p("y^2 - z^2")], 1).unwrap();
    assert!(four.certifies_distinct_points(4));
    assert_eq!(four.rational_points, 4);

    let double = zero_scheme_certificate(&[p("x^2"), p("y")], 1).unwrap();
    assert!(double.zero_dimensional);
    assert!(!double.reduced);

    let line = zero_scheme_certificate(&[p("x*y"), p("x*z")], 1).unwrap();
    assert!(!line.zero_dimensional);

    let space = VariableContext::uniform(["x", "y", "z", "t"]);
    let s = |e: &str| parse_polynomial(e, &space).unwrap().reduce_into(&f).unwrap();
    // a linear form is eliminated before the Macaulay computation
    let six = zero_scheme_certificate(&[s("x - y"), s("x^2 - z^2"), s("(y - t)*(y - 2*t)*(z + 3*t)")], 2).unwrap();
    assert!(six.certifies_distinct_points(6));
    assert_eq!(six.rational_points, 6);
}

#[test]
fn random_complete_intersection_of_degrees_1_2_3_4_has_24_points() {
    use rand::{Rng, SeedableRng};
    let f = FiniteField::prime(31).unwrap();
    let ctx = VariableContext::uniform(["x", "y", "z", "t", "u"]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let forms: Vec<Polynomial<FiniteField>> = (1..=4u32)
        .map(|d| {
            Polynomial::from_terms(
                ctx.clone(),
                f.clone(),
                Monomial::all_of_degree(5, d).into_iter().map(|m| (m, rng.gen_range(0..31u32))),
            )
        })
        .collect();
    let cert = zero_scheme_certificate(&forms, 3).unwrap();
    assert!(cert.certifies_distinct_points(24), "{cert:?}");
    assert!(cert.rational_points <= 24);
}

#[test]
fn characteristic_three_breaks_the_triple_point_configuration() {
    let v = x33_nine();
    let declared: Vec<Vec<Rational>> = [[1, -1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0], [0, 0, 0, 0, 1, -1]].iter().map(|p| qs(p)).collect();
    let config = DeclaredConfiguration::new(&v, &declared).unwrap();
    assert!(config.kinds.iter().all(|k| *k == SingularityKind::Otp));
    let report = configuration_census(&v, &config, &PrimePolicy::explicit(vec![3, 7, 13]), 2, &CensusOptions::default()).unwrap();
    assert_eq!(report.skipped.iter().map(|s| s.prime).collect::<Vec<_>>(), vec![3]);
    assert_eq!(report.runs.iter().map(|r| r.prime).collect::<Vec<_>>(), vec![7, 13]);
    assert_eq!(report.consensus_count(SingularityKind::Otp), Some(9));
}

#[test]
fn a_line_appearing_modulo_p_is_a_discrepancy() {
    let a = Ambient::projective(["x", "y", "z"]);
    let f = parse_polynomial("7*x^2*y + 7*x*y^2 + z*(x^2 + y^2 + z^2)", a.ctx()).unwrap();
    let v = Variety::new(a, vec![f]).unwrap();
    let declared = vec![qs(&[1, 0, 0]), qs(&[0, 1, 0])];
    let config = DeclaredConfiguration::new(&v, &declared).unwrap();
    // restricted to the line z = 0 the cubic is 7 x y (x + y): ideal
    // dimensions 1 and 2 in degrees 3 and 4 over Q, 0 and 0 modulo 7
    assert_eq!(config.spans[&vec![0, 1]], vec![1, 2]);
    for (p, bad) in [(5u64, false), (7, true), (11, false)] {
        let field = FiniteField::prime(p).unwrap();
        let reduced = reduce_variety(&v, &field).unwrap();
        assert_eq!(config.discrepancy(&reduced, &field).unwrap().is_some(), bad, "p = {p}");
    }
    let report = configuration_census(&v, &config, &PrimePolicy::explicit(vec![7]), 1, &CensusOptions::default()).unwrap();
    assert!(report.runs.is_empty() && report.consensus.is_none());
}
