use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::algebra::{Field, FiniteField, RationalField};
use crate::census::singular_census_over;
use crate::geometry::{Ambient, LinearSubspace, Pencil, Variety};
use crate::local::{classify_point, multiplicity_at, SingularityKind};
use crate::polyring::{matrix_rank, parse_polynomial, Monomial, Polynomial, VariableContext};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| q(n)).collect()
}

fn poly(ambient: &Ambient, s: &str) -> Polynomial {
    parse_polynomial(s, ambient.ctx()).unwrap()
}

fn hypersurface(f: &Polynomial) -> Variety {
    let ambient = Ambient::new(f.ctx().clone()).unwrap();
    Variety::new(ambient, vec![f.clone()]).unwrap()
}

// ---------------------------------------------------------------- x33

/// Oracle: every point of the three coordinate lines over F_p, tested with
/// hand-written cubics and gradients.
fn naive_x33_line_singularities(p: i64) -> Vec<Vec<u32>> {
    let md = |x: i64| x.rem_euclid(p);
    let mut out = Vec::new();
    for span in [[0usize, 1], [4, 5], [2, 3]] {
        for (s, r) in (0..p).map(|s| (s, 1)).chain([(1, 0)]) {
            let mut c = [0i64; 6];
            c[span[0]] = s;
            c[span[1]] = r;
            let [x, y, z, t, u, w] = c;
            let f = md(z.pow(3) + t.pow(3) + u.pow(3) + w.pow(3));
            let g = md(x.pow(3) + y.pow(3) - z.pow(3) - t.pow(3));
            let df = [0, 0, 3 * z * z, 3 * t * t, 3 * u * u, 3 * w * w];
            let dg = [3 * x * x, 3 * y * y, -3 * z * z, -3 * t * t, 0, 0];
            let rank_le_one = (0..6).all(|i| (i + 1..6).all(|j| md(df[i] * dg[j] - df[j] * dg[i]) == 0));
            if f == 0 && g == 0 && rank_le_one {
                let lead = c.iter().position(|&v| v != 0).unwrap();
                let inv = (1..p).find(|k| md(k * c[lead]) == 1).unwrap();
                out.push(c.iter().map(|&v| md(v * inv) as u32).collect());
            }
        }
    }
    out.sort();
    out
}

#[test]
fn x33_default_triple_points_match_line_oracle() {
    let (a, b) = x33_nine_defaults();
    let x = build_x33_nine(a, b).unwrap();
    for p in [7u64, 13] {
        let field = FiniteField::prime(p).unwrap();
        let found = x.otps_over(&field).unwrap();
        assert_eq!(found, naive_x33_line_singularities(p as i64), "p = {p}");
        assert_eq!(found.len(), 9);
    }
    let rational = x.rational_otps();
    assert_eq!(rational.len(), 3);
    for pt in &rational {
        assert_eq!(classify_point(&x.variety, pt).unwrap().kind, SingularityKind::Otp);
    }
}

#[test]
fn x33_coefficient_conditions() {
    let (_, b) = x33_nine_defaults();
    assert!(matches!(
        build_x33_nine([q(2), q(3), q(1), q(1)], b.clone()),
        Err(ConstructionError::TripleLineConditionViolated { .. })
    ));
    assert!(matches!(build_x33_nine([q(1), q(1), q(0), q(1)], b), Err(ConstructionError::ZeroCoefficient(_))));
    let x = build_x33_nine([q(2), q(3), q(1), q(1)], [q(1), q(1), q(-2), q(-3)]).unwrap();
    // on L3 the cubic 2 z^3 + 3 t^3 has no rational root; L1 and L2 keep one each
    assert_eq!(x.rational_otps().len(), 2);
    for pt in x.rational_otps() {
        assert_eq!(classify_point(&x.variety, &pt).unwrap().kind, SingularityKind::Otp);
    }
    let field = FiniteField::prime(7).unwrap();
    let expected: Vec<Vec<u32>> = {
        // oracle: roots of c0 s^3 + c1 on each line, by direct evaluation
        let mut v = Vec::new();
        for line in &x.triple_lines {
            let (c0, c1) = (field.from_rational(&line.restriction.0).unwrap(), field.from_rational(&line.restriction.1).unwrap());
            for s in 0..7u32 {
                if (c0 as u64 * (s as u64).pow(3) + c1 as u64).is_multiple_of(7) {
                    let mut p = vec![0u32; 6];
                    p[line.span[0]] = s;
                    p[line.span[1]] = 1;
                    v.push(crate::geometry::canonicalize(&field, &[1; 6], &p).unwrap());
                }
            }
        }
        v.sort();
        v
    };
    assert_eq!(x.otps_over(&field).unwrap(), expected);
}

// ---------------------------------------------------------------- impose

/// Oracle: a form of degree d >= 2 is triple at p iff all its second
/// partial derivatives vanish there (Euler). Rows are those derivatives of
/// the monomials, evaluated directly.
fn second_derivative_rank(degree: u32, n: usize, points: &[Vec<Rational>]) -> (usize, usize) {
    let monomials = Monomial::all_of_degree(n, degree);
    let ctx = VariableContext::numbered("x", n);
    let mut rows = Vec::new();
    for p in points {
        for i in 0..n {
            for j in i..n {
                rows.push(
                    monomials
                        .iter()
                        .map(|m| {
                            let mono = Polynomial::from_terms(ctx.clone(), RationalField, [(m.clone(), q(1))]);
                            mono.partial_derivative(i).partial_derivative(j).evaluate(p)
                        })
                        .collect(),
                );
            }
        }
    }
    let rank = matrix_rank(&RationalField, rows);
    (rank, monomials.len() - rank)
}

fn six_points() -> Vec<Vec<Rational>> {
    let mut pts = vec![qs(&[1, 1, 1, 1, 1, 1])];
    for i in 0..5 {
        let mut e = vec![0; 6];
        e[i] = 1;
        pts.push(qs(&e));
    }
    pts
}

#[test]
fn quartics_triple_at_six_points_match_derivative_oracle() {
    let ambient = Ambient::projective(["x", "y", "z", "t", "u", "w"]);
    let pts = six_points();
    let system = impose_triple_points(4, &ambient, &RationalField, &pts).unwrap();
    let (rank, dim) = second_derivative_rank(4, 6, &pts);
    assert_eq!(system.rank, rank);
    assert_eq!(system.dimension(), dim);
    assert_eq!(system.conditions_per_point, 21);
    assert_eq!(system.conditions.len(), 6 * 21);
    for f in &system.basis {
        let v = hypersurface(f);
        for p in &pts {
            assert!(multiplicity_at(&v, p).unwrap().unwrap_or(u32::MAX) >= 3);
        }
    }
}

#[test]
fn plane_cubics_with_a_triple_point_are_binary_cubics() {
    let ambient = Ambient::projective(["x", "y", "z"]);
    let system = impose_triple_points(3, &ambient, &RationalField, &[qs(&[1, 0, 0])]).unwrap();
    // cubics in y, z only
    assert_eq!(system.dimension(), 4);
    assert!(system.basis.iter().all(|f| !f.involves(0)));
}

#[test]
fn impossible_and_malformed_systems() {
    let ambient = Ambient::projective(["x", "y", "z", "t"]);
    assert!(matches!(
        impose_triple_points(2, &ambient, &RationalField, &[qs(&[1, 0, 0, 0])]),
        Err(ConstructionError::EmptySolutionSpace { .. })
    ));
    assert!(matches!(
        impose_triple_points(3, &ambient, &RationalField, &[qs(&[1, 2, 0, 0]), qs(&[2, 4, 0, 0])]),
        Err(ConstructionError::DuplicatePoint(0, 1))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn solver_basis_is_triple_at_random_points(coords in proptest::collection::vec(-4i64..=4, 8)) {
        let ambient = Ambient::projective(["x", "y", "z", "t"]);
        let a = qs(&coords[..4]);
        let b = qs(&coords[4..]);
        prop_assume!(a.iter().any(|c| !c.is_zero()) && b.iter().any(|c| !c.is_zero()));
        let proportional = (0..4).all(|i| (0..4).all(|j| a[i].clone() * b[j].clone() == a[j].clone() * b[i].clone()));
        prop_assume!(!proportional);
        let pts = vec![a, b];
        let system = impose_triple_points(4, &ambient, &RationalField, &pts).unwrap();
        let (rank, dim) = second_derivative_rank(4, 4, &pts);
        prop_assert_eq!(system.rank, rank);
        prop_assert_eq!(system.dimension(), dim);
        for f in &system.basis {
            for p in &pts {
                prop_assert!(multiplicity_at(&hypersurface(f), p).unwrap().unwrap_or(u32::MAX) >= 3);
            }
        }
    }
}

// ---------------------------------------------------------------- x24 system

#[test]
fn quartic_system_shape() {
    let ambient = Ambient::projective(["x", "y", "z", "t", "u", "w"]);
    let system = quartic_system(&ambient).unwrap();
    let (_, free) = second_derivative_rank(4, 6, &six_points());
    // the two extra conditions are independent of the triple-point ones
    assert_eq!(system.dimension(), free - 2);
    let ones = qs(&[1, 1, 1, 1, 1, 1]);
    for f in &system.basis {
        let g = split_in_w(f);
        assert_eq!(g.len(), 4);
        assert!(f.coefficient(&Monomial::var(6, 5).mul(&Monomial::var(6, 5)).mul(&Monomial::var(6, 5)).mul(&Monomial::var(6, 5))).is_zero());
        assert!(g[0].evaluate(&ones).is_zero());
        // reassembling w^3 G1 + w^2 G2 + w G3 + G4 gives back F
        let w = Polynomial::var(ambient.ctx().clone(), RationalField, 5);
        let rebuilt = g.iter().fold(Polynomial::zero(ambient.ctx().clone(), RationalField), |acc, gi| acc.mul(&w).add(gi));
        assert_eq!(&rebuilt, f);
    }
}

#[test]
fn tetrahedron_detection_matches_evaluation_oracle() {
    let ambient = Ambient::projective(["x", "y", "z", "t", "u", "w"]);
    let system = quartic_system(&ambient).unwrap();
    let pts = quartic_triple_points();
    // oracle: a quartic vanishes on a 3-space iff it vanishes at 35 points
    // of it in general position; use points with coefficients 1..=4
    let vanishes_on_span = |f: &Polynomial, span: &[usize]| {
        (0..40).all(|k: i64| {
            let lambdas = [1 + k % 4, 1 + (k / 4) % 4, 1 + (k * 7 + 3) % 5, 2 + (k * k) % 7];
            let p: Vec<Rational> = (0..6).map(|c| span.iter().zip(lambdas).map(|(&i, l)| pts[i][c].clone() * q(l)).sum()).collect();
            f.evaluate(&p).is_zero()
        })
    };
    let mut seen_contained = false;
    for f in system.basis.iter().chain([&system.basis[0].add(&system.basis[1])]) {
        let oracle = (0..6)
            .flat_map(|a| (a + 1..6).flat_map(move |b| (b + 1..6).flat_map(move |c| (c + 1..6).map(move |d| [a, b, c, d]))))
            .find(|s| vanishes_on_span(f, s));
        seen_contained |= oracle.is_some();
        assert_eq!(contained_tetrahedron(f).unwrap(), oracle);
    }
    assert!(seen_contained, "some basis quartic contains a tetrahedron span");
}

// ---------------------------------------------------------------- projection

const X24_G2: &str = "z^2 - t*u + 2*w^2 + y*z";
const X24_G3: &str = "z^3 + t^3 + u^3 + w^3 + y^2*z";
const X24_G4: &str = "y^4 + z^4 - 3*t^4 + u*w^3 + 2*z*t*u*w";

/// `F2 = x y + G2`, `F4 = x^2 y t + x G3 + G4`, triple at `[1:0:0:0:0:0]`.
fn x24_with_triple_point_at_x() -> Variety {
    let ambient = Ambient::projective(["x", "y", "z", "t", "u", "w"]);
    let f2 = poly(&ambient, &format!("x*y + {X24_G2}"));
    let f4 = poly(&ambient, &format!("x^2*y*t + x*({X24_G3}) + {X24_G4}"));
    Variety::new(ambient, vec![f2, f4]).unwrap()
}

#[test]
fn quadric_quartic_projects_to_quintic_with_24_node_forms() {
    let v = x24_with_triple_point_at_x();
    let centre = qs(&[1, 0, 0, 0, 0, 0]);
    assert_eq!(classify_point(&v, &centre).unwrap().kind, SingularityKind::Otp);
    let proj = project_from_otp(&v, &centre).unwrap();
    assert_eq!(proj.shape, ProjectionShape::QuadricQuartic);
    assert_eq!(proj.source_degree, 8);
    assert_eq!(proj.image_degree, 5);
    assert_eq!(proj.expected_double_points, 24);
    // oracle: F4 - x t F2 = x (G3 - t G2) + G4, so the image is
    // G1 G4 - G2 (G3 - t G2) with G1 = y
    let p4 = Ambient::projective(["y", "z", "t", "u", "w"]);
    let g1 = poly(&p4, "y");
    let g2 = poly(&p4, X24_G2);
    let g3 = poly(&p4, X24_G3).sub(&poly(&p4, "t").mul(&g2));
    let g4 = poly(&p4, X24_G4);
    let oracle = g1.mul(&g4).sub(&g2.mul(&g3));
    let [image_eq] = proj.image.generators() else { panic!("one generator") };
    assert_eq!(image_eq.to_string(), oracle.to_string());
    let degrees: Vec<u32> = proj.double_point_forms.iter().map(|f| f.homogeneous_degree().unwrap()).collect();
    assert_eq!(degrees, vec![1, 2, 3, 4]);
    // a point of X off the centre maps into the image
    let on_x = proj.project_point(&qs(&[5, 0, 0, 0, 0, 0]));
    assert!(on_x.is_none());
}

#[test]
fn projection_rejects_non_triple_centres() {
    let a = Ambient::projective(["x", "y", "z", "t", "u", "w"]);
    let v = Variety::new(a.clone(), vec![poly(&a, "x*y + z^2 - w^2"), poly(&a, "y^4 + t^4 - u^4 + x^3*z - x^3*w")]).unwrap();
    // gradients (0,1,2,0,0,-2) and (0,0,1,0,0,-1) are independent
    let smooth = qs(&[1, 0, 1, 0, 0, 1]);
    assert_eq!(classify_point(&v, &smooth).unwrap().kind, SingularityKind::Smooth);
    assert!(matches!(project_from_otp(&v, &smooth), Err(ConstructionError::CenterNotTriple(_))));
    let x33 = build_x33_nine(x33_nine_defaults().0, x33_nine_defaults().1).unwrap();
    assert!(project_from_otp(&x33.variety, &x33.rational_otps()[0]).is_err());
}

#[test]
fn two_quadrics_and_a_cubic_project_to_a_33_with_12_node_forms() {
    let a = Ambient::projective(["x", "y", "z", "t", "u", "w", "v"]);
    let q1 = poly(&a, "x*y + y*z + t*u");
    let q2 = poly(&a, "x*z + u^2 + 2*t*v - w^2");
    // residual cubic t^3 - t^2 u + u^3 + w^3 + v^3: the binary part has
    // discriminant -23, so the cubic surface is smooth
    let f3 = poly(&a, "t^3 + u^3 + w^3 + v^3 + x*y*t");
    let v = Variety::new(a, vec![q1, q2, f3]).unwrap();
    let centre = qs(&[1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(classify_point(&v, &centre).unwrap().kind, SingularityKind::Otp);
    let proj = project_from_otp(&v, &centre).unwrap();
    assert_eq!(proj.shape, ProjectionShape::QuadricQuadricCubic);
    assert_eq!(proj.source_degree, 12);
    assert_eq!(proj.image_degree, 9);
    assert_eq!(proj.expected_double_points, 12);
    // oracle: F3 - t Q1 is free of x; the quadric is A2 B1 - B2 A1
    let p5 = Ambient::projective(["y", "z", "t", "u", "w", "v"]);
    let f3_free = poly(&p5, "t^3 + u^3 + w^3 + v^3 - t*(y*z + t*u)");
    let quadric = poly(&p5, "(y*z + t*u)*z - (u^2 + 2*t*v - w^2)*y");
    let normalize = |f: &Polynomial| {
        let (_, c) = f.leading_term().unwrap();
        f.scale(&(Rational::one() / c.clone())).to_string()
    };
    let got: std::collections::BTreeSet<String> = proj.image.generators().iter().map(normalize).collect();
    let want: std::collections::BTreeSet<String> = [normalize(&f3_free), normalize(&quadric)].into_iter().collect();
    assert_eq!(got, want);
}

// ---------------------------------------------------------------- pencil

fn x33_pencil() -> (Ambient, Pencil) {
    let a = Ambient::projective(["x", "y", "z", "t", "u", "w"]);
    let f = poly(&a, "z^3 + t^3 + u^3 + w^3");
    let g = poly(&a, "x^3 + y^3 - z^3 - t^3");
    let pencil = Pencil::new(f, g).unwrap();
    (a, pencil)
}

#[test]
fn pencil_on_a_plane_has_21_conditions_and_15_vanishing_classes() {
    let (a, pencil) = x33_pencil();
    let plane = LinearSubspace::new(vec![poly(&a, "x + y"), poly(&a, "z + t"), poly(&a, "u + w")]).unwrap();
    let sys = pencil_plane_conditions(&pencil, &plane).unwrap();
    assert_eq!(sys.conditions.len(), 21);
    assert_eq!(sys.vanishing.len(), 15);
    assert!(sys.vanishing.iter().all(PlaneCondition::is_identically_zero));
    let count = |c: ConditionClass| sys.conditions.iter().filter(|k| k.class == c).count();
    assert_eq!(count(ConditionClass::NormalNormal), 6);
    assert_eq!(count(ConditionClass::ParameterNormal), 6);
    assert_eq!(count(ConditionClass::PlaneNormal), 9);
    for c in sys.conditions.iter().filter(|c| !c.is_identically_zero()) {
        let expected = match c.class {
            ConditionClass::ParameterNormal => (2, 0),
            _ => (1, 1),
        };
        assert_eq!(c.bidegree(), Some(expected), "{:?} {:?}", c.class, c.variables);
    }
}

/// Oracle: the conditions vanish at `(p, alpha, beta)` exactly when every
/// second partial derivative of `alpha F + beta G`, as a function of the six
/// coordinates and the two parameters, vanishes there.
fn assert_conditions_match_hessian(a: &Ambient, pencil: &Pencil, plane: &LinearSubspace, samples: &[Vec<Rational>]) -> usize {
    let sys = pencil_plane_conditions(pencil, plane).unwrap();
    let plane_index: Vec<usize> = sys.plane_coordinates.iter().map(|n| a.ctx().index_of(n).unwrap()).collect();
    let (f, g) = pencil.generators();
    let big = VariableContext::uniform(["x", "y", "z", "t", "u", "w", "alpha", "beta"]);
    let embed: Vec<Option<usize>> = (0..6).map(Some).collect();
    let phi = Polynomial::var(big.clone(), RationalField, 6)
        .mul(&f.reindex(big.clone(), &embed).unwrap())
        .add(&Polynomial::var(big.clone(), RationalField, 7).mul(&g.reindex(big.clone(), &embed).unwrap()));
    let hessian: Vec<Polynomial> =
        (0..8).flat_map(|i| (i..8).map(move |j| (i, j))).map(|(i, j)| phi.partial_derivative(i).partial_derivative(j)).collect();
    let mut zeros = 0;
    for p in samples {
        for (al, be) in [(1, 0), (0, 1), (1, 1), (2, -1), (1, 3)] {
            let mut full = p.clone();
            full.extend([q(al), q(be)]);
            let oracle = hessian.iter().all(|h| h.evaluate(&full).is_zero());
            let mut at: Vec<Rational> = plane_index.iter().map(|&i| p[i].clone()).collect();
            at.extend([q(al), q(be)]);
            let all_vanish = sys.conditions.iter().all(|c| c.poly.evaluate(&at).is_zero());
            assert_eq!(all_vanish, oracle, "p = {p:?}, member ({al}, {be})");
            zeros += usize::from(oracle);
        }
    }
    zeros
}

#[test]
fn pencil_conditions_match_the_full_hessian_on_plane_times_line() {
    let (a, pencil) = x33_pencil();
    let plane = LinearSubspace::new(vec![poly(&a, "x + y"), poly(&a, "z + t"), poly(&a, "u + w")]).unwrap();
    let samples: Vec<Vec<Rational>> =
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 2, 3), (2, -1, 1), (0, 1, -1)].iter().map(|&(y, t, w)| qs(&[-y, y, -t, t, -w, w])).collect();
    // on this plane the gradients of F and G never vanish together
    assert_eq!(assert_conditions_match_hessian(&a, &pencil, &plane, &samples), 0);

    // a pencil through V(t, u, w) whose normal derivatives all vanish at
    // [1:0:0:0:0:0]
    let f = poly(&a, "t*(y^2 + z^2) + u*y*z + w*(z^2 + t^2)");
    let g = poly(&a, "t*y*z + u*y^2 + w*(y*z + u^2)");
    let pencil = Pencil::new(f, g).unwrap();
    let plane = LinearSubspace::new(vec![poly(&a, "t"), poly(&a, "u"), poly(&a, "w")]).unwrap();
    let samples: Vec<Vec<Rational>> =
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 2, 3), (2, -1, 1), (0, 1, -1)].iter().map(|&(x, y, z)| qs(&[x, y, z, 0, 0, 0])).collect();
    assert!(assert_conditions_match_hessian(&a, &pencil, &plane, &samples) > 0);
}

#[test]
fn plane_outside_the_base_locus_is_rejected() {
    let (a, pencil) = x33_pencil();
    let plane = LinearSubspace::new(vec![poly(&a, "x"), poly(&a, "z"), poly(&a, "u")]).unwrap();
    assert!(matches!(pencil_plane_conditions(&pencil, &plane), Err(ConstructionError::PlaneNotInPencil)));
    let line = LinearSubspace::new(vec![poly(&a, "x + y"), poly(&a, "z + t"), poly(&a, "u + w"), poly(&a, "y")]).unwrap();
    assert!(matches!(pencil_plane_conditions(&pencil, &line), Err(ConstructionError::UnknownFamily(_))));
}

// ---------------------------------------------------------------- nogo

#[test]
fn nogo_verdicts() {
    assert_eq!(nogo_check(&FamilyDescriptor::x2222()).unwrap(), NogoVerdict::Impossible("all generators degree 2".into()));
    assert_eq!(nogo_check(&FamilyDescriptor::x8()).unwrap(), NogoVerdict::Impossible("local equation begins with u^2".into()));
    assert_eq!(nogo_check(&FamilyDescriptor::x10()).unwrap(), NogoVerdict::Impossible("local equation begins with u^2".into()));
    let ci = |n, d: &[u32]| FamilyDescriptor::CompleteIntersection { ambient_dimension: n, degrees: d.to_vec() };
    for (n, d) in [(5, &[2u32, 4][..]), (5, &[3, 3]), (6, &[2, 2, 3]), (4, &[5])] {
        assert_eq!(nogo_check(&ci(n, d)).unwrap(), NogoVerdict::Possible, "{d:?}");
    }
    let sextic = FamilyDescriptor::WeightedHypersurface { weights: vec![1, 1, 1, 1, 2], degree: 6 };
    assert_eq!(nogo_check(&sextic).unwrap(), NogoVerdict::Possible);
    assert!(nogo_check(&ci(3, &[2, 2, 2])).is_err());
    let bad = FamilyDescriptor::WeightedHypersurface { weights: vec![1, 1, 1, 1, 3], degree: 7 };
    assert!(matches!(nogo_check(&bad), Err(ConstructionError::UnknownFamily(_))));
}

#[test]
fn forced_singular_point_of_four_quadrics_is_only_double() {
    let f5 = FiniteField::prime(5).unwrap();
    let e0: Vec<u32> = (0..8).map(|i| u32::from(i == 0)).collect();
    for seed in 1..=3 {
        let v = random_quadric_intersection(7, 4, &f5, seed).unwrap();
        assert!(v.contains(&e0));
        // oracle: the four gradients at the point span only three dimensions
        assert_eq!(v.jacobian_rank(&e0), 3);
        let census = singular_census_over(&v, &CensusOptions::default()).unwrap();
        assert!(census.max_multiplicity().is_some_and(|m| m < 3), "seed {seed}: {:?}", census.counts);
        let at_e0 = census.singular.iter().find(|s| s.coords == e0).expect("the forced point is singular");
        assert_eq!(at_e0.report.multiplicity, Some(2));
    }
}

/// Oracle for the weighted no-go: a degree-8 form on P(1,1,1,1,4) with a
/// `u^2` term has multiplicity at most 2 at every point of its zero locus.
#[test]
fn octic_points_are_at_most_double() {
    let a = Ambient::parse_header("ambient P(1,1,1,1,4) vars x y z t u").unwrap();
    let f = poly(&a, "(u - x^4)^2 - y^3*z^5 + x*y*z*t*(x^4 - t^4)");
    let v = hypersurface(&f);
    for p in [qs(&[1, 0, 0, 0, 1]), qs(&[1, 0, 1, 0, 1]), qs(&[0, 0, 1, 1, 0]), qs(&[1, 1, 0, 1, 1])] {
        if v.contains(&p) {
            assert!(multiplicity_at(&v, &p).unwrap().unwrap_or(0) <= 2, "{p:?}");
        }
    }
}

// ---------------------------------------------------------------- recipes

#[test]
fn recipe_ids_and_defaults() {
    for id in RecipeId::ALL {
        assert_eq!(id.name().parse::<RecipeId>().unwrap(), id);
        assert_eq!(id.name().replace('_', "-").parse::<RecipeId>().unwrap(), id);
        let r = ConstructionRecipe::default_for(id);
        r.validate().unwrap();
        assert!(!r.primes().unwrap().is_empty());
    }
    assert!("x34_nine".parse::<RecipeId>().is_err());
    let mut r = ConstructionRecipe::default_for(RecipeId::X24Seven);
    assert_eq!(r.plan.expected_otps, 7);
    assert_eq!(r.seed().unwrap(), Some(1));
    r.params.remove("cap");
    assert!(matches!(r.validate(), Err(ConstructionError::InvalidRecipe(_))));
    let mut r = ConstructionRecipe::default_for(RecipeId::X33Nine);
    assert_eq!(r.plan.expected_otps, 9);
    r.params.insert("primes".into(), "7,x".into());
    assert!(r.validate().is_err());
}

// ---------------------------------------------------------------- weighted sextics

fn wps() -> Ambient {
    Ambient::parse_header("ambient P(1,1,1,1,2) vars x y z t u").unwrap()
}

#[test]
fn sextic_normal_form_and_section() {
    let a = wps();
    let f = poly(&a, "2*u^3 + 6*u^2*x^2 - 4*u*y^4 + 2*x^6 + 2*z^6 - 2*t^6");
    let nf = sextic_normal_form(&f).unwrap();
    assert_eq!(nf.lead, q(2));
    assert_eq!(nf.g2, poly(&a, "3*x^2"));
    assert_eq!(nf.g4, poly(&a, "-2*y^4"));
    assert_eq!(nf.g6, poly(&a, "x^6 + z^6 - t^6"));
    let section = triple_point_locus_section(&hypersurface(&f)).unwrap();
    assert_eq!(section.form, poly(&a, "3*u + 3*x^2"));
    assert!(matches!(sextic_normal_form(&poly(&a, "u^2*x^2 + x^6")), Err(ConstructionError::MissingU3Term)));
    let p4 = Ambient::projective(["x", "y", "z", "t", "u"]);
    assert!(matches!(sextic_normal_form(&poly(&p4, "u^6")), Err(ConstructionError::WrongNormalForm(_))));
}

#[test]
fn triple_points_of_the_surface_lift_to_the_threefold() {
    // the sextic surface x^3 y^3 + z^6 + t^6 - ... with a triple point at
    // [1:0:0:0]: take G6 = x^3 (y^3 + z^3 + t^3) + y^6 + z^6 - t^6
    let s = Ambient::projective(["x", "y", "z", "t"]);
    let g6 = poly(&s, "x^3*(y^3 + z^3 + t^3) + y^6 + 2*z^6 - t^6");
    let declared = vec![qs(&[1, 0, 0, 0])];
    assert_eq!(classify_point(&hypersurface(&g6), &declared[0]).unwrap().kind, SingularityKind::Otp);
    let opts = SearchOptions { primes: vec![7, 13, 19], census_primes: 3, ..SearchOptions::default() };
    let x6 = build_x6_wps(&g6, &declared, &opts).unwrap();
    assert!(x6.reports.iter().all(|r| r.kind == SingularityKind::Otp));
    assert!(x6.otps_on_section);
    let bad = vec![qs(&[0, 1, 0, 0])];
    assert!(build_x6_wps(&g6, &bad, &opts).is_err());
}
