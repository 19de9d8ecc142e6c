use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::algebra::{FiniteField, Rational};

fn wps() -> Arc<VariableContext> {
    VariableContext::new(["x", "y", "z", "t", "u"], vec![1, 1, 1, 1, 2]).unwrap()
}

fn p5() -> Arc<VariableContext> {
    VariableContext::uniform(["x", "y", "z", "t", "u", "w"])
}

fn parse(s: &str, ctx: &Arc<VariableContext>) -> Polynomial {
    parse_polynomial(s, ctx).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn weighted_degree_examples() {
    let ctx = wps();
    assert_eq!(parse("u^3 + x^6", &ctx).weighted_degree(), Ok(WeightedDegree::Homogeneous(6)));
    let p3 = VariableContext::uniform(["x", "y", "z", "t"]);
    assert_eq!(parse("x^2*y + y^3", &p3).weighted_degree(), Ok(WeightedDegree::Homogeneous(3)));
    assert_eq!(parse("x + u", &ctx).weighted_degree(), Ok(WeightedDegree::NotHomogeneous));
    assert_eq!(Polynomial::zero(ctx, RationalField).weighted_degree(), Err(PolyError::ZeroPolynomial));
}

#[test]
fn derivative_examples() {
    let ctx = wps();
    let f = parse("u^3 + u^2*(x^2 + y*z - t^2)", &ctx);
    let du = f.partial_derivative(4);
    assert_eq!(du, parse("3*u^2 + 2*u*(x^2 + y*z - t^2)", &ctx));
    // the second derivative in u is 6u + 2 G2
    assert_eq!(du.partial_derivative(4), parse("6*u + 2*(x^2 + y*z - t^2)", &ctx));
    assert!(parse("y^3", &ctx).partial_derivative(0).is_zero());
    let ctx6 = p5();
    assert_eq!(parse("x^3+y^3-z^3-t^3", &ctx6).partial_derivative(0), parse("3*x^2", &ctx6));
}

#[test]
fn linear_substitution_examples() {
    let ctx = VariableContext::uniform(["x", "y"]);
    let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
    assert_eq!(parse("x^2", &ctx).substitute_linear(&swap).unwrap(), parse("y^2", &ctx));

    // y -> y - x, compared through coefficient maps of the expansion
    let shear = vec![vec![q(1), q(0)], vec![q(-1), q(1)]];
    let f = parse("x^3 + y^3", &ctx).substitute_linear(&shear).unwrap();
    // x^3 + (y - x)^3 = 3x^2y - 3xy^2 + y^3, the x^3 terms cancel
    let expected = [(3u16, 0u16, 0i64), (2, 1, 3), (1, 2, -3), (0, 3, 1)];
    assert_eq!(f.num_terms(), 3);
    for (a, b, c) in expected {
        assert_eq!(f.coefficient(&Monomial(vec![a, b])), q(c));
    }

    let singular = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
    assert_eq!(parse("x", &ctx).substitute_linear(&singular), Err(PolyError::SingularMatrix));
    let w = wps();
    let mut mix = vec![vec![q(0); 5]; 5];
    for (i, row) in mix.iter_mut().enumerate() {
        row[i] = q(1);
    }
    mix[4][0] = q(1);
    assert!(matches!(parse("u", &w).substitute_linear(&mix), Err(PolyError::WeightMixing(..))));
}

#[test]
fn translate_and_back_is_identity() {
    let ctx = p5();
    let f = parse("x^2*y*z - 2/3*y^3*w + u^2*t*x", &ctx);
    let n = 6;
    let x = |i: usize| Polynomial::var(ctx.clone(), RationalField, i);
    // x_i -> x_i + c_i x_0 moves [1:0:..:0] to [1:c_1:..:c_5]
    let shifts = [0, 2, -1, 3, 0, 5];
    let fwd: Vec<Polynomial> = (0..n)
        .map(|i| if i == 0 { x(0) } else { x(i).add(&x(0).scale(&q(shifts[i]))) })
        .collect();
    let back: Vec<Polynomial> = (0..n)
        .map(|i| if i == 0 { x(0) } else { x(i).sub(&x(0).scale(&q(shifts[i]))) })
        .collect();
    let g = f.substitute(&fwd).unwrap().substitute(&back).unwrap();
    assert_eq!(g, f);
}

#[test]
fn discriminant_examples() {
    let ctx = VariableContext::uniform(["x", "b", "c"]);
    let f = parse("x^2 + x*b + c", &ctx);
    assert_eq!(f.quadratic_discriminant(0).unwrap(), parse("b^2 - 4*c", &ctx));
    let ctx6 = p5();
    let g1 = parse("y + 2*z", &ctx6);
    let g2 = parse("y*t - u^2", &ctx6);
    let g3 = parse("z^3 + w^3", &ctx6);
    let x = Polynomial::var(ctx6.clone(), RationalField, 0);
    let f = x.mul(&x).mul(&g1).add(&x.mul(&g2)).add(&g3);
    let four = q(4);
    assert_eq!(
        f.quadratic_discriminant(0).unwrap(),
        g2.mul(&g2).sub(&g1.mul(&g3).scale(&four))
    );
    let lin = x.mul(&g2).add(&g3);
    assert!(matches!(lin.quadratic_discriminant(0), Err(PolyError::WrongDegreeInVariable { degree: 1, .. })));
}

#[test]
fn grouping_examples() {
    let ctx = VariableContext::uniform(["x", "y"]);
    let f = parse("x^2*y + x*y^2 + y^3", &ctx);
    let groups = f.group_by_variable(0);
    let expected = [(2, "y"), (1, "y^2"), (0, "y^3")];
    assert_eq!(groups.len(), 3);
    for ((p, c), (ep, ec)) in groups.iter().zip(expected) {
        assert_eq!(*p, ep);
        assert_eq!(*c, parse(ec, &ctx));
    }
    let c = parse("7/2", &ctx);
    assert_eq!(c.group_by_variable(1), vec![(0, c.clone())]);

    // quartic through [1:0:..:0] grouped in x: no x^4 term
    let ctx6 = p5();
    let f4 = parse("x^3*(y+z) + x^2*(y*t - w^2) + x*(u^3) + y^4 - z*t^3", &ctx6);
    let powers: Vec<u32> = f4.group_by_variable(0).iter().map(|(p, _)| *p).collect();
    assert_eq!(powers, vec![3, 2, 1, 0]);
}

#[test]
fn parser_round_trip_and_errors() {
    let ctx = p5();
    let f = parse("x^3*y - 2/3*z^2*t + (u - w)^2", &ctx);
    assert_eq!(parse(&f.to_string(), &ctx), f);
    assert!(matches!(parse_polynomial("x + q", &ctx), Err(PolyError::Parse { column: 5, .. })));
    assert!(parse_polynomial("", &ctx).is_err());
    assert!(parse_polynomial("x +", &ctx).is_err());
    assert!(parse_polynomial("(x + y", &ctx).is_err());
}

#[test]
fn exact_division() {
    let ctx = p5();
    let a = parse("x + 2*y - z", &ctx);
    let b = parse("y^2 - t*u + 1/2*w^2", &ctx);
    assert_eq!(a.mul(&b).div_exact(&a), Some(b.clone()));
    assert_eq!(b.add(&parse("x", &ctx)).div_exact(&a), None);
}

#[test]
fn linear_ideal_reduction() {
    let ctx = p5();
    let l1 = parse("x + y", &ctx);
    let l2 = parse("z - 2*w", &ctx);
    let f = parse("x^2*u + y*z*w - 3*z^3 + t^3", &ctx);
    let red = decompose_in_linear_ideal(&f, &[l1.clone(), l2.clone()]);
    let recon = red.quotients[0].mul(&l1).add(&red.quotients[1].mul(&l2)).add(&red.remainder);
    assert_eq!(recon, f);
    for &v in &red.pivots {
        assert!(!red.remainder.involves(v));
    }
    // remainder is f restricted to x = -y, z = 2w
    let on_plane = parse("y^2*u + 2*y*w^2 - 24*w^3 + t^3", &ctx);
    assert_eq!(red.remainder, on_plane);
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..5).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Random weighted-homogeneous polynomial of the given degree in P(1,1,1,1,2).
fn arb_homogeneous(degree: u32) -> impl Strategy<Value = Polynomial> {
    let ctx = wps();
    let monos: Vec<Monomial> = all_weighted_monomials(ctx.weights(), degree);
    let k = monos.len();
    proptest::collection::vec((0..k, arb_rational()), 1..8).prop_map(move |picks| {
        Polynomial::from_terms(ctx.clone(), RationalField, picks.into_iter().map(|(i, c)| (monos[i].clone(), c)))
    })
}

fn all_weighted_monomials(weights: &[u32], degree: u32) -> Vec<Monomial> {
    (0..=degree)
        .flat_map(|d| Monomial::all_of_degree(weights.len(), d))
        .filter(|m| m.weighted_degree(weights) == degree)
        .collect()
}

fn arb_poly(ctx: Arc<VariableContext>) -> impl Strategy<Value = Polynomial> {
    let n = ctx.len();
    proptest::collection::vec((proptest::collection::vec(0u16..3, n), arb_rational()), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(ctx.clone(), RationalField, terms.into_iter().map(|(e, c)| (Monomial(e), c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_relation(f in (1u32..7).prop_flat_map(arb_homogeneous)) {
        prop_assume!(!f.is_zero());
        let d = match f.weighted_degree().unwrap() {
            WeightedDegree::Homogeneous(d) => d,
            WeightedDegree::NotHomogeneous => unreachable!(),
        };
        prop_assert_eq!(f.euler_sum(), f.scale(&q(d as i64)));
    }

    #[test]
    fn ring_axioms_and_evaluation(
        a in arb_poly(VariableContext::uniform(["x", "y", "z"])),
        b in arb_poly(VariableContext::uniform(["x", "y", "z"])),
        c in arb_poly(VariableContext::uniform(["x", "y", "z"])),
        pt in proptest::collection::vec(-5i64..6, 3),
    ) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        let ptq: Vec<Rational> = pt.iter().map(|&v| q(v)).collect();
        prop_assert_eq!(a.mul(&b).evaluate(&ptq), a.evaluate(&ptq) * b.evaluate(&ptq));
        let f7 = FiniteField::prime(7).unwrap();
        let (a7, b7) = (a.reduce_into(&f7).unwrap(), b.reduce_into(&f7).unwrap());
        let pt7: Vec<u32> = pt.iter().map(|&v| v.rem_euclid(7) as u32).collect();
        let prod = a.mul(&b).reduce_into(&f7).unwrap();
        prop_assert_eq!(prod.evaluate(&pt7), f7.mul(&a7.evaluate(&pt7), &b7.evaluate(&pt7)));
    }

    #[test]
    fn grouping_reexpands(a in arb_poly(VariableContext::uniform(["x", "y", "z"])), var in 0usize..3) {
        let ctx = a.ctx().clone();
        let x = Polynomial::var(ctx.clone(), RationalField, var);
        let mut acc = Polynomial::zero(ctx, RationalField);
        for (p, c) in a.group_by_variable(var) {
            prop_assert!(!c.involves(var));
            acc = acc.add(&x.pow(p).mul(&c));
        }
        prop_assert_eq!(acc, a);
    }

    #[test]
    fn linear_substitution_composes(
        a in arb_poly(VariableContext::uniform(["x", "y", "z"])),
        m in proptest::collection::vec(-2i64..3, 9),
        n in proptest::collection::vec(-2i64..3, 9),
    ) {
        let to_matrix = |v: &[i64]| -> Vec<Vec<Rational>> {
            (0..3).map(|i| (0..3).map(|j| q(v[3 * i + j])).collect()).collect()
        };
        let (mm, nn) = (to_matrix(&m), to_matrix(&n));
        let field = RationalField;
        prop_assume!(matrix_rank(&field, mm.clone()) == 3 && matrix_rank(&field, nn.clone()) == 3);
        // (f o M) o N = f o (M N)
        let prod: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| (0..3).map(|k| &mm[i][k] * &nn[k][j]).sum()).collect())
            .collect();
        let lhs = a.substitute_linear(&mm).unwrap().substitute_linear(&nn).unwrap();
        prop_assert_eq!(lhs, a.substitute_linear(&prod).unwrap());
    }
}

#[test]
fn weighted_monomial_enumeration_matches_filtered_oracle() {
    for (weights, d) in [(vec![1u32, 1, 1, 1, 2], 6u32), (vec![1, 1, 1, 2, 5], 10), (vec![1; 6], 4), (vec![2, 3], 1)] {
        let mut oracle = all_weighted_monomials(&weights, d);
        oracle.sort_by(|a, b| b.cmp(a));
        assert_eq!(Monomial::all_of_weighted_degree(&weights, d), oracle, "{weights:?} {d}");
    }
    assert_eq!(Monomial::all_of_weighted_degree(&[1; 6], 4).len(), 126);
}
