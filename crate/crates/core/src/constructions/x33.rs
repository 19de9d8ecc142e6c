//! Complete intersection of two diagonal cubics in P^5 whose pencil has
//! three members with a triple line each.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{Field, FiniteField, Rational, RationalField};
use crate::geometry::{Ambient, Variety};
use crate::polyring::{Monomial, Polynomial};

use super::{int, ConstructionError};

pub const X33_VARIABLES: [&str; 6] = ["x", "y", "z", "t", "u", "w"];

/// A line along which one member of the pencil is triple.
#[derive(Debug, Clone, Serialize)]
pub struct TripleLine {
    pub name: String,
    /// Coordinates vanishing on the line.
    pub vanishing: Vec<String>,
    /// The two coordinates spanning the line.
    pub span: [usize; 2],
    /// Pencil parameters `(alpha, beta)` of the member triple along it.
    #[serde(serialize_with = "crate::constructions::x33::ser_pair")]
    pub member: (Rational, Rational),
    /// Binary cubic `c0 s^3 + c1 r^3` cut on the line by the other members.
    #[serde(skip)]
    pub restriction: (Rational, Rational),
}

pub(crate) fn ser_pair<S: serde::Serializer>(p: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq([p.0.to_string(), p.1.to_string()])
}

#[derive(Debug, Clone)]
pub struct X33Nine {
    pub variety: Variety,
    pub a: [Rational; 4],
    pub b: [Rational; 4],
    pub triple_lines: Vec<TripleLine>,
}

/// `a = (1,1,1,1)`, `b = (1,1,-1,-1)`.
pub fn x33_nine_defaults() -> ([Rational; 4], [Rational; 4]) {
    ([int(1), int(1), int(1), int(1)], [int(1), int(1), int(-1), int(-1)])
}

fn diagonal(ambient: &Ambient, coeffs: &[(usize, &Rational)]) -> Polynomial {
    Polynomial::from_terms(
        ambient.ctx().clone(),
        RationalField,
        coeffs.iter().map(|&(i, c)| (Monomial::var(6, i).mul(&Monomial::var(6, i)).mul(&Monomial::var(6, i)), c.clone())),
    )
}

/// `V(a1 z^3 + a2 t^3 + a3 u^3 + a4 w^3, b1 x^3 + b2 y^3 + b3 z^3 + b4 t^3)`.
pub fn build_x33_nine(a: [Rational; 4], b: [Rational; 4]) -> Result<X33Nine, ConstructionError> {
    for (name, c) in ["a1", "a2", "a3", "a4"].iter().zip(&a).chain(["b1", "b2", "b3", "b4"].iter().zip(&b)) {
        if c.is_zero() {
            return Err(ConstructionError::ZeroCoefficient((*name).into()));
        }
    }
    if a[0] != -b[2].clone() || a[1] != -b[3].clone() {
        return Err(ConstructionError::TripleLineConditionViolated {
            a1: a[0].to_string(),
            b3: b[2].to_string(),
            a2: a[1].to_string(),
            b4: b[3].to_string(),
        });
    }
    let ambient = Ambient::projective(X33_VARIABLES);
    let f = diagonal(&ambient, &[(2, &a[0]), (3, &a[1]), (4, &a[2]), (5, &a[3])]);
    let g = diagonal(&ambient, &[(0, &b[0]), (1, &b[1]), (2, &b[2]), (3, &b[3])]);
    let variety = Variety::new(ambient, vec![f, g])?;
    let names = |v: &[usize]| v.iter().map(|&i| X33_VARIABLES[i].to_string()).collect();
    let triple_lines = vec![
        TripleLine {
            name: "L1".into(),
            vanishing: names(&[2, 3, 4, 5]),
            span: [0, 1],
            member: (int(1), int(0)),
            restriction: (b[0].clone(), b[1].clone()),
        },
        TripleLine {
            name: "L2".into(),
            vanishing: names(&[0, 1, 2, 3]),
            span: [4, 5],
            member: (int(0), int(1)),
            restriction: (a[2].clone(), a[3].clone()),
        },
        TripleLine {
            name: "L3".into(),
            vanishing: names(&[0, 1, 4, 5]),
            span: [2, 3],
            member: (int(1), int(1)),
            restriction: (a[0].clone(), a[1].clone()),
        },
    ];
    Ok(X33Nine { variety, a, b, triple_lines })
}

/// Rational cube root, when it exists.
fn rational_cbrt(q: &Rational) -> Option<Rational> {
    let root = |n: &num_bigint::BigInt| {
        let r = if n.is_negative() { -(-n).cbrt() } else { n.cbrt() };
        (&r * &r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

impl X33Nine {
    /// Triple points with rational coordinates: on each line, the roots of
    /// `c0 s^3 + c1 r^3` with `s/r` rational.
    pub fn rational_otps(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for line in &self.triple_lines {
            let (c0, c1) = &line.restriction;
            if let Some(r) = rational_cbrt(&(-c1.clone() / c0.clone())) {
                let mut p = vec![int(0); 6];
                p[line.span[0]] = r;
                p[line.span[1]] = int(1);
                out.push(p);
            }
        }
        out
    }

    /// The triple points rational over a finite field, found by solving the
    /// binary cubic on each line directly.
    pub fn otps_over(&self, field: &FiniteField) -> Result<Vec<Vec<u32>>, ConstructionError> {
        let mut out = Vec::new();
        for line in &self.triple_lines {
            let c0 = field.from_rational(&line.restriction.0)?;
            let c1 = field.from_rational(&line.restriction.1)?;
            for i in 0..field.size() {
                let s = field.element(i);
                if field.is_zero(&field.add(&field.mul(&c0, &field.pow(&s, 3)), &c1)) {
                    let mut p = vec![0u32; 6];
                    p[line.span[0]] = s;
                    p[line.span[1]] = field.one();
                    out.push(crate::geometry::canonicalize(field, &[1; 6], &p)?);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}
