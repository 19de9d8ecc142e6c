//! Structural obstructions to ordinary triple points.
//!
//! At an ordinary triple point of a codimension-`c` complete intersection
//! the aligned local generators have leading forms of degrees
//! `1, ..., 1, 3`. A generator of degree at most 2 has local order at most
//! 2, and combinations of such generators stay in degree at most 2, so at
//! least one generator of degree 3 or more is required.
//!
//! A hypersurface of degree `2 w` in a weighted space whose top weight `w`
//! exceeds 1 must contain `u^2` to avoid the singular vertex; in any chart
//! at a smooth point the local equation then has the term `u^2` with
//! nonzero coefficient, so the multiplicity is at most 2.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Field, FiniteField};
use crate::geometry::{Ambient, Variety};
use crate::polyring::{Monomial, Polynomial, VariableContext};

use super::{seeded, ConstructionError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FamilyDescriptor {
    /// Complete intersection of the given degrees in P^n.
    CompleteIntersection { ambient_dimension: usize, degrees: Vec<u32> },
    /// Hypersurface of the given degree in a weighted projective space.
    WeightedHypersurface { weights: Vec<u32>, degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NogoVerdict {
    Possible,
    Impossible(String),
}

impl FamilyDescriptor {
    pub fn x2222() -> Self {
        Self::CompleteIntersection { ambient_dimension: 7, degrees: vec![2, 2, 2, 2] }
    }

    pub fn x8() -> Self {
        Self::WeightedHypersurface { weights: vec![1, 1, 1, 1, 4], degree: 8 }
    }

    pub fn x10() -> Self {
        Self::WeightedHypersurface { weights: vec![1, 1, 1, 2, 5], degree: 10 }
    }
}

fn unknown(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::UnknownFamily(msg.into())
}

pub fn nogo_check(family: &FamilyDescriptor) -> Result<NogoVerdict, ConstructionError> {
    match family {
        FamilyDescriptor::CompleteIntersection { ambient_dimension, degrees } => {
            if degrees.is_empty() || degrees.len() >= *ambient_dimension || degrees.contains(&0) {
                return Err(unknown(format!("degrees {degrees:?} in P^{ambient_dimension}")));
            }
            if degrees.iter().all(|&d| d == 2) {
                Ok(NogoVerdict::Impossible("all generators degree 2".into()))
            } else if degrees.iter().all(|&d| d <= 2) {
                Ok(NogoVerdict::Impossible("all generators of degree at most 2".into()))
            } else {
                Ok(NogoVerdict::Possible)
            }
        }
        FamilyDescriptor::WeightedHypersurface { weights, degree } => {
            let (&top, rest) = weights.split_last().ok_or_else(|| unknown("empty weight list"))?;
            if weights.len() < 3 || weights.contains(&0) || !rest.contains(&1) || rest.iter().any(|&w| w > top) {
                return Err(unknown(format!("weights {weights:?}")));
            }
            if top == 1 {
                let degrees = vec![*degree];
                return nogo_check(&FamilyDescriptor::CompleteIntersection { ambient_dimension: weights.len() - 1, degrees });
            }
            if degree % top != 0 {
                return Err(unknown(format!("degree {degree} is not a multiple of the top weight {top}")));
            }
            match degree / top {
                2 => Ok(NogoVerdict::Impossible("local equation begins with u^2".into())),
                k if k >= 3 => Ok(NogoVerdict::Possible),
                _ => Err(unknown(format!("degree {degree} equals the top weight"))),
            }
        }
    }
}

/// A random intersection of `count` quadrics in P^n over a prime field, as
/// close to a triple point at `[1:0:...:0]` as quadrics allow: every
/// generator passes through the point and the last one is singular there,
/// so the tangent space at the point has codimension `count - 1`.
pub fn random_quadric_intersection(
    ambient_dimension: usize,
    count: usize,
    field: &FiniteField,
    seed: u64,
) -> Result<Variety<FiniteField>, ConstructionError> {
    let n = ambient_dimension + 1;
    let ambient = Ambient::new(VariableContext::numbered("x", n))?;
    let mut rng = seeded(seed);
    let q = field.size();
    let generators = (0..count)
        .map(|i| {
            let singular = i + 1 == count;
            let terms = Monomial::all_of_degree(n, 2).into_iter().filter_map(|m| {
                let x0 = m.exponents()[0];
                // through the point: no x0^2; singular there: no x0 x_j either
                (x0 < 2 && !(singular && x0 == 1)).then(|| (m, field.element(rng.gen_range(0..q))))
            });
            Polynomial::from_terms(ambient.ctx().clone(), field.clone(), terms)
        })
        .collect();
    Ok(Variety::new(ambient, generators)?)
}
