//! Second-derivative conditions for a member of a pencil of cubics to be
//! triple at a point of a plane contained in every member.
//!
//! In coordinates where the plane is `V(n1, n2, n3)` with plane coordinates
//! `p1, p2, p3`, the pencil is `alpha F + beta G` on `Pi x P^1`. The second
//! derivatives in the parameter and plane directions vanish identically on
//! the plane; the remaining 21 classes (normal-normal, parameter-normal and
//! plane-normal) are the conditions.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Field, Rational, RationalField};
use crate::geometry::{restrict_to_subspace, LinearSubspace, Pencil};
use crate::polyring::{decompose_in_linear_ideal, reduced_row_echelon, Monomial, Polynomial, VariableContext};

use super::ConstructionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ConditionClass {
    ParameterParameter,
    PlanePlane,
    ParameterPlane,
    NormalNormal,
    ParameterNormal,
    PlaneNormal,
}

impl ConditionClass {
    /// Classes that vanish identically once restricted to the plane.
    pub fn vanishes_on_plane(self) -> bool {
        matches!(self, Self::ParameterParameter | Self::PlanePlane | Self::ParameterPlane)
    }
}

#[derive(Debug, Clone)]
pub struct PlaneCondition {
    pub class: ConditionClass,
    /// The two differentiation variables.
    pub variables: (String, String),
    /// Polynomial on `Pi x P^1` in the plane coordinates and `alpha, beta`.
    pub poly: Polynomial,
}

impl PlaneCondition {
    pub fn is_identically_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Degree in the plane coordinates and in the pencil parameters, `None`
    /// for the zero polynomial or a non-bihomogeneous one.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut degs = self.poly.terms().map(|(m, _)| {
            let e = m.exponents();
            (e[..3].iter().map(|&x| x as u32).sum::<u32>(), e[3..].iter().map(|&x| x as u32).sum::<u32>())
        });
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

#[derive(Debug, Clone)]
pub struct PencilOnPlane {
    pub plane: LinearSubspace,
    pub plane_coordinates: Vec<String>,
    pub normal_coordinates: Vec<String>,
    /// Ring of `Pi x P^1`: plane coordinates, then `alpha, beta`.
    pub ring: Arc<VariableContext>,
    /// The 21 conditions, some possibly zero for special pencils.
    pub conditions: Vec<PlaneCondition>,
    /// The 15 classes vanishing identically on the plane, kept for
    /// inspection.
    pub vanishing: Vec<PlaneCondition>,
}

fn invert(field: &RationalField, m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().cloned().chain((0..n).map(|j| if i == j { field.one() } else { field.zero() })).collect())
        .collect();
    let (rows, pivots) = reduced_row_echelon(field, aug);
    (pivots.len() == n && pivots[n - 1] == n - 1).then(|| rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The condition system of the pencil on the plane.
pub fn pencil_plane_conditions(pencil: &Pencil, plane: &LinearSubspace) -> Result<PencilOnPlane, ConstructionError> {
    let (f, g) = pencil.generators();
    let ctx = f.ctx().clone();
    let n = ctx.len();
    let forms = plane.forms();
    if forms.len() + 3 != n || ctx.weights().iter().any(|&w| w != 1) {
        return Err(ConstructionError::UnknownFamily(format!("a plane needs {} independent linear forms", n.saturating_sub(3))));
    }
    if !restrict_to_subspace(f, plane).is_zero() || !restrict_to_subspace(g, plane).is_zero() {
        return Err(ConstructionError::PlaneNotInPencil);
    }
    let field = RationalField;
    let free = decompose_in_linear_ideal(f, forms).free;
    // new coordinates: plane coordinates (the free variables), then the forms
    let mut rows: Vec<Vec<Rational>> = free.iter().map(|&j| (0..n).map(|i| field.from_i64((i == j) as i64)).collect()).collect();
    rows.extend(forms.iter().map(|l| (0..n).map(|j| l.coefficient(&Monomial::var(n, j))).collect()));
    let inverse = invert(&field, &rows).expect("independent forms complete to a basis");
    let plane_names: Vec<String> = free.iter().map(|&j| ctx.names()[j].clone()).collect();
    let normal_names: Vec<String> = forms
        .iter()
        .enumerate()
        .map(|(k, l)| match l.terms().collect::<Vec<_>>().as_slice() {
            [(m, _)] => ctx.names()[m.exponents().iter().position(|&e| e == 1).expect("linear")].clone(),
            _ => format!("n{}", k + 1),
        })
        .collect();
    let mut names: Vec<String> = plane_names.iter().chain(&normal_names).cloned().collect();
    names.extend(["alpha".to_string(), "beta".to_string()]);
    let full = VariableContext::uniform(names);
    let embed = (0..n).map(Some).collect::<Vec<_>>();
    let moved = |h: &Polynomial| -> Result<Polynomial, ConstructionError> {
        Ok(h.substitute_linear(&inverse)?.reindex(full.clone(), &embed).expect("same arity"))
    };
    let alpha = Polynomial::var(full.clone(), field, n);
    let beta = Polynomial::var(full.clone(), field, n + 1);
    let total = alpha.mul(&moved(f)?).add(&beta.mul(&moved(g)?));
    let ring = VariableContext::uniform(plane_names.iter().cloned().chain(["alpha".to_string(), "beta".to_string()]));
    let restrict_map: Vec<Option<usize>> = (0..n + 2)
        .map(|i| match i {
            i if i < 3 => Some(i),
            i if i < n => None,
            i => Some(i - n + 3),
        })
        .collect();
    let normal: Vec<usize> = (3..n).collect();
    let plane_vars: Vec<usize> = (0..3).collect();
    let params = [n, n + 1];
    let full_names = full.names().to_vec();
    let condition = |class: ConditionClass, a: usize, b: usize| {
        let d = total.partial_derivative(a).partial_derivative(b).set_to_zero(&normal);
        PlaneCondition {
            class,
            variables: (full_names[a].clone(), full_names[b].clone()),
            poly: d.reindex(ring.clone(), &restrict_map).expect("normal coordinates set to zero"),
        }
    };
    let pairs = |xs: &[usize], ys: &[usize], same: bool| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &a) in xs.iter().enumerate() {
            for &b in if same { &ys[i..] } else { ys } {
                out.push((a, b));
            }
        }
        out
    };
    let classes = [
        (ConditionClass::ParameterParameter, pairs(&params, &params, true)),
        (ConditionClass::PlanePlane, pairs(&plane_vars, &plane_vars, true)),
        (ConditionClass::ParameterPlane, pairs(&params, &plane_vars, false)),
        (ConditionClass::NormalNormal, pairs(&normal, &normal, true)),
        (ConditionClass::ParameterNormal, pairs(&params, &normal, false)),
        (ConditionClass::PlaneNormal, pairs(&plane_vars, &normal, false)),
    ];
    let mut conditions = Vec::new();
    let mut vanishing = Vec::new();
    for (class, list) in classes {
        for (a, b) in list {
            let c = condition(class, a, b);
            if class.vanishes_on_plane() {
                debug_assert!(c.poly.is_zero());
                vanishing.push(c);
            } else {
                conditions.push(c);
            }
        }
    }
    Ok(PencilOnPlane {
        plane: plane.clone(),
        plane_coordinates: plane_names,
        normal_coordinates: normal_names,
        ring,
        conditions,
        vanishing,
    })
}
