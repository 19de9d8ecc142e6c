//! Forms of a given degree with prescribed triple points, as the kernel of a
//! linear system on their coefficients.

use crate::algebra::Field;
use crate::geometry::{canonicalize, Ambient, ChartFrame};
use crate::polyring::{matrix_rank, nullspace, Monomial, Polynomial};

use super::ConstructionError;

/// Solution space of a linear system on the coefficients of degree-`d`
/// forms.
#[derive(Debug, Clone)]
pub struct TriplePointSystem<K: Field> {
    pub degree: u32,
    /// Unknowns: the coefficients of these monomials.
    pub monomials: Vec<Monomial>,
    /// One row per coefficient condition.
    pub conditions: Vec<Vec<K::Elem>>,
    /// Conditions contributed by each point: `1 + m + m(m+1)/2` in an
    /// `m`-dimensional chart.
    pub conditions_per_point: usize,
    /// Observed rank of the condition matrix.
    pub rank: usize,
    /// Basis of the solution space.
    pub basis: Vec<Polynomial<K>>,
}

impl<K: Field> TriplePointSystem<K> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The member `sum c_i basis_i`.
    pub fn combination(&self, coeffs: &[K::Elem]) -> Polynomial<K> {
        assert_eq!(coeffs.len(), self.basis.len(), "one coefficient per basis element");
        let mut it = self.basis.iter().zip(coeffs);
        let (b0, c0) = it.next().expect("nonempty basis");
        it.fold(b0.scale(c0), |acc, (b, c)| acc.add(&b.scale(c)))
    }
}

/// Monomial basis, condition rows and the number of conditions per point.
pub type ConditionRows<E> = (Vec<Monomial>, Vec<Vec<E>>, usize);

/// Coefficient conditions for multiplicity at least 3 at each point: every
/// local term of degree at most 2 vanishes. Returns the monomial basis and
/// the condition rows.
pub fn triple_point_conditions<K: Field>(
    degree: u32,
    ambient: &Ambient,
    field: &K,
    points: &[Vec<K::Elem>],
) -> Result<ConditionRows<K::Elem>, ConstructionError> {
    let canon: Vec<Vec<K::Elem>> = points
        .iter()
        .map(|p| canonicalize(field, ambient.weights(), p))
        .collect::<Result<_, _>>()?;
    for i in 0..canon.len() {
        for j in i + 1..canon.len() {
            if canon[i] == canon[j] {
                return Err(ConstructionError::DuplicatePoint(i, j));
            }
        }
    }
    let monomials = Monomial::all_of_weighted_degree(ambient.weights(), degree);
    let n = ambient.nvars();
    let mut rows = Vec::new();
    let mut per_point = 0;
    for p in points {
        let frame = ChartFrame::at(ambient, field, p)?;
        let m = n - 1;
        let local: Vec<Monomial> = (0..=2).flat_map(|e| Monomial::all_of_degree(m, e)).collect();
        per_point = local.len();
        let columns: Vec<Vec<K::Elem>> = monomials
            .iter()
            .map(|mono| {
                let f = Polynomial::from_terms(ambient.ctx().clone(), field.clone(), [(mono.clone(), field.one())]);
                let lf = frame.localize(&f).map(|g| g.truncate(2))?;
                Ok(lf.coefficients_in(&local))
            })
            .collect::<Result<_, ConstructionError>>()?;
        for r in 0..local.len() {
            rows.push(columns.iter().map(|c| c[r].clone()).collect());
        }
    }
    Ok((monomials, rows, per_point))
}

/// Forms of degree `degree` with multiplicity at least 3 at every point.
pub fn impose_triple_points<K: Field>(
    degree: u32,
    ambient: &Ambient,
    field: &K,
    points: &[Vec<K::Elem>],
) -> Result<TriplePointSystem<K>, ConstructionError> {
    impose_conditions(degree, ambient, field, points, &[])
}

/// As [`impose_triple_points`], with additional linear conditions on the
/// coefficients (rows indexed like the monomial basis).
pub fn impose_conditions<K: Field>(
    degree: u32,
    ambient: &Ambient,
    field: &K,
    points: &[Vec<K::Elem>],
    extra: &[Vec<K::Elem>],
) -> Result<TriplePointSystem<K>, ConstructionError> {
    let (monomials, mut conditions, conditions_per_point) = triple_point_conditions(degree, ambient, field, points)?;
    conditions.extend(extra.iter().cloned());
    let ncols = monomials.len();
    let rank = matrix_rank(field, conditions.clone());
    let basis: Vec<Polynomial<K>> = nullspace(field, conditions.clone(), ncols)
        .into_iter()
        .map(|v| {
            Polynomial::from_terms(
                ambient.ctx().clone(),
                field.clone(),
                monomials.iter().cloned().zip(v).filter(|(_, c)| !field.is_zero(c)),
            )
        })
        .collect();
    if basis.is_empty() {
        return Err(ConstructionError::EmptySolutionSpace { unknowns: ncols, rank });
    }
    Ok(TriplePointSystem { degree, monomials, conditions, conditions_per_point, rank, basis })
}
