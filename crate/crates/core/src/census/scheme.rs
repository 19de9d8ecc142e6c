//! Degree and reducedness of a zero-dimensional complete intersection over a
//! finite field.
//!
//! The Hilbert function of `R/I` is read off Macaulay matrices. Once it is
//! stable at the Bezout number `N` in two consecutive degrees `D, D+1`, and a
//! random linear form `h` multiplies `(R/I)_D` isomorphically onto
//! `(R/I)_{D+1}`, the scheme consists of `N` points (with multiplicity) off
//! `V(h)`. Multiplication by `l/h` for a second random form `l` is then an
//! `N x N` matrix whose characteristic polynomial is squarefree exactly when
//! the `N` points are distinct and reduced and `l/h` separates them.
//!
//! Reducedness over the algebraic closure of F_p implies reducedness of the
//! characteristic-zero scheme when the reduction stays a zero-dimensional
//! complete intersection of the same degrees: points may only merge under
//! specialization.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Field, FiniteField};
use crate::geometry::{restrict_to_subspace, LinearSubspace};
use crate::local::for_each_projective_point;
use crate::polyring::{reduced_row_echelon, Monomial, Polynomial};

use super::CensusError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSchemeCertificate {
    pub prime: u64,
    /// Product of the degrees of the forms.
    pub bezout: u64,
    /// Hilbert function of the quotient at the two checked degrees.
    pub hilbert: Vec<(u32, usize)>,
    /// The forms cut out a zero-dimensional scheme of degree `bezout`
    /// avoiding the random hyperplane used for the affine chart.
    pub zero_dimensional: bool,
    /// The characteristic polynomial of a random multiplication map is
    /// squarefree: `bezout` distinct reduced points.
    pub reduced: bool,
    /// Points rational over the field.
    pub rational_points: u64,
}

impl ZeroSchemeCertificate {
    /// True when the scheme is certified to be `n` distinct reduced points.
    pub fn certifies_distinct_points(&self, n: u64) -> bool {
        self.zero_dimensional && self.reduced && self.bezout == n
    }
}

fn split_linear(forms: &[Polynomial<FiniteField>]) -> Result<Vec<Polynomial<FiniteField>>, CensusError> {
    let (linear, rest): (Vec<_>, Vec<_>) = forms.iter().cloned().partition(|f| f.homogeneous_degree() == Some(1));
    let subspace = LinearSubspace::new(linear)?;
    Ok(rest.iter().map(|f| restrict_to_subspace(f, &subspace)).collect())
}

/// Points of `V(forms)` rational over the coefficient field.
pub fn count_rational_zeros(forms: &[Polynomial<FiniteField>]) -> Result<u64, CensusError> {
    let restricted = split_linear(forms)?;
    let Some(first) = restricted.first() else {
        return Ok(0);
    };
    let field = first.field().clone();
    let mut count = 0;
    for_each_projective_point(&field, first.nvars(), |pt| {
        if restricted.iter().all(|f| field.is_zero(&f.evaluate(pt))) {
            count += 1;
        }
        true
    });
    Ok(count)
}

/// Macaulay matrix of `forms` in degree `e`, reduced.
struct Graded {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// Non-pivot columns: a basis of the quotient in this degree.
    basis: Vec<usize>,
}

impl Graded {
    fn new(field: &FiniteField, forms: &[Polynomial<FiniteField>], nvars: usize, e: u32) -> Self {
        let monomials = Monomial::all_of_degree(nvars, e);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for f in forms {
            let d = f.homogeneous_degree().expect("homogeneous");
            if d > e {
                continue;
            }
            for shift in Monomial::all_of_degree(nvars, e - d) {
                let mut row = vec![0u32; monomials.len()];
                for (m, c) in f.terms() {
                    row[index[&m.mul(&shift)]] = *c;
                }
                rows.push(row);
            }
        }
        let (rows, pivots) = reduced_row_echelon(field, rows);
        let basis = (0..monomials.len()).filter(|c| !pivots.contains(c)).collect();
        Self { monomials, index, rows, pivots, basis }
    }

    /// Coordinates of a polynomial of this degree in the quotient basis.
    fn normal_form(&self, field: &FiniteField, f: &Polynomial<FiniteField>) -> Vec<u32> {
        let mut v = vec![0u32; self.monomials.len()];
        for (m, c) in f.terms() {
            v[self.index[m]] = *c;
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = field.sub(x, &field.mul(&c, r));
                }
            }
        }
        self.basis.iter().map(|&b| v[b]).collect()
    }
}

/// Solves `A X = B` for square invertible `A`; `None` when singular.
fn solve(field: &FiniteField, a: &[Vec<u32>], b: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let aug: Vec<Vec<u32>> = a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb).copied().collect()).collect();
    let (rows, pivots) = reduced_row_echelon(field, aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn poly_trim(mut p: Vec<u32>) -> Vec<u32> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Remainder of `a` modulo `b` (coefficients constant term first).
fn poly_rem(field: &FiniteField, mut a: Vec<u32>, b: &[u32]) -> Vec<u32> {
    let lead_inv = field.inv(b.last().expect("nonzero divisor")).expect("unit");
    while a.len() >= b.len() {
        let c = field.mul(a.last().expect("nonempty"), &lead_inv);
        let shift = a.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            a[shift + i] = field.sub(&a[shift + i], &field.mul(&c, bi));
        }
        a = poly_trim(a);
    }
    a
}

fn is_squarefree(field: &FiniteField, p: &[u32]) -> bool {
    let deriv: Vec<u32> = poly_trim(p.iter().enumerate().skip(1).map(|(i, c)| field.mul(c, &field.from_i64(i as i64))).collect());
    if deriv.is_empty() {
        return false;
    }
    let (mut a, mut b) = (poly_trim(p.to_vec()), deriv);
    while !b.is_empty() {
        let r = poly_rem(field, a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Certificate for the scheme `V(forms)`; linear forms are eliminated first.
pub fn zero_scheme_certificate(forms: &[Polynomial<FiniteField>], seed: u64) -> Result<ZeroSchemeCertificate, CensusError> {
    let restricted = split_linear(forms)?;
    let field = forms[0].field().clone();
    let prime = field.characteristic();
    let bezout: u64 = forms.iter().map(|f| f.homogeneous_degree().expect("homogeneous") as u64).product();
    let rational_points = count_rational_zeros(forms)?;
    let m = restricted.first().map_or(0, Polynomial::nvars);
    let not_zero_dim = |hilbert| ZeroSchemeCertificate { prime, bezout, hilbert, zero_dimensional: false, reduced: false, rational_points };
    if restricted.len() + 1 != m || restricted.iter().any(Polynomial::is_zero) {
        return Ok(not_zero_dim(Vec::new()));
    }
    let ctx = restricted[0].ctx().clone();
    let d: u32 = restricted.iter().map(|f| f.homogeneous_degree().expect("homogeneous") - 1).sum::<u32>().max(1);
    let low = Graded::new(&field, &restricted, m, d);
    let high = Graded::new(&field, &restricted, m, d + 1);
    let hilbert = vec![(d, low.basis.len()), (d + 1, high.basis.len())];
    let n = bezout as usize;
    if low.basis.len() != n || high.basis.len() != n {
        return Ok(not_zero_dim(hilbert));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order().expect("finite");
    let random_form = |rng: &mut ChaCha8Rng| {
        Polynomial::from_terms(
            ctx.clone(),
            field.clone(),
            (0..m).map(|i| (Monomial::var(m, i), field.element(rng.gen_range(0..q)))),
        )
    };
    let mut h_invertible = false;
    for _attempt in 0..4 {
        let h = random_form(&mut rng);
        let l = random_form(&mut rng);
        // columns are images of the quotient basis; stored transposed as rows
        let image = |form: &Polynomial<FiniteField>| -> Vec<Vec<u32>> {
            let cols: Vec<Vec<u32>> = low
                .basis
                .iter()
                .map(|&b| {
                    let mono = Polynomial::from_terms(ctx.clone(), field.clone(), [(low.monomials[b].clone(), 1u32)]);
                    high.normal_form(&field, &mono.mul(form))
                })
                .collect();
            (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
        };
        let Some(mult) = solve(&field, &image(&h), &image(&l)) else {
            continue;
        };
        h_invertible = true;
        // Krylov sequence of a random vector
        let mut v: Vec<u32> = (0..n).map(|_| field.element(rng.gen_range(0..q))).collect();
        let mut krylov = vec![v.clone()];
        for _ in 0..n {
            v = (0..n).map(|i| (0..n).fold(0, |acc, j| field.add(&acc, &field.mul(&mult[i][j], &v[j])))).collect();
            krylov.push(v.clone());
        }
        let system: Vec<Vec<u32>> = (0..n).map(|i| krylov[..n].iter().map(|k| k[i]).collect()).collect();
        let rhs: Vec<Vec<u32>> = (0..n).map(|i| vec![krylov[n][i]]).collect();
        // a singular Krylov system means a non-cyclic map (repeated
        // eigenvalues) or an unlucky vector; retry with fresh randomness
        let Some(a) = solve(&field, &system, &rhs) else {
            continue;
        };
        let mut charpoly: Vec<u32> = a.iter().map(|r| field.neg(&r[0])).collect();
        charpoly.push(1);
        let reduced = is_squarefree(&field, &charpoly);
        return Ok(ZeroSchemeCertificate { prime, bezout, hilbert, zero_dimensional: true, reduced, rational_points });
    }
    Ok(ZeroSchemeCertificate { prime, bezout, hilbert, zero_dimensional: h_invertible, reduced: false, rational_points })
}
