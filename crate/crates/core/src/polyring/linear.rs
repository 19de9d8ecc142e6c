//! Dense linear algebra over a [`Field`] and reduction modulo ideals of
//! linear forms.

use crate::algebra::Field;

use super::{Monomial, Polynomial};

/// Reduced row echelon form of a dense matrix.
#[derive(Debug, Clone)]
pub struct RowEchelon<E> {
    pub rows: Vec<Vec<E>>,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
    /// `transform * original = rows` (restricted to the nonzero rows).
    pub transform: Vec<Vec<E>>,
}

impl<E: Clone> RowEchelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination. Columns are scanned left to right.
pub fn row_echelon<K: Field>(field: &K, mut rows: Vec<Vec<K::Elem>>) -> RowEchelon<K::Elem> {
    let m = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut transform: Vec<Vec<K::Elem>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, piv);
        transform.swap(r, piv);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for x in transform[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let (pivot_row, pivot_transform) = (rows[r].clone(), transform[r].clone());
        for (i, (row, trow)) in rows.iter_mut().zip(transform.iter_mut()).enumerate() {
            if i == r || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
            for (x, p) in trow.iter_mut().zip(&pivot_transform) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    transform.truncate(r);
    RowEchelon { rows, pivots, transform }
}

/// Rank without tracking the transformation.
pub fn matrix_rank<K: Field>(field: &K, mut rows: Vec<Vec<K::Elem>>) -> usize {
    let m = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        let pivot_row: Vec<K::Elem> = rows[r].iter().map(|x| field.mul(x, &inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for j in col..ncols {
                let t = field.mul(&factor, &pivot_row[j]);
                row[j] = field.sub(&row[j], &t);
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

/// Basis of `{v : A v = 0}` for the `ncols`-column matrix `rows`.
pub fn nullspace<K: Field>(field: &K, rows: Vec<Vec<K::Elem>>, ncols: usize) -> Vec<Vec<K::Elem>> {
    let ech = row_echelon(field, rows);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in ech.pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &c) in ech.pivots.iter().enumerate() {
            v[c] = field.neg(&ech.rows[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// `f = sum quotients[i] * forms[i] + remainder`, with the remainder free of
/// the pivot variables.
#[derive(Debug, Clone)]
pub struct LinearReduction<K: Field> {
    pub quotients: Vec<Polynomial<K>>,
    pub remainder: Polynomial<K>,
    /// Variables eliminated by the reduction, one per independent form.
    pub pivots: Vec<usize>,
    /// Variables surviving in the remainder, in increasing order.
    pub free: Vec<usize>,
}

/// Divides `f` by the ideal generated by linear forms. The forms need not be
/// independent; dependent ones receive zero quotients.
pub fn decompose_in_linear_ideal<K: Field>(f: &Polynomial<K>, forms: &[Polynomial<K>]) -> LinearReduction<K> {
    let field = f.field().clone();
    let ctx = f.ctx().clone();
    let n = ctx.len();
    let rows: Vec<Vec<K::Elem>> = forms
        .iter()
        .map(|l| (0..n).map(|j| l.coefficient(&Monomial::var(n, j))).collect())
        .collect();
    let ech = row_echelon(&field, rows);
    let reduced_forms: Vec<Polynomial<K>> = ech
        .rows
        .iter()
        .map(|row| {
            Polynomial::from_terms(
                ctx.clone(),
                field.clone(),
                row.iter().enumerate().map(|(j, c)| (Monomial::var(n, j), c.clone())),
            )
        })
        .collect();
    let pivots = ech.pivots.clone();
    let mut rem = f.clone();
    let mut partial: Vec<Polynomial<K>> = vec![Polynomial::zero(ctx.clone(), field.clone()); pivots.len()];
    loop {
        let hit = rem.terms().rev().find_map(|(m, c)| {
            pivots
                .iter()
                .position(|&v| m.0[v] > 0)
                .map(|i| (m.clone(), c.clone(), i))
        });
        let Some((m, c, i)) = hit else { break };
        let mut cofactor = m.clone();
        cofactor.0[pivots[i]] -= 1;
        rem = rem.sub(&reduced_forms[i].mul_monomial(&cofactor, &c));
        partial[i].add_term(cofactor, c);
    }
    let quotients = (0..forms.len())
        .map(|k| {
            let mut q = Polynomial::zero(ctx.clone(), field.clone());
            for (i, p) in partial.iter().enumerate() {
                q = q.add(&p.scale(&ech.transform[i][k]));
            }
            q
        })
        .collect();
    let free = (0..n).filter(|v| !pivots.contains(v)).collect();
    LinearReduction { quotients, remainder: rem, pivots, free }
}

/// Reduced row echelon form without the transformation matrix; returns the
/// nonzero rows and their pivot columns.
pub fn reduced_row_echelon<K: Field>(field: &K, mut rows: Vec<Vec<K::Elem>>) -> (Vec<Vec<K::Elem>>, Vec<usize>) {
    let m = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        for x in rows[r][col..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for j in col..ncols {
                let t = field.mul(&factor, &pivot_row[j]);
                row[j] = field.sub(&row[j], &t);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}
