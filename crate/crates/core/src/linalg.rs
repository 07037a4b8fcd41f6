//! Dense exact linear algebra over any [`Field`].

use crate::rational::{primitive_integer, Rational};
use crate::valued_field::Field;

/// The rationals as a [`Field`], for polyhedral computations.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        a / b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// `row[j..] -= factor * pivot_row[j..]`, skipping zeros of the pivot row.
pub fn axpy<F: Field>(f: &F, row: &mut [F::Elem], factor: &F::Elem, pivot_row: &[F::Elem]) {
    for (x, p) in row.iter_mut().zip(pivot_row) {
        if !f.is_zero(p) {
            *x = f.sub(x, &f.mul(factor, p));
        }
    }
}

/// Gauss–Jordan elimination in place. Zero rows are dropped, pivots are
/// normalized to one, and rows come out sorted by pivot column. Columns are
/// scanned in the order given by `col_order` (all columns when `None`).
/// Returns the pivot column of each surviving row.
pub fn rref_ordered<F: Field>(
    f: &F,
    rows: &mut Vec<Vec<F::Elem>>,
    col_order: Option<&[usize]>,
) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let default: Vec<usize> = (0..ncols).collect();
    let order = col_order.unwrap_or(&default);
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.div(&f.one(), &rows[r][c]);
        if inv != f.one() {
            for x in rows[r].iter_mut() {
                if !f.is_zero(x) {
                    *x = f.mul(x, &inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = row[c].clone();
                axpy(f, row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    rref_ordered(f, rows, None)
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    if n == 0 {
        return f.one();
    }
    let mut a = m.to_vec();
    let mut prev = f.one();
    let mut negate = false;
    for k in 0..n {
        if f.is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !f.is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return f.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = f.sub(&f.mul(&a[k][k], &a[i][j]), &f.mul(&a[i][k], &a[k][j]));
                a[i][j] = f.div(&t, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        f.neg(&d)
    } else {
        d
    }
}

/// Basis of `{x : rows · x = 0}` (one vector per free column).
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&Rationals, &mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Reduced row echelon basis of the row space, each row scaled to a
/// primitive integer vector with positive pivot. Canonical for the subspace.
pub fn canonical_row_space(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    rref(&Rationals, &mut m);
    m.iter().map(|r| primitive_integer(r).0).collect()
}

/// Orthogonal projection of `v` onto the complement of the row space of `basis`.
pub fn project_off(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    // Solve the Gram system G μ = B v.
    let mut aug: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rational> = (0..k).map(|j| crate::rational::dot(&basis[i], &basis[j])).collect();
            row.push(crate::rational::dot(&basis[i], v));
            row
        })
        .collect();
    let pivots = rref(&Rationals, &mut aug);
    let mut mu = vec![Rational::zero(); k];
    for (row, &p) in aug.iter().zip(&pivots) {
        if p < k {
            mu[p] = row[k].clone();
        }
    }
    let mut out = v.to_vec();
    for (m, b) in mu.iter().zip(basis) {
        if !m.is_zero() {
            for (o, x) in out.iter_mut().zip(b) {
                *o -= &(m * x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rref_rank_det() {
        let mut m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&Rationals, &m), 2);
        let piv = rref(&Rationals, &mut m);
        assert_eq!(piv, vec![0, 1]);
        let a = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        assert_eq!(determinant(&Rationals, &a), q(1));
        let b = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(determinant(&Rationals, &b), q(-1));
    }

    #[test]
    fn nullspace_and_projection() {
        let ns = nullspace(&[vec![q(1), q(1), q(1)]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(crate::rational::dot(v, &[q(1), q(1), q(1)]).is_zero());
        }
        let p = project_off(&[q(1), q(0), q(0)], &[vec![q(1), q(1), q(1)]]);
        assert_eq!(p, vec![Rational::new(2, 3), Rational::new(-1, 3), Rational::new(-1, 3)]);
    }
}
