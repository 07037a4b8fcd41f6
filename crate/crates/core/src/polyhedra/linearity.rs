//! Domains of linearity of `w ↦ min_j (a_j + m_j·w)`.

use std::collections::BTreeMap;

use super::{PolyhedralComplex, QPolyhedron, Row};
use crate::rational::{dot, Rational};

/// Terms `(a_j, m_j)`; terms sharing a slope are merged to the smallest offset,
/// which leaves the function unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalAffineFamily {
    pub terms: Vec<(Rational, Vec<Rational>)>,
}

impl TropicalAffineFamily {
    pub fn new(terms: Vec<(Rational, Vec<Rational>)>) -> Self {
        let mut best: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
        for (a, m) in terms {
            match best.get_mut(&m) {
                Some(old) if *old <= a => {}
                Some(old) => *old = a,
                None => {
                    best.insert(m, a);
                }
            }
        }
        TropicalAffineFamily { terms: best.into_iter().map(|(m, a)| (a, m)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.len())
    }

    pub fn eval(&self, w: &[Rational]) -> Rational {
        self.terms.iter().map(|(a, m)| a + &dot(m, w)).min().expect("nonempty family")
    }

    /// Indices of the terms attaining the minimum at `w`.
    pub fn active_set(&self, w: &[Rational]) -> Vec<usize> {
        let vals: Vec<Rational> = self.terms.iter().map(|(a, m)| a + &dot(m, w)).collect();
        let min = vals.iter().min().cloned().unwrap();
        (0..vals.len()).filter(|&i| vals[i] == min).collect()
    }

    /// Closed region where term `j` is minimal.
    pub fn region(&self, j: usize) -> QPolyhedron {
        let (aj, mj) = &self.terms[j];
        let rows: Vec<Row> = self
            .terms
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, (ak, mk))| {
                let mut r: Row = mj.iter().zip(mk).map(|(x, y)| x - y).collect();
                r.push(ak - aj);
                r
            })
            .collect();
        QPolyhedron::from_constraints(self.ambient(), &rows, &[])
    }
}

fn active_label(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// The complex of closed linearity domains and their faces. Each cell is
/// labelled with its active set, e.g. `{0,2}`.
pub fn linearity_complex(f: &TropicalAffineFamily) -> PolyhedralComplex {
    let n = f.ambient();
    let cells: Vec<(QPolyhedron, Option<String>)> = (0..f.terms.len())
        .map(|j| f.region(j))
        .filter(|p| p.dim() == n as isize)
        .map(|p| (p, None))
        .collect();
    let mut cx = PolyhedralComplex::from_cells(n, cells);
    for i in 0..cx.cells.len() {
        let x = cx.cells[i].relative_interior_point().unwrap();
        cx.labels[i] = Some(active_label(&f.active_set(&x)));
    }
    cx
}

/// Cells where the minimum is attained at least twice.
pub fn nonlinearity_locus(f: &TropicalAffineFamily) -> PolyhedralComplex {
    let cx = linearity_complex(f);
    let n = f.ambient() as isize;
    cx.subcomplex(|i| cx.cells[i].dim() < n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| Rational::from_int(a)).collect()
    }

    #[test]
    fn tropical_line() {
        let f = TropicalAffineFamily::new(vec![
            (Rational::zero(), q(&[1, 0])),
            (Rational::zero(), q(&[0, 1])),
            (Rational::zero(), q(&[0, 0])),
        ]);
        let cx = linearity_complex(&f);
        assert_eq!(cx.f_vector(), vec![1, 3, 3]);
        cx.check_axioms().unwrap();
        let loc = nonlinearity_locus(&f);
        assert_eq!(loc.f_vector(), vec![1, 3]);
        let mut rays: Vec<Vec<Rational>> = loc.cells.iter().filter(|c| c.dim() == 1).map(|c| c.rays[0].clone()).collect();
        rays.sort();
        assert_eq!(rays, vec![q(&[-1, -1]), q(&[0, 1]), q(&[1, 0])]);
    }

    #[test]
    fn single_term_and_duplicates() {
        let f = TropicalAffineFamily::new(vec![(Rational::one(), q(&[1, 0])), (Rational::zero(), q(&[1, 0]))]);
        assert_eq!(f.terms.len(), 1);
        assert_eq!(f.terms[0].0, Rational::zero());
        assert_eq!(linearity_complex(&f).len(), 1);
        assert!(nonlinearity_locus(&f).is_empty());
    }
}
