//! Polyhedral complexes: face closure, axiom check, refinement, support
//! comparison and quotient projection.

use std::collections::HashMap;

use super::{PolyKey, QPolyhedron, Row};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::rational::{dot, Rational};

/// Cells closed under taking faces, sorted by decreasing dimension then key.
/// `faces` lists the pairs `(i, j)` where cell `j` is a facet of cell `i`.
#[derive(Clone, Debug)]
pub struct PolyhedralComplex {
    pub ambient: usize,
    pub cells: Vec<QPolyhedron>,
    pub labels: Vec<Option<String>>,
    pub faces: Vec<(usize, usize)>,
    pub lineality: Vec<Vec<Rational>>,
}

impl PolyhedralComplex {
    pub fn empty(ambient: usize) -> Self {
        PolyhedralComplex { ambient, cells: Vec::new(), labels: Vec::new(), faces: Vec::new(), lineality: Vec::new() }
    }

    /// Closes the given cells under faces. Duplicate cells keep the first
    /// non-empty label; faces not listed get no label.
    pub fn from_cells(ambient: usize, cells: Vec<(QPolyhedron, Option<String>)>) -> Self {
        let mut by_key: HashMap<PolyKey, (QPolyhedron, Option<String>)> = HashMap::new();
        let mut expanded: Vec<(QPolyhedron, Option<String>)> = Vec::new();
        for (c, l) in cells {
            if c.is_empty() {
                continue;
            }
            let k = c.key();
            if let Some(slot) = by_key.get_mut(&k) {
                if slot.1.is_none() {
                    slot.1 = l;
                }
                continue;
            }
            by_key.insert(k, (c.clone(), l));
            expanded.push((c, None));
        }
        for (c, _) in &expanded {
            for f in c.faces() {
                by_key.entry(f.key()).or_insert((f, None));
            }
        }
        Self::assemble(ambient, by_key.into_values().collect())
    }

    /// Builds the structure for a set of cells already closed under faces.
    fn assemble(ambient: usize, mut cells: Vec<(QPolyhedron, Option<String>)>) -> Self {
        cells.sort_by(|a, b| b.0.dim().cmp(&a.0.dim()).then_with(|| a.0.key().cmp(&b.0.key())));
        let index: HashMap<PolyKey, usize> = cells.iter().enumerate().map(|(i, c)| (c.0.key(), i)).collect();
        let mut faces = Vec::new();
        for (i, (c, _)) in cells.iter().enumerate() {
            for f in c.facets() {
                if let Some(&j) = index.get(&f.key()) {
                    faces.push((i, j));
                }
            }
        }
        faces.sort();
        faces.dedup();
        let mut normals: Vec<Vec<Rational>> = Vec::new();
        for (c, _) in &cells {
            for r in c.equalities.iter().chain(&c.inequalities) {
                normals.push(r[..ambient].to_vec());
            }
        }
        let lineality = if cells.is_empty() {
            Vec::new()
        } else {
            crate::linalg::canonical_row_space(&nullspace(&normals, ambient))
        };
        let (cells, labels) = cells.into_iter().unzip();
        PolyhedralComplex { ambient, cells, labels, faces, lineality }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.cells.iter().map(|c| c.dim()).max().unwrap_or(-1)
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// Indices of cells that are not a proper face of another cell.
    pub fn maximal_indices(&self) -> Vec<usize> {
        let mut is_face = vec![false; self.cells.len()];
        for &(_, j) in &self.faces {
            is_face[j] = true;
        }
        (0..self.cells.len()).filter(|&i| !is_face[i]).collect()
    }

    pub fn maximal_cells(&self) -> Vec<&QPolyhedron> {
        self.maximal_indices().into_iter().map(|i| &self.cells[i]).collect()
    }

    /// Number of cells of each dimension, indexed by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dim();
        let mut f = vec![0; (d + 1).max(0) as usize];
        for c in &self.cells {
            f[c.dim() as usize] += 1;
        }
        f
    }

    pub fn count_dim(&self, d: isize) -> usize {
        self.cells.iter().filter(|c| c.dim() == d).count()
    }

    pub fn index_of(&self, p: &QPolyhedron) -> Option<usize> {
        let k = p.key();
        self.cells.iter().position(|c| c.key() == k)
    }

    /// The smallest cell containing `x` in its relative interior.
    pub fn cell_containing(&self, x: &[Rational]) -> Option<usize> {
        (0..self.cells.len()).rev().find(|&i| self.cells[i].contains_relint(x))
    }

    pub fn support_contains(&self, x: &[Rational]) -> bool {
        self.maximal_cells().iter().any(|c| c.contains(x))
    }

    /// Faces closed and pairwise intersections of cells are common faces.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let index: HashMap<PolyKey, usize> = self.cells.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
        if index.len() != self.cells.len() {
            return Err("duplicate cells".into());
        }
        for c in &self.cells {
            for f in c.faces() {
                if !index.contains_key(&f.key()) {
                    return Err(format!("face {f:?} of a cell is missing"));
                }
            }
        }
        let max = self.maximal_cells();
        for (i, a) in max.iter().enumerate() {
            for b in &max[i + 1..] {
                let x = a.intersect(b).map_err(|e| e.to_string())?;
                if x.is_empty() {
                    continue;
                }
                if !a.has_face(&x) || !b.has_face(&x) {
                    return Err(format!("intersection {x:?} is not a common face"));
                }
            }
        }
        Ok(())
    }

    /// Restriction to the cells selected by `keep`, closed under faces.
    pub fn subcomplex(&self, keep: impl Fn(usize) -> bool) -> Self {
        let cells = (0..self.cells.len())
            .filter(|&i| keep(i))
            .map(|i| (self.cells[i].clone(), self.labels[i].clone()))
            .collect();
        Self::from_cells(self.ambient, cells)
    }

    pub fn common_refinement(&self, other: &Self) -> Result<Self> {
        crate::poly::check_arity(self.ambient, other.ambient)?;
        let mut cells = Vec::new();
        for a in self.maximal_cells() {
            for b in other.maximal_cells() {
                let x = a.intersect(b)?;
                if !x.is_empty() {
                    cells.push((x, None));
                }
            }
        }
        Ok(Self::from_cells(self.ambient, cells))
    }

    fn cutting_rows(&self) -> Vec<Row> {
        let mut rows: Vec<Row> = Vec::new();
        for c in &self.cells {
            rows.extend(c.inequalities.iter().cloned());
            rows.extend(c.equalities.iter().cloned());
        }
        rows.sort();
        rows.dedup();
        rows
    }

    /// Points `x` in relative interiors of the chambers into which the
    /// hyperplanes of `cut` split the maximal cells of `self`.
    fn chamber_points(&self, cut: &[Row]) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for c in self.maximal_cells() {
            let mut stack = vec![(c.clone(), 0usize)];
            while let Some((p, start)) = stack.pop() {
                let mut split = None;
                for (k, r) in cut.iter().enumerate().skip(start) {
                    let (a, b) = r.split_at(r.len() - 1);
                    if p.sides(a, &b[0]) == (true, true) {
                        split = Some(k);
                        break;
                    }
                }
                match split {
                    None => out.extend(p.relative_interior_point()),
                    Some(k) => {
                        let r = &cut[k];
                        let neg: Row = r.iter().map(|x| -x).collect();
                        for side in [r.clone(), neg] {
                            let q = p.restrict(&[side], &[]);
                            if q.dim() == p.dim() {
                                stack.push((q, k + 1));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether both complexes have the same support; otherwise a point in
    /// exactly one of them.
    pub fn support_equal(&self, other: &Self) -> Result<(bool, Option<Vec<Rational>>)> {
        crate::poly::check_arity(self.ambient, other.ambient)?;
        for (a, b) in [(self, other), (other, self)] {
            for x in a.chamber_points(&b.cutting_rows()) {
                if !b.support_contains(&x) {
                    return Ok((false, Some(x)));
                }
            }
        }
        Ok((true, None))
    }

    /// Quotient by `R·d`: slices every cell by `x_k = 0` for the last `k` with
    /// `d_k ≠ 0` and deletes coordinate `k`.
    pub fn project_quotient(&self, d: &[Rational]) -> Result<Self> {
        crate::poly::check_arity(self.ambient, d.len())?;
        let Some(k) = d.iter().rposition(|x| !x.is_zero()) else {
            return Err(Error::DirectionNotInLineality);
        };
        if !self.cells.iter().all(|c| c.lineality_contains(d)) {
            return Err(Error::DirectionNotInLineality);
        }
        let cells: Vec<(QPolyhedron, Option<String>)> =
            self.cells.iter().zip(&self.labels).map(|(c, l)| (c.slice_drop(k), l.clone())).collect();
        let mut uniq: HashMap<PolyKey, (QPolyhedron, Option<String>)> = HashMap::new();
        for (c, l) in cells {
            uniq.entry(c.key()).or_insert((c, l));
        }
        Ok(Self::assemble(self.ambient - 1, uniq.into_values().collect()))
    }

    /// Whether `x` is in the common lineality space.
    pub fn lineality_contains(&self, x: &[Rational]) -> bool {
        self.cells.iter().all(|c| c.lineality_contains(x))
    }

    pub fn to_json(&self) -> serde_json::Value {
        super::json::complex_json(self)
    }

    /// Evaluates `a·x` against the offsets of a cell; used by renderers.
    pub fn row_value(r: &Row, x: &[Rational]) -> Rational {
        dot(&r[..r.len() - 1], x) - &r[r.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: &[i64]) -> Row {
        x.iter().map(|&a| Rational::from_int(a)).collect()
    }

    fn line(a: &[i64]) -> QPolyhedron {
        QPolyhedron::from_constraints(2, &[], &[r(a)])
    }

    #[test]
    fn transverse_lines_refine_to_point_and_rays() {
        let a = PolyhedralComplex::from_cells(2, vec![(line(&[1, 0, 0]), None)]);
        let b = PolyhedralComplex::from_cells(2, vec![(line(&[0, 1, 0]), None)]);
        let u = PolyhedralComplex::from_cells(2, vec![(line(&[1, 0, 0]), None), (line(&[0, 1, 0]), None)]);
        assert!(u.check_axioms().is_err());
        let x = a.common_refinement(&b).unwrap();
        assert_eq!(x.len(), 1);
        let half = |a: &[i64]| QPolyhedron::from_constraints(2, &[r(a)], &[]);
        let neg = |a: &[i64]| a.iter().map(|x| -x).collect::<Vec<_>>();
        let va = PolyhedralComplex::from_cells(2, vec![(half(&[1, 0, 0]), None), (half(&neg(&[1, 0, 0])), None)]);
        let hb = PolyhedralComplex::from_cells(2, vec![(half(&[0, 1, 0]), None), (half(&neg(&[0, 1, 0])), None)]);
        let both = va.common_refinement(&hb).unwrap();
        assert_eq!(both.f_vector(), vec![1, 4, 4]);
        both.check_axioms().unwrap();
        assert!(both.support_equal(&va).unwrap().0);
        let (eq, w) = u.support_equal(&a).unwrap();
        assert!(!eq);
        assert!(!a.support_contains(&w.unwrap()));
        assert!(!a.support_equal(&b).unwrap().0);
    }

    #[test]
    fn quotient_by_all_ones() {
        let full = PolyhedralComplex::from_cells(3, vec![(QPolyhedron::full(3), None)]);
        let q = full.project_quotient(&r(&[1, 1, 1])).unwrap();
        assert_eq!(q.ambient, 2);
        assert_eq!(q.cells[0].dim(), 2);
        let half = PolyhedralComplex::from_cells(2, vec![(QPolyhedron::from_constraints(2, &[r(&[1, 0, 0])], &[]), None)]);
        assert!(matches!(half.project_quotient(&r(&[1, 0])), Err(Error::DirectionNotInLineality)));
    }
}
