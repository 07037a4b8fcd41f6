//! Independent oracle for the cells of `w ↦ min_j (a_j + m_j·w)`.
//!
//! No polyhedral code from the library is used. Cells are discovered by
//! sampling: a rational grid, plus exact solutions of every tie system
//! `a_i + m_i·w = a_j + m_j·w` (i, j ∈ T) walked along its solution space,
//! plus a small star around, and midpoints between, the vertices found that
//! way. Each cell is identified by its active set; its dimension is
//! `n − rank{m_i − m_j : i, j ∈ S}`.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use tropgrob::Rational;

pub type Term = (Rational, Vec<Rational>);

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn value(t: &Term, w: &[Rational]) -> Rational {
    let mut s = t.0.clone();
    for (m, x) in t.1.iter().zip(w) {
        s = &s + &(m * x);
    }
    s
}

pub fn active_set(terms: &[Term], w: &[Rational]) -> BTreeSet<usize> {
    let vals: Vec<Rational> = terms.iter().map(|t| value(t, w)).collect();
    let min = vals.iter().min().unwrap().clone();
    (0..terms.len()).filter(|&i| vals[i] == min).collect()
}

/// Row reduction in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip().unwrap();
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let sub: Vec<Rational> = rows[r].iter().map(|x| x * &f).collect();
                rows[i] = rows[i].iter().zip(&sub).map(|(a, b)| a - b).collect();
            }
        }
        piv.push(c);
        r += 1;
    }
    rows.truncate(r);
    piv
}

pub fn rank(vectors: &[Vec<Rational>], n: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows, n).len()
}

/// Solves `A x = b` (rows `[A | b]`): a particular solution and a nullspace basis.
fn solve(mut rows: Vec<Vec<Rational>>, n: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let piv = rref(&mut rows, n + 1);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in piv.iter().enumerate() {
                v[c] = -rows[r][f].clone();
            }
            v
        })
        .collect();
    Some((x, null))
}

fn subsets(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, k, n, cur, out);
            cur.pop();
        }
    }
    go(0, k, n, &mut cur, &mut out);
    out
}

fn combos(null: &[Vec<Rational>], n: usize, steps: &[Rational]) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![Rational::zero(); n]];
    for v in null {
        let mut next = Vec::new();
        for base in &out {
            for s in steps {
                next.push(base.iter().zip(v).map(|(a, b)| a + &(b * s)).collect());
            }
        }
        out = next;
    }
    out
}

/// Every active set of the family with the dimension of its cell.
pub fn cells(terms: &[Term]) -> BTreeMap<BTreeSet<usize>, usize> {
    let n = terms[0].1.len();
    let mut points: Vec<Vec<Rational>> = Vec::new();
    let grid: Vec<Rational> = (-16..=16).map(|k| q(k, 2)).collect();
    points.extend(combos(&(0..n).map(|i| (0..n).map(|j| Rational::from_int((i == j) as i64)).collect()).collect::<Vec<_>>(), n, &grid));
    let walk: Vec<Rational> = (-32..=32).map(|k| q(k, 4)).collect();
    let mut vertices = Vec::new();
    for k in 2..=terms.len().min(n + 1) {
        for t in subsets(k, terms.len()) {
            let rows: Vec<Vec<Rational>> = t[1..]
                .iter()
                .map(|&j| {
                    let mut r: Vec<Rational> = terms[t[0]].1.iter().zip(&terms[j].1).map(|(a, b)| a - b).collect();
                    r.push(&terms[j].0 - &terms[t[0]].0);
                    r
                })
                .collect();
            if let Some((x, null)) = solve(rows, n) {
                if null.is_empty() {
                    vertices.push(x.clone());
                }
                for d in combos(&null, n, &walk) {
                    points.push(x.iter().zip(&d).map(|(a, b)| a + b).collect());
                }
            }
        }
    }
    // every cell through a vertex shows up in a small star around it
    let r: i64 = if n <= 2 { 8 } else { 3 };
    let star: Vec<Rational> = (-r..=r).map(|k| q(k, 1024)).collect();
    let unit: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| Rational::from_int((i == j) as i64)).collect()).collect();
    for v in &vertices {
        for d in combos(&unit, n, &star) {
            points.push(v.iter().zip(&d).map(|(a, b)| a + b).collect());
        }
    }
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            points.push(vertices[i].iter().zip(&vertices[j]).map(|(a, b)| (a + b) / Rational::from_int(2)).collect());
        }
    }
    let mut out = BTreeMap::new();
    for p in points {
        let s = active_set(terms, &p);
        out.entry(s.clone()).or_insert_with(|| {
            let first = s.iter().next().copied().unwrap();
            let diffs: Vec<Vec<Rational>> =
                s.iter().map(|&j| terms[j].1.iter().zip(&terms[first].1).map(|(a, b)| a - b).collect()).collect();
            n - rank(&diffs, n)
        });
    }
    out
}

/// Number of cells in each dimension `0..=n`.
pub fn counts(cells: &BTreeMap<BTreeSet<usize>, usize>, n: usize) -> Vec<usize> {
    let mut c = vec![0; n + 1];
    for d in cells.values() {
        c[*d] += 1;
    }
    c
}

/// Restricts terms to the slice where coordinate `k` is zero.
pub fn slice(terms: &[Term], k: usize) -> Vec<Term> {
    terms
        .iter()
        .map(|(a, m)| (a.clone(), m.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x.clone()).collect()))
        .collect()
}

pub fn terms_of(spec: &[(i64, &[i64])]) -> Vec<Term> {
    spec.iter().map(|(a, m)| (Rational::from_int(*a), m.iter().map(|&x| Rational::from_int(x)).collect())).collect()
}
