//! Gröbner cones and the Gröbner complex of a homogeneous ideal.
//!
//! Two independent constructions:
//! * state mode refines the linearity complexes of the tropicalized maximal
//!   minors of each `I_d` (Plücker coordinates);
//! * traversal mode starts from one maximal cone and flips facets.
//!
//! Both yield the same canonical cells, which is checked in the tests.

use std::collections::{HashMap, HashSet, VecDeque};

use log::{debug, info};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal_graded::{binomial, GbElement, GradedPieces, HomogeneousIdeal, MonomialInitial, WeightOrder};
use crate::linalg::determinant;
use crate::poly::{check_arity, Mono, RPoly};
use crate::polyhedra::json::vector_json;
use crate::polyhedra::{linearity_complex, PolyKey, PolyhedralComplex, QPolyhedron, Row, TropicalAffineFamily};
use crate::rational::Rational;
use crate::valued_field::FieldSpec;

/// Default bound on the number of maximal minors enumerated per degree.
pub const DEFAULT_MINOR_CAP: u128 = 200_000;
/// Traversal gives up beyond this many maximal cones.
pub const DEFAULT_CELL_LIMIT: usize = 20_000;

/// One closed cell `closure(C_I[w])` with its initial ideal.
#[derive(Clone, Debug)]
pub struct GrobnerCell {
    pub poly: QPolyhedron,
    /// `in_w(g)` for a Gröbner basis `g` of a maximal cone containing the cell.
    pub initial_gens: Vec<RPoly>,
    pub monomial: bool,
    pub representative_w: Vec<Rational>,
}

/// A Gröbner complex: the polyhedral complex plus per-cell data, in the same order.
#[derive(Clone, Debug)]
pub struct GrobnerComplex {
    pub complex: PolyhedralComplex,
    pub cells: Vec<GrobnerCell>,
}

/// `{x : (u_i − v)·x ≤ val(c_v) − val(c_{u_i})}` over the basis elements.
fn cone_from_basis(field: &FieldSpec, nvars: usize, basis: &[GbElement]) -> QPolyhedron {
    let mut rows: Vec<Row> = Vec::new();
    for g in basis {
        let lead_val = field.val(&g.poly.terms[&g.lead]).unwrap();
        for (v, c) in &g.poly.terms {
            if *v == g.lead {
                continue;
            }
            let mut r: Row = g.lead.iter().zip(v).map(|(a, b)| Rational::from_int((a - b) as i64)).collect();
            r.push(field.val(c).unwrap() - &lead_val);
            rows.push(r);
        }
    }
    QPolyhedron::from_constraints(nvars, &rows, &[])
}

fn monomial_initial_lex(pieces: &GradedPieces, order: WeightOrder) -> Result<MonomialInitial> {
    pieces
        .monomial_initial(&order.with_lex())?
        .ok_or_else(|| Error::Internal("lex-refined initial ideal is not monomial".into()))
}

/// The maximal cone reached from `w` in direction `v` (second-order tie-break lex).
fn maximal_cone_toward(pieces: &GradedPieces, w: &[Rational], v: Option<&[Rational]>) -> Result<(QPolyhedron, Vec<GbElement>)> {
    let mut order = WeightOrder::weight(w);
    if let Some(v) = v {
        order = order.then(v);
    }
    let m = monomial_initial_lex(pieces, order)?;
    let cone = cone_from_basis(&pieces.field, pieces.nvars, &m.basis);
    if cone.dim() != pieces.nvars as isize {
        return Err(Error::InconsistentInitial(format!(
            "Gröbner cone of a monomial initial ideal has dimension {} < {}; the degree bound is too small",
            cone.dim(),
            pieces.nvars
        )));
    }
    if !cone.contains(w) {
        return Err(Error::Internal("perturbed cone misses its base point".into()));
    }
    Ok((cone, m.basis))
}

fn initial_gens_at(field: &FieldSpec, basis: &[GbElement], w: &[Rational]) -> Result<Vec<RPoly>> {
    let k = field.residue_field();
    let mut out: Vec<RPoly> = Vec::with_capacity(basis.len());
    for g in basis {
        out.push(g.poly.initial_form_ext(field, w)?.monic(&k));
    }
    Ok(out)
}

/// Representative normalized to last coordinate zero (R·1 is in every lineality space).
fn normalize_representative(mut w: Vec<Rational>) -> Vec<Rational> {
    if let Some(last) = w.last().cloned() {
        for x in w.iter_mut() {
            *x -= &last;
        }
    }
    w
}

fn cell_at(pieces: &GradedPieces, w: &[Rational]) -> Result<GrobnerCell> {
    let (cone, basis) = maximal_cone_toward(pieces, w, None)?;
    let poly = cone.face_containing(w);
    let initial_gens = initial_gens_at(&pieces.field, &basis, w)?;
    let monomial = initial_gens.iter().all(|g| g.is_monomial());
    let rep = normalize_representative(poly.relative_interior_point().unwrap());
    Ok(GrobnerCell { poly, initial_gens, monomial, representative_w: rep })
}

/// `closure(C_I[w])` with its initial ideal, the GB computed up to degree `D`.
pub fn cone_of(ideal: &HomogeneousIdeal, w: &[Rational], max_degree: usize) -> Result<GrobnerCell> {
    check_arity(ideal.nvars, w.len())?;
    ideal.field.check_value_group(w)?;
    check_degree_bound(ideal, max_degree)?;
    cell_at(&GradedPieces::build(ideal, max_degree), w)
}

pub fn check_degree_bound(ideal: &HomogeneousIdeal, max_degree: usize) -> Result<()> {
    if max_degree < ideal.max_generator_degree() {
        return Err(Error::DegreeBoundTooSmall(format!(
            "D = {max_degree} is below the largest generator degree {}",
            ideal.max_generator_degree()
        )));
    }
    Ok(())
}

/// Tropicalized maximal minors of one block of one `I_d`.
#[derive(Clone, Debug)]
pub struct BlockState {
    /// `(val(det A^J) − min, Σ_{u∈J} u)` over column sets `J` with nonzero minor.
    pub entries: Vec<(Rational, Mono)>,
}

#[derive(Clone, Debug)]
pub struct DegreeState {
    pub degree: usize,
    pub s: usize,
    /// The minors of `I_d` factor over its column blocks, so the tropical
    /// Plücker function is the sum of one function per block.
    pub blocks: Vec<BlockState>,
    /// Number of minors evaluated in this degree.
    pub minors: u128,
}

#[derive(Clone, Debug)]
pub struct StateData {
    pub degrees: Vec<DegreeState>,
}

impl StateData {
    /// Families whose linearity complexes refine to the Gröbner complex.
    pub fn families(&self) -> Vec<TropicalAffineFamily> {
        self.degrees
            .iter()
            .flat_map(|d| &d.blocks)
            .map(|b| {
                TropicalAffineFamily::new(
                    b.entries
                        .iter()
                        .map(|(v, u)| (v.clone(), u.iter().map(|&e| Rational::from_int(e as i64)).collect()))
                        .collect(),
                )
            })
            .filter(|f| f.terms.len() > 1)
            .collect()
    }
}

fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn state_data_of(pieces: &GradedPieces, cap: u128) -> Result<StateData> {
    let field = &pieces.field;
    let mut degrees = Vec::new();
    for p in &pieces.pieces {
        let count: u128 = p.blocks.iter().map(|b| binomial(b.cols.len(), b.rows.len())).sum();
        if count > cap {
            return Err(Error::CombinatorialCapExceeded { degree: p.degree, count, cap });
        }
        let mut blocks = Vec::new();
        for blk in &p.blocks {
            let r = blk.rows.len();
            let mut raw: Vec<(Rational, Mono)> = Vec::new();
            for_each_subset(blk.cols.len(), r, |j| {
                let m: Vec<Vec<_>> = blk.rows.iter().map(|row| j.iter().map(|&c| row[c].clone()).collect()).collect();
                let det = determinant(field, &m);
                if let Some(v) = field.val(&det) {
                    let mut u = vec![0; pieces.nvars];
                    for &c in j {
                        for (a, b) in u.iter_mut().zip(&p.monomials[blk.cols[c]]) {
                            *a += b;
                        }
                    }
                    raw.push((v, u));
                }
            });
            let min = raw.iter().map(|e| e.0.clone()).min().ok_or_else(|| Error::Internal("block without a nonzero minor".into()))?;
            blocks.push(BlockState { entries: raw.into_iter().map(|(v, u)| (v - &min, u)).collect() });
        }
        degrees.push(DegreeState { degree: p.degree, s: p.dim(), blocks, minors: count });
    }
    Ok(StateData { degrees })
}

/// Valuations and exponent sums of the nonzero maximal minors of each `I_d`, `d ≤ D`.
pub fn state_data(ideal: &HomogeneousIdeal, max_degree: usize, cap: u128) -> Result<StateData> {
    check_degree_bound(ideal, max_degree)?;
    state_data_of(&GradedPieces::build(ideal, max_degree), cap)
}

/// Labels every cell with its initial ideal, using the Gröbner basis of the
/// first maximal cell (in canonical order) that contains it.
fn label_cells(pieces: &GradedPieces, complex: PolyhedralComplex, bases: &HashMap<PolyKey, Vec<GbElement>>) -> Result<GrobnerComplex> {
    let max = complex.maximal_indices();
    let mut cells = Vec::with_capacity(complex.len());
    for c in &complex.cells {
        let w = c.relative_interior_point().unwrap();
        let owner = max
            .iter()
            .find(|&&i| complex.cells[i].contains(&w))
            .ok_or_else(|| Error::Internal("cell outside every maximal cell".into()))?;
        let basis = &bases[&complex.cells[*owner].key()];
        let initial_gens = initial_gens_at(&pieces.field, basis, &w)?;
        let monomial = initial_gens.iter().all(|g| g.is_monomial());
        cells.push(GrobnerCell { poly: c.clone(), initial_gens, monomial, representative_w: normalize_representative(w) });
    }
    Ok(GrobnerComplex { complex, cells })
}

fn assemble(pieces: &GradedPieces, maximal: Vec<(QPolyhedron, Vec<GbElement>)>) -> Result<GrobnerComplex> {
    let n = pieces.nvars;
    let mut bases = HashMap::new();
    let mut cells = Vec::new();
    for (c, b) in maximal {
        bases.insert(c.key(), b);
        cells.push((c, None));
    }
    let complex = PolyhedralComplex::from_cells(n, cells);
    let mut gc = label_cells(pieces, complex, &bases)?;
    let names = crate::poly::default_names(n);
    for (l, c) in gc.complex.labels.iter_mut().zip(&gc.cells) {
        *l = Some(format_ideal(&c.initial_gens, &names));
    }
    Ok(gc)
}

pub fn format_ideal(gens: &[RPoly], names: &[String]) -> String {
    let parts: Vec<String> = gens.iter().map(|g| g.format(names)).collect();
    format!("<{}>", parts.join(", "))
}

/// Gröbner complex from the common refinement of the linearity complexes of
/// the tropicalized Plücker coordinates of `I_d`, `d ≤ D`.
pub fn complex_state_mode(ideal: &HomogeneousIdeal, max_degree: usize, cap: u128) -> Result<GrobnerComplex> {
    check_degree_bound(ideal, max_degree)?;
    let pieces = GradedPieces::build(ideal, max_degree);
    let sd = state_data_of(&pieces, cap)?;
    let n = ideal.nvars;
    let mut acc = PolyhedralComplex::from_cells(n, vec![(QPolyhedron::full(n), None)]);
    for f in sd.families() {
        let lc = linearity_complex(&f);
        acc = acc.common_refinement(&lc)?;
        debug!("state mode: refinement has {} cells", acc.len());
    }
    let mut maximal = Vec::new();
    for c in acc.maximal_cells() {
        let w = c.relative_interior_point().unwrap();
        let (cone, basis) = maximal_cone_toward(&pieces, &w, None)?;
        if cone != *c {
            return Err(Error::InconsistentInitial(format!(
                "state-mode cell differs from the Gröbner cone at {:?}; increase D",
                w.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            )));
        }
        maximal.push((cone, basis));
    }
    info!("state mode: {} maximal cells", maximal.len());
    assemble(&pieces, maximal)
}

/// Gröbner complex by breadth-first facet flipping from the cone at `start`.
pub fn complex_traversal_mode(ideal: &HomogeneousIdeal, max_degree: usize, start: &[Rational], limit: usize) -> Result<GrobnerComplex> {
    check_arity(ideal.nvars, start.len())?;
    check_degree_bound(ideal, max_degree)?;
    let pieces = GradedPieces::build(ideal, max_degree);
    let first = maximal_cone_toward(&pieces, start, None)?;
    let mut seen: HashSet<PolyKey> = HashSet::new();
    let mut done_facets: HashSet<PolyKey> = HashSet::new();
    seen.insert(first.0.key());
    let mut queue = VecDeque::from([first]);
    let mut maximal = Vec::new();
    while let Some((cone, basis)) = queue.pop_front() {
        for (row, facet) in cone.inequalities.iter().zip(cone.facets()) {
            if !done_facets.insert(facet.key()) {
                continue;
            }
            let wf = facet.relative_interior_point().unwrap();
            let normal = &row[..row.len() - 1];
            let next = maximal_cone_toward(&pieces, &wf, Some(normal))?;
            if next.0 == cone {
                return Err(Error::Internal("facet flip returned the same cone".into()));
            }
            if seen.insert(next.0.key()) {
                if seen.len() > limit {
                    return Err(Error::NonConvergence(limit));
                }
                queue.push_back(next);
            }
        }
        maximal.push((cone, basis));
        debug!("traversal: {} cones found, {} queued", maximal.len(), queue.len());
    }
    info!("traversal: {} maximal cells", maximal.len());
    assemble(&pieces, maximal)
}

/// Which construction to run; `Both` runs the two and demands identical cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    State,
    Traversal,
    Both,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "state" => Ok(Mode::State),
            "traversal" => Ok(Mode::Traversal),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Parse(format!("unknown mode {s} (state|traversal|both)"))),
        }
    }
}

/// Options shared by every Gröbner-complex computation.
#[derive(Clone, Debug)]
pub struct ComplexOptions {
    pub mode: Mode,
    pub minor_cap: u128,
    pub cell_limit: usize,
    /// Seeds the traversal start point.
    pub seed: u64,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions { mode: Mode::Traversal, minor_cap: DEFAULT_MINOR_CAP, cell_limit: DEFAULT_CELL_LIMIT, seed: 0 }
    }
}

fn traversal_start(nvars: usize, seed: u64) -> Vec<Rational> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..nvars).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect()
}

pub fn groebner_complex(ideal: &HomogeneousIdeal, max_degree: usize, opts: &ComplexOptions) -> Result<GrobnerComplex> {
    let start = traversal_start(ideal.nvars, opts.seed);
    match opts.mode {
        Mode::State => complex_state_mode(ideal, max_degree, opts.minor_cap),
        Mode::Traversal => complex_traversal_mode(ideal, max_degree, &start, opts.cell_limit),
        Mode::Both => {
            let s = complex_state_mode(ideal, max_degree, opts.minor_cap)?;
            let t = complex_traversal_mode(ideal, max_degree, &start, opts.cell_limit)?;
            if s.keys() != t.keys() {
                return Err(Error::Internal(format!(
                    "state mode found {} cells, traversal {}; they must agree",
                    s.len(),
                    t.len()
                )));
            }
            Ok(s)
        }
    }
}

impl GrobnerComplex {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn maximal_count(&self) -> usize {
        self.complex.maximal_indices().len()
    }

    /// Canonical keys of all cells, for cross-mode comparison.
    pub fn keys(&self) -> Vec<PolyKey> {
        let mut k: Vec<PolyKey> = self.complex.cells.iter().map(|c| c.key()).collect();
        k.sort();
        k
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let mut v = self.complex.to_json();
        let cells = v["cells"].as_array_mut().unwrap();
        for (cj, c) in cells.iter_mut().zip(&self.cells) {
            let gens: Vec<String> = c.initial_gens.iter().map(|g| g.format(names)).collect();
            cj["label"] = json!(format_ideal(&c.initial_gens, names));
            cj["initial_ideal"] = json!(gens);
            cj["monomial"] = json!(c.monomial);
            cj["representative_w"] = vector_json(&c.representative_w);
        }
        v
    }
}
