//! Degreewise linear algebra on homogeneous ideals.
//!
//! `I_d` is stored as a reduced row echelon basis over K, split into
//! independent column blocks: two monomials share a block when some spanning
//! element of `I_d` involves both. Multigraded ideals fall apart into many
//! small blocks, which keeps every elimination below cheap.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{axpy, rref, rref_ordered};
use crate::poly::{KPoly, Mono, Poly, RPoly};
use crate::rational::{dot_int, Rational};
use crate::valued_field::{Field, FieldElement, FieldSpec, ResidueField};

/// Homogeneous ideal of `K[x₀,…,xₙ]` given by generators.
#[derive(Clone, Debug)]
pub struct HomogeneousIdeal {
    pub field: FieldSpec,
    pub nvars: usize,
    pub generators: Vec<KPoly>,
}

impl HomogeneousIdeal {
    pub fn new(field: FieldSpec, nvars: usize, generators: Vec<KPoly>) -> Result<Self> {
        for g in &generators {
            crate::poly::check_arity(nvars, g.nvars)?;
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if g.has_negative_exponent() {
                return Err(Error::NotPolynomial(format!("{:?}", g.terms.keys().next())));
            }
            if !g.is_homogeneous() {
                return Err(Error::Parse("generator is not homogeneous".into()));
            }
        }
        Ok(HomogeneousIdeal { field, nvars, generators })
    }

    pub fn max_generator_degree(&self) -> usize {
        self.generators.iter().map(|g| g.degree() as usize).max().unwrap_or(0)
    }

    pub fn min_generator_degree(&self) -> usize {
        self.generators.iter().map(|g| g.degree() as usize).min().unwrap_or(0)
    }
}

/// A monomial order refining weights: terms compare by
/// `(val(c)+w₁·u, w₂·u, …)` and, with `lex`, finally by preferring the
/// lexicographically largest exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightOrder {
    pub weights: Vec<Vec<Rational>>,
    pub lex: bool,
}

impl WeightOrder {
    pub fn weight(w: &[Rational]) -> Self {
        WeightOrder { weights: vec![w.to_vec()], lex: false }
    }

    pub fn then(mut self, v: &[Rational]) -> Self {
        self.weights.push(v.to_vec());
        self
    }

    pub fn with_lex(mut self) -> Self {
        self.lex = true;
        self
    }

    fn column_keys(&self, monos: &[Mono]) -> Vec<Vec<Rational>> {
        monos.iter().map(|u| self.weights.iter().map(|w| dot_int(w, u)).collect()).collect()
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// lexicographically descending order (`x₀^d` first).
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Mono> {
    fn rec(nvars: usize, d: i32, prefix: &mut Vec<i32>, out: &mut Vec<Mono>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, d as i32, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// One independent column block of `I_d`.
#[derive(Clone, Debug)]
pub struct Block {
    /// Column indices into the degree's monomial list, increasing.
    pub cols: Vec<usize>,
    /// Reduced row echelon basis restricted to `cols`.
    pub rows: Vec<Vec<FieldElement>>,
}

/// The degree-d piece of an ideal.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    pub degree: usize,
    pub monomials: Vec<Mono>,
    pub index: HashMap<Mono, usize>,
    pub blocks: Vec<Block>,
    /// Block of each column, if the column is touched by `I_d`.
    pub block_of: Vec<Option<usize>>,
}

impl DegreePiece {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.rows.len()).sum()
    }

    /// Row `j` of block `b` as a polynomial.
    pub fn row_poly(&self, nvars: usize, b: usize, j: usize) -> KPoly {
        let blk = &self.blocks[b];
        let mut p = Poly::zero(nvars);
        for (c, x) in blk.cols.iter().zip(&blk.rows[j]) {
            if !x.is_zero() {
                p.terms.insert(self.monomials[*c].clone(), x.clone());
            }
        }
        p
    }
}

/// Exact basis matrix of `I_d` with its column labels.
#[derive(Clone, Debug)]
pub struct MacaulayPiece {
    pub degree: usize,
    pub monomials: Vec<Mono>,
    pub rows: Vec<Vec<FieldElement>>,
}

impl MacaulayPiece {
    pub fn s(&self) -> usize {
        self.rows.len()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

type SparseRow = Vec<(usize, FieldElement)>;

/// Row-reduces sparse spanning rows of one degree into column blocks.
fn assemble_piece(field: &FieldSpec, degree: usize, monomials: Vec<Mono>, cand: Vec<SparseRow>) -> DegreePiece {
    let ncols = monomials.len();
    let mut uf = UnionFind((0..ncols).collect());
    let mut touched = vec![false; ncols];
    for r in &cand {
        for (c, _) in r {
            touched[*c] = true;
        }
        for w in r.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut root_block: HashMap<usize, usize> = HashMap::new();
    let mut block_cols: Vec<Vec<usize>> = Vec::new();
    for c in (0..ncols).filter(|&c| touched[c]) {
        let r = uf.find(c);
        let b = *root_block.entry(r).or_insert_with(|| {
            block_cols.push(Vec::new());
            block_cols.len() - 1
        });
        block_cols[b].push(c);
    }
    let mut block_rows: Vec<Vec<Vec<FieldElement>>> = vec![Vec::new(); block_cols.len()];
    let pos: HashMap<usize, usize> =
        block_cols.iter().flat_map(|cols| cols.iter().enumerate().map(|(i, &c)| (c, i))).collect();
    for r in cand {
        let Some((c0, _)) = r.first() else { continue };
        let b = root_block[&uf.find(*c0)];
        let mut dense = vec![FieldElement::zero(); block_cols[b].len()];
        for (c, x) in r {
            dense[pos[&c]] = x;
        }
        block_rows[b].push(dense);
    }
    let mut blocks = Vec::new();
    let mut block_of = vec![None; ncols];
    for (cols, mut rows) in block_cols.into_iter().zip(block_rows) {
        rref(field, &mut rows);
        if rows.is_empty() {
            continue;
        }
        for &c in &cols {
            block_of[c] = Some(blocks.len());
        }
        blocks.push(Block { cols, rows });
    }
    let index = monomials.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
    DegreePiece { degree, monomials, index, blocks, block_of }
}

/// The pieces `I_0, …, I_D` of the ideal spanned by shifts of the generators.
///
/// This equals the true `I_d` whenever the generators generate degreewise up
/// to `D`, which is the contract of every algorithm in this module.
#[derive(Clone, Debug)]
pub struct GradedPieces {
    pub field: FieldSpec,
    pub nvars: usize,
    pub pieces: Vec<DegreePiece>,
}

impl GradedPieces {
    pub fn build(ideal: &HomogeneousIdeal, max_degree: usize) -> Self {
        let field = ideal.field;
        let n = ideal.nvars;
        let mut pieces: Vec<DegreePiece> = Vec::with_capacity(max_degree + 1);
        for d in 0..=max_degree {
            let monomials = monomials_of_degree(n, d);
            let index: HashMap<&Mono, usize> = monomials.iter().enumerate().map(|(i, u)| (u, i)).collect();
            let mut cand: Vec<SparseRow> = Vec::new();
            if let Some(prev) = pieces.last() {
                for blk in &prev.blocks {
                    for row in &blk.rows {
                        for i in 0..n {
                            let mut r: SparseRow = Vec::new();
                            for (c, x) in blk.cols.iter().zip(row) {
                                if !x.is_zero() {
                                    let mut u = prev.monomials[*c].clone();
                                    u[i] += 1;
                                    r.push((index[&u], x.clone()));
                                }
                            }
                            cand.push(r);
                        }
                    }
                }
            }
            for g in ideal.generators.iter().filter(|g| g.degree() as usize == d) {
                cand.push(g.terms.iter().map(|(u, c)| (index[u], c.clone())).collect());
            }
            drop(index);
            pieces.push(assemble_piece(&field, d, monomials, cand));
        }
        GradedPieces { field, nvars: n, pieces }
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn macaulay_piece(&self, d: usize) -> MacaulayPiece {
        let p = &self.pieces[d];
        let mut rows = Vec::new();
        for blk in &p.blocks {
            for r in &blk.rows {
                let mut dense = vec![FieldElement::zero(); p.monomials.len()];
                for (c, x) in blk.cols.iter().zip(r) {
                    dense[*c] = x.clone();
                }
                rows.push(dense);
            }
        }
        rows.sort_by_key(|r| r.iter().position(|x| !x.is_zero()));
        MacaulayPiece { degree: d, monomials: p.monomials.clone(), rows }
    }

    pub fn hilbert_dim(&self, d: usize) -> usize {
        let p = &self.pieces[d];
        p.monomials.len() - p.dim()
    }

    /// Whether `f` (homogeneous of degree ≤ D) lies in the span of `I_{deg f}`.
    pub fn contains(&self, f: &KPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        let d = f.degree() as usize;
        if d > self.max_degree() || !f.is_homogeneous() {
            return false;
        }
        let p = &self.pieces[d];
        let mut per_block: HashMap<usize, Vec<FieldElement>> = HashMap::new();
        for (u, c) in &f.terms {
            let col = p.index[u];
            let Some(b) = p.block_of[col] else { return false };
            let blk = &p.blocks[b];
            let v = per_block.entry(b).or_insert_with(|| vec![FieldElement::zero(); blk.cols.len()]);
            v[blk.cols.binary_search(&col).unwrap()] = c.clone();
        }
        per_block.into_iter().all(|(b, v)| reduces_to_zero(&self.field, &p.blocks[b].rows, v))
    }
}

/// Reduces `v` by an RREF basis and reports whether nothing is left.
fn reduces_to_zero<F: Field>(f: &F, rref_rows: &[Vec<F::Elem>], mut v: Vec<F::Elem>) -> bool {
    for row in rref_rows {
        let p = row.iter().position(|x| !f.is_zero(x)).unwrap();
        if !f.is_zero(&v[p]) {
            let factor = v[p].clone();
            axpy(f, &mut v, &factor, row);
        }
    }
    v.iter().all(|x| f.is_zero(x))
}

/// Output of the valuation-aware elimination of one block.
struct BlockInitial {
    /// Initial forms over 𝕜 in block coordinates, with distinct pivots.
    forms: Vec<Vec<Rational>>,
    /// The chosen pivot (block column) of each form.
    pivots: Vec<usize>,
}

/// Eliminates a K-basis so that the initial forms become independent.
///
/// Row k keeps as pivot the first column among its minimal-key terms; that
/// column is then cleared from all later rows. The initial form of row k is
/// nonzero at its pivot and every later form vanishes there, so the forms are
/// triangular, hence independent, hence a basis of the initial space.
fn eliminate_block(
    field: &FieldSpec,
    rows: &[Vec<FieldElement>],
    keys: &[&Vec<Rational>],
    order: &WeightOrder,
) -> Result<BlockInitial> {
    let mut rows = rows.to_vec();
    let ncols = keys.len();
    let mut forms = Vec::with_capacity(rows.len());
    let mut pivots = Vec::with_capacity(rows.len());
    for k in 0..rows.len() {
        let mut best: Option<Vec<Rational>> = None;
        let mut entry_keys: Vec<Option<Vec<Rational>>> = vec![None; ncols];
        for (c, x) in rows[k].iter().enumerate() {
            let Some(v) = field.val(x) else { continue };
            let mut key = keys[c].clone();
            key[0] = &key[0] + &v;
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key.clone());
            }
            entry_keys[c] = Some(key);
        }
        let Some(best) = best else {
            return Err(Error::Internal("zero row in a basis of I_d".into()));
        };
        let mut form = vec![Rational::zero(); ncols];
        let mut pivot = None;
        for c in 0..ncols {
            if entry_keys[c].as_ref() == Some(&best) {
                pivot.get_or_insert(c);
                form[c] = field.unit_part(&rows[k][c])?;
                if order.lex {
                    break;
                }
            }
        }
        let pivot = pivot.unwrap();
        let prow = rows[k].clone();
        for row in rows.iter_mut().skip(k + 1) {
            if !row[pivot].is_zero() {
                let factor = row[pivot].div(&prow[pivot])?;
                axpy(field, row, &factor, &prow);
            }
        }
        forms.push(form);
        pivots.push(pivot);
    }
    Ok(BlockInitial { forms, pivots })
}

/// The degree-d part of an initial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialSpace {
    pub degree: usize,
    /// Reduced row echelon basis over 𝕜 (pivot coefficient one).
    pub basis: Vec<RPoly>,
    pub monomial: bool,
    /// Monomials spanning the space when `monomial` holds.
    pub monomials: Vec<Mono>,
    /// Monomials outside the pivot set of `basis`; they span the quotient.
    pub standard: Vec<Mono>,
}

impl GradedPieces {
    /// `in_O(I)_d` for a weight order `O`, extended-weight semantics (no Γ check).
    pub fn initial_space_order(&self, d: usize, order: &WeightOrder) -> Result<InitialSpace> {
        let p = &self.pieces[d];
        let k = self.field.residue_field();
        let keys = order.column_keys(&p.monomials);
        let mut basis = Vec::new();
        let mut pivot_cols: HashSet<usize> = HashSet::new();
        for blk in &p.blocks {
            let bkeys: Vec<&Vec<Rational>> = blk.cols.iter().map(|&c| &keys[c]).collect();
            let bi = eliminate_block(&self.field, &blk.rows, &bkeys, order)?;
            let mut forms = bi.forms;
            let piv = rref(&k, &mut forms);
            for (row, pc) in forms.iter().zip(piv) {
                pivot_cols.insert(blk.cols[pc]);
                let mut poly = Poly::zero(self.nvars);
                for (c, x) in blk.cols.iter().zip(row) {
                    if !x.is_zero() {
                        poly.terms.insert(p.monomials[*c].clone(), x.clone());
                    }
                }
                basis.push(poly);
            }
        }
        basis.sort_by(|a, b| b.terms.keys().next_back().cmp(&a.terms.keys().next_back()));
        let monomial = basis.iter().all(|b| b.is_monomial());
        let mut monomials: Vec<Mono> = if monomial {
            basis.iter().map(|b| b.terms.keys().next().unwrap().clone()).collect()
        } else {
            Vec::new()
        };
        monomials.sort_by(|a, b| b.cmp(a));
        let standard = (0..p.monomials.len()).filter(|c| !pivot_cols.contains(c)).map(|c| p.monomials[c].clone()).collect();
        Ok(InitialSpace { degree: d, basis, monomial, monomials, standard })
    }

    /// `in_w(I)_d`; `w` must lie in Γ^{n+1}.
    pub fn initial_space(&self, d: usize, w: &[Rational]) -> Result<InitialSpace> {
        crate::poly::check_arity(self.nvars, w.len())?;
        self.field.check_value_group(w)?;
        self.initial_space_order(d, &WeightOrder::weight(w))
    }

    /// Smallest-degree monomial in `in_O(I)_d` for `d ≤ D`, if any.
    pub fn monomial_witness(&self, order: &WeightOrder) -> Result<Option<Mono>> {
        for d in 0..=self.max_degree() {
            if let Some(u) = self.monomial_witness_in_degree(d, order)? {
                return Ok(Some(u));
            }
        }
        Ok(None)
    }

    pub fn monomial_witness_in_degree(&self, d: usize, order: &WeightOrder) -> Result<Option<Mono>> {
        if self.pieces[d].blocks.is_empty() {
            return Ok(None);
        }
        let sp = self.initial_space_order(d, order)?;
        Ok(sp.basis.iter().find(|b| b.is_monomial()).map(|b| b.terms.keys().next().unwrap().clone()))
    }

    /// Whether some `in_w(I)_d`, `d ≤ D`, contains a monomial; returns one.
    pub fn contains_monomial_up_to(&self, w: &[Rational]) -> Result<(bool, Option<Mono>)> {
        crate::poly::check_arity(self.nvars, w.len())?;
        self.field.check_value_group(w)?;
        let m = self.monomial_witness(&WeightOrder::weight(w))?;
        Ok((m.is_some(), m))
    }
}

/// A Gröbner basis element `x^lead + Σ c_v x^v` with every `x^v` standard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbElement {
    pub lead: Mono,
    pub poly: KPoly,
}

/// A monomial initial ideal up to degree D with its reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct MonomialInitial {
    pub order: WeightOrder,
    /// Minimal generators, sorted by degree then descending lex.
    pub gens: Vec<Mono>,
    pub basis: Vec<GbElement>,
    /// Monomials of the initial ideal in each degree.
    pub per_degree: Vec<BTreeSet<Mono>>,
}

impl GradedPieces {
    /// Computes `in_O(I)` degreewise when it is monomial, with the reduced
    /// Gröbner basis elements of its minimal generators. Returns `None` when
    /// `O` has no lex tie-break and the initial ideal is not monomial.
    pub fn monomial_initial(&self, order: &WeightOrder) -> Result<Option<MonomialInitial>> {
        let mut per_degree: Vec<BTreeSet<Mono>> = Vec::new();
        let mut gens = Vec::new();
        let mut basis = Vec::new();
        let k = self.field.residue_field();
        for (d, p) in self.pieces.iter().enumerate() {
            let mut shifted: HashSet<usize> = HashSet::new();
            if d > 0 {
                for u in &per_degree[d - 1] {
                    for i in 0..self.nvars {
                        let mut v = u.clone();
                        v[i] += 1;
                        shifted.insert(p.index[&v]);
                    }
                }
            }
            let mut count = vec![0usize; p.blocks.len()];
            for &c in &shifted {
                match p.block_of[c] {
                    Some(b) => count[b] += 1,
                    None => return Err(Error::InconsistentInitial(format!("degree {d}: I_d smaller than x·I_(d-1)"))),
                }
            }
            let mut here: BTreeSet<Mono> = shifted.iter().map(|&c| p.monomials[c].clone()).collect();
            for (b, blk) in p.blocks.iter().enumerate() {
                if count[b] == blk.rows.len() {
                    continue;
                }
                let keys = order.column_keys(&blk.cols.iter().map(|&c| p.monomials[c].clone()).collect::<Vec<_>>());
                let kref: Vec<&Vec<Rational>> = keys.iter().collect();
                let bi = eliminate_block(&self.field, &blk.rows, &kref, order)?;
                if !order.lex {
                    let mut forms = bi.forms.clone();
                    rref(&k, &mut forms);
                    if forms.iter().any(|r| r.iter().filter(|x| !x.is_zero()).count() != 1) {
                        return Ok(None);
                    }
                }
                let piv: BTreeSet<usize> = bi.pivots.iter().copied().collect();
                if blk.cols.iter().enumerate().any(|(i, c)| shifted.contains(c) && !piv.contains(&i)) {
                    return Err(Error::InconsistentInitial(format!("degree {d}: initial ideal not closed under multiplication")));
                }
                // Reduced echelon form with the initial monomials as pivots.
                let order_cols: Vec<usize> =
                    piv.iter().copied().chain((0..blk.cols.len()).filter(|i| !piv.contains(i))).collect();
                let mut rows = blk.rows.clone();
                let got = rref_ordered(&self.field, &mut rows, Some(&order_cols));
                if got.len() != piv.len() || got.iter().any(|c| !piv.contains(c)) {
                    return Err(Error::InconsistentInitial(format!("degree {d}: initial monomials are not a pivot set")));
                }
                for (row, &pc) in rows.iter().zip(&got) {
                    let c = blk.cols[pc];
                    here.insert(p.monomials[c].clone());
                    if shifted.contains(&c) {
                        continue;
                    }
                    let mut poly = Poly::zero(self.nvars);
                    for (cc, x) in blk.cols.iter().zip(row) {
                        if !x.is_zero() {
                            poly.terms.insert(p.monomials[*cc].clone(), x.clone());
                        }
                    }
                    gens.push(p.monomials[c].clone());
                    basis.push(GbElement { lead: p.monomials[c].clone(), poly });
                }
            }
            per_degree.push(here);
        }
        let mut idx: Vec<usize> = (0..gens.len()).collect();
        let deg = |u: &Mono| u.iter().sum::<i32>();
        idx.sort_by(|&a, &b| deg(&gens[a]).cmp(&deg(&gens[b])).then(gens[b].cmp(&gens[a])));
        let gens = idx.iter().map(|&i| gens[i].clone()).collect();
        let basis = idx.iter().map(|&i| basis[i].clone()).collect();
        Ok(Some(MonomialInitial { order: order.clone(), gens, basis, per_degree }))
    }

    /// Lemma-style generic perturbation: finds an integer `v` with
    /// `in_v(in_w(I))` monomial up to D and the exact `ε` with
    /// `in_{w+ε'v}(I) = in_v(in_w(I))` for `0 < ε' < ε`.
    pub fn generic_monomial_initial<R: Rng>(&self, w: &[Rational], rng: &mut R) -> Result<GenericInitial> {
        crate::poly::check_arity(self.nvars, w.len())?;
        let mut bound: i64 = 8;
        const RETRIES: usize = 8;
        for _ in 0..RETRIES {
            let v: Vec<Rational> = (0..self.nvars).map(|_| Rational::from_int(rng.gen_range(-bound..=bound))).collect();
            let order = WeightOrder::weight(w).then(&v);
            if let Some(m) = self.monomial_initial(&order)? {
                let epsilon = epsilon_of_basis(&self.field, &m.basis, w, &v)?;
                return Ok(GenericInitial { v, epsilon, initial: m });
            }
            bound *= 2;
        }
        Err(Error::RetryExhausted(RETRIES))
    }

    /// Reduced Gröbner basis at `w`; requires `in_w(I)` monomial up to D.
    pub fn groebner_basis_at(&self, w: &[Rational]) -> Result<Vec<GbElement>> {
        match self.monomial_initial(&WeightOrder::weight(w))? {
            Some(m) => Ok(m.basis),
            None => Err(Error::InconsistentInitial("initial ideal at w is not monomial; perturb first".into())),
        }
    }
}

/// `min_i ε(g_i)`: how far one can move from `w` along `v` before the
/// monomial initial ideal of the basis changes.
pub fn epsilon_of_basis(field: &FieldSpec, basis: &[GbElement], w: &[Rational], v: &[Rational]) -> Result<Rational> {
    let mut eps: Option<Rational> = None;
    for g in basis {
        let e = g.poly.epsilon_bound(field, w, v)?;
        if eps.as_ref().is_none_or(|x| e < *x) {
            eps = Some(e);
        }
    }
    Ok(eps.unwrap_or_else(Rational::one))
}

#[derive(Clone, Debug)]
pub struct GenericInitial {
    pub v: Vec<Rational>,
    pub epsilon: Rational,
    pub initial: MonomialInitial,
}

/// Convenience wrappers taking the ideal directly.
pub fn macaulay_piece(ideal: &HomogeneousIdeal, d: usize) -> MacaulayPiece {
    GradedPieces::build(ideal, d).macaulay_piece(d)
}

pub fn hilbert_dim(ideal: &HomogeneousIdeal, d: usize) -> usize {
    GradedPieces::build(ideal, d).hilbert_dim(d)
}

pub fn initial_space(ideal: &HomogeneousIdeal, d: usize, w: &[Rational]) -> Result<InitialSpace> {
    GradedPieces::build(ideal, d).initial_space(d, w)
}

pub fn contains_monomial_up_to(ideal: &HomogeneousIdeal, w: &[Rational], max_degree: usize) -> Result<(bool, Option<Mono>)> {
    GradedPieces::build(ideal, max_degree).contains_monomial_up_to(w)
}

pub fn groebner_basis_at(ideal: &HomogeneousIdeal, w: &[Rational], max_degree: usize) -> Result<Vec<GbElement>> {
    crate::poly::check_arity(ideal.nvars, w.len())?;
    ideal.field.check_value_group(w)?;
    GradedPieces::build(ideal, max_degree).groebner_basis_at(w)
}

pub fn generic_monomial_initial<R: Rng>(
    ideal: &HomogeneousIdeal,
    w: &[Rational],
    max_degree: usize,
    rng: &mut R,
) -> Result<GenericInitial> {
    ideal.field.check_value_group(w)?;
    GradedPieces::build(ideal, max_degree).generic_monomial_initial(w, rng)
}

/// Applies `in_v` to each basis element of an initial space and re-reduces:
/// the degree-d part of `in_v(in_w(I))`.
pub fn initial_of_initial_space(k: &ResidueField, sp: &InitialSpace, v: &[Rational], nvars: usize) -> InitialSpace {
    // in_v of a subspace is spanned by in_v of an echelon basis with respect to
    // the order (v, lex); reduce against it the same way as over K.
    let mut rows: Vec<RPoly> = sp.basis.clone();
    let mut out: Vec<RPoly> = Vec::new();
    while !rows.is_empty() {
        let r = rows.remove(0);
        let key = |u: &Mono| (dot_int(v, u), std::cmp::Reverse(u.clone()));
        let (lead, lc) = r.terms.iter().min_by_key(|(u, _)| key(u)).map(|(u, c)| (u.clone(), c.clone())).unwrap();
        for other in rows.iter_mut() {
            if let Some(c) = other.terms.get(&lead).cloned() {
                let factor = k.div(&c, &lc);
                *other = other.sub(k, &r.scale(k, &factor));
            }
        }
        rows.retain(|p| !p.is_zero());
        out.push(r.initial_form_residue(v));
    }
    let mut sp2 = space_from_polys(k, out, nvars, sp.degree, sp.basis.len() + sp.standard.len());
    sp2.degree = sp.degree;
    sp2
}

/// Canonical InitialSpace spanned by the given degree-d residue polynomials.
pub fn space_from_polys(k: &ResidueField, polys: Vec<RPoly>, nvars: usize, d: usize, _ncols: usize) -> InitialSpace {
    let monos = monomials_of_degree(nvars, d);
    let index: HashMap<&Mono, usize> = monos.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let mut rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            let mut r = vec![Rational::zero(); monos.len()];
            for (u, c) in &p.terms {
                r[index[u]] = c.clone();
            }
            r
        })
        .collect();
    let piv = rref(k, &mut rows);
    let basis: Vec<RPoly> = rows
        .iter()
        .map(|r| {
            let mut p = Poly::zero(nvars);
            for (c, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    p.terms.insert(monos[c].clone(), x.clone());
                }
            }
            p
        })
        .collect();
    let monomial = basis.iter().all(|b| b.is_monomial());
    let mut monomials: Vec<Mono> =
        if monomial { basis.iter().map(|b| b.terms.keys().next().unwrap().clone()).collect() } else { Vec::new() };
    monomials.sort_by(|a, b| b.cmp(a));
    let standard = (0..monos.len()).filter(|c| !piv.contains(c)).map(|c| monos[c].clone()).collect();
    InitialSpace { degree: d, basis, monomial, monomials, standard }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn ideal(field: FieldSpec, vars: &[&str], gens: &[&str]) -> HomogeneousIdeal {
        let n = names(vars);
        let g = gens.iter().map(|s| parse_poly(s, &field, &n).unwrap()).collect();
        HomogeneousIdeal::new(field, n.len(), g).unwrap()
    }

    #[test]
    fn two_generator_initial_ideal() {
        let f = FieldSpec::padic(2).unwrap();
        let i = ideal(f, &["x", "y", "z"], &["x+2*y", "x+4*z"]);
        let sp = initial_space(&i, 1, &[q(1), q(1), q(1)]).unwrap();
        assert!(sp.monomial);
        assert_eq!(sp.monomials, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(hilbert_dim(&i, 1), 1);
        let gb = groebner_basis_at(&i, &[q(1), q(1), q(1)], 1).unwrap();
        let n = names(&["x", "y", "z"]);
        let printed: Vec<String> = gb.iter().map(|g| g.poly.format(&f, &n)).collect();
        assert_eq!(printed, vec!["x+4*z", "y-2*z"]);
    }

    #[test]
    fn three_adic_linear_form() {
        let f = FieldSpec::padic(3).unwrap();
        let i = ideal(f, &["x", "y", "z"], &["3*x+8*y+6*z"]);
        let sp = initial_space(&i, 1, &[q(1), q(1), q(1)]).unwrap();
        assert_eq!(sp.monomials, vec![vec![0, 1, 0]]);
        let gb = groebner_basis_at(&i, &[q(1), q(1), q(1)], 1).unwrap();
        let n = names(&["x", "y", "z"]);
        assert_eq!(gb[0].poly.format(&f, &n), "3/8*x+y+3/4*z");
        assert_eq!(macaulay_piece(&i, 1).s(), 1);
        assert_eq!(macaulay_piece(&i, 0).s(), 0);
    }

    #[test]
    fn generic_perturbation_of_trivial_ideal() {
        use rand::SeedableRng;
        let t = FieldSpec::trivial();
        let i = ideal(t, &["x", "y", "z"], &["x+2*y", "x+4*z"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = generic_monomial_initial(&i, &[q(0), q(0), q(0)], 1, &mut rng).unwrap();
        assert_eq!(g.initial.gens.len(), 2);
        assert!(g.epsilon.is_positive());
        let (has, _) = contains_monomial_up_to(&i, &[q(0), q(1), q(1)], 1).unwrap();
        assert!(has);
    }

    #[test]
    fn monomial_enumeration_order() {
        assert_eq!(monomials_of_degree(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(binomial(5, 2), 10);
    }
}
