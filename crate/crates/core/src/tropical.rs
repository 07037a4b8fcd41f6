//! Tropical hypersurfaces, tropicalization of Laurent ideals, tropical bases.

use std::collections::BTreeSet;
use std::fmt;

use log::{info, warn};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grobner_complex::{check_degree_bound, groebner_complex, ComplexOptions, GrobnerComplex};
use crate::ideal_graded::{GradedPieces, HomogeneousIdeal, WeightOrder};
use crate::linalg::rref_ordered;
use crate::poly::{check_arity, KPoly, Mono, Poly};
use crate::polyhedra::{nonlinearity_locus, PolyhedralComplex, QPolyhedron, TropicalAffineFamily};
use crate::rational::Rational;
use crate::valued_field::{FieldElement, FieldSpec};

/// Ideal of the Laurent ring `K[x₁^±,…,xₙ^±]`.
#[derive(Clone, Debug)]
pub struct LaurentIdeal {
    pub field: FieldSpec,
    pub nvars: usize,
    pub generators: Vec<KPoly>,
}

impl LaurentIdeal {
    pub fn new(field: FieldSpec, nvars: usize, generators: Vec<KPoly>) -> Result<Self> {
        for g in &generators {
            check_arity(nvars, g.nvars)?;
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
        }
        Ok(LaurentIdeal { field, nvars, generators })
    }
}

/// `trop(V(f))` as the nonlinearity locus of `w ↦ min(val(c_u) + w·u)`.
pub fn trop_hypersurface(field: &FieldSpec, f: &KPoly) -> Result<PolyhedralComplex> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.len() == 1 {
        return Err(Error::MonomialInput);
    }
    let fam = TropicalAffineFamily::new(
        f.terms
            .iter()
            .map(|(u, c)| (field.val(c).unwrap(), u.iter().map(|&e| Rational::from_int(e as i64)).collect()))
            .collect(),
    );
    let cx = nonlinearity_locus(&fam);
    let top = f.nvars as isize - 1;
    if cx.maximal_cells().iter().any(|c| c.dim() != top) {
        warn!("tropical hypersurface is not pure of dimension {top}");
    }
    Ok(cx)
}

/// Records that degreewise saturation is bounded and therefore uncertified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationWarning {
    pub max_degree: usize,
    pub slack: usize,
    pub rounds: usize,
    pub added: usize,
}

impl fmt::Display for SaturationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SaturationWarning: saturation computed degreewise up to {} with slack {} ({} rounds, {} generators added); completeness is not certified",
            self.max_degree, self.slack, self.rounds, self.added
        )
    }
}

/// Homogenization `x₀^{deg} f(x/x₀)` of `f` after clearing Laurent denominators.
pub fn homogenize_laurent(f: &KPoly) -> Result<KPoly> {
    f.monomial_clear().homogenize()
}

/// Elements `h ∈ S_d` with `x_i h ∈ J_{d+1}`, for every `i`, not already in `J_d`.
fn colon_candidates(pieces: &GradedPieces, d: usize) -> Vec<KPoly> {
    let field = &pieces.field;
    let n = pieces.nvars;
    let next = &pieces.pieces[d + 1];
    let mut out = Vec::new();
    for blk in &next.blocks {
        for i in 0..n {
            let div: Vec<bool> = blk.cols.iter().map(|&c| next.monomials[c][i] > 0).collect();
            if !div.iter().any(|&x| x) {
                continue;
            }
            let order: Vec<usize> = (0..blk.cols.len()).filter(|&j| !div[j]).chain((0..blk.cols.len()).filter(|&j| div[j])).collect();
            let mut rows = blk.rows.clone();
            let piv = rref_ordered(field, &mut rows, Some(&order));
            for (row, p) in rows.iter().zip(piv) {
                if !div[p] {
                    continue;
                }
                let mut h: KPoly = Poly::zero(n);
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        let mut u = next.monomials[blk.cols[j]].clone();
                        u[i] -= 1;
                        h.terms.insert(u, x.clone());
                    }
                }
                if !pieces.contains(&h) {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// Generators of `Iʰ` valid degreewise up to `D`: homogenized generators,
/// closed under colons by single variables computed up to degree `D + slack`.
pub fn homogenized_ideal(ideal: &LaurentIdeal, max_degree: usize, slack: usize) -> Result<(HomogeneousIdeal, SaturationWarning)> {
    let field = ideal.field;
    let n = ideal.nvars + 1;
    let mut gens: Vec<KPoly> = ideal.generators.iter().map(homogenize_laurent).collect::<Result<_>>()?;
    let top = max_degree.max(gens.iter().map(|g| g.degree() as usize).max().unwrap_or(0)) + slack;
    let mut rounds = 0;
    let mut added = 0;
    loop {
        rounds += 1;
        let current = HomogeneousIdeal::new(field, n, gens.clone())?;
        let pieces = GradedPieces::build(&current, top);
        let mut new = Vec::new();
        for d in 0..top {
            new.extend(colon_candidates(&pieces, d));
        }
        if new.is_empty() || rounds > 4 * (top + 1) {
            break;
        }
        added += new.len();
        gens.extend(new);
    }
    let gens = minimize_generators(field, n, gens, max_degree)?;
    let w = SaturationWarning { max_degree, slack, rounds, added };
    warn!("{w}");
    Ok((HomogeneousIdeal::new(field, n, gens)?, w))
}

/// Drops generators of degree > D and those in the span of earlier ones.
fn minimize_generators(field: FieldSpec, n: usize, mut gens: Vec<KPoly>, max_degree: usize) -> Result<Vec<KPoly>> {
    gens.retain(|g| g.degree() as usize <= max_degree);
    gens.sort_by_key(|g| (g.degree(), g.len()));
    let mut kept: Vec<KPoly> = Vec::new();
    for g in gens {
        let d = g.degree() as usize;
        let pieces = GradedPieces::build(&HomogeneousIdeal::new(field, n, kept.clone())?, d);
        if !pieces.contains(&g) {
            kept.push(g);
        }
    }
    Ok(kept)
}

/// `trop(V(I))` in `Rⁿ` together with the Gröbner complex it was read from.
#[derive(Clone, Debug)]
pub struct Tropicalization {
    pub complex: PolyhedralComplex,
    pub groebner: GrobnerComplex,
    pub homogenized: HomogeneousIdeal,
    /// For each Gröbner cell: a monomial in its initial ideal, if any.
    pub monomials: Vec<Option<Mono>>,
    pub warning: SaturationWarning,
    pub max_degree: usize,
}

impl Tropicalization {
    /// Cells of dimension `lineality + 1` (rays modulo lineality).
    pub fn rays(&self) -> usize {
        self.complex.count_dim(self.complex.lineality_dim() as isize + 1)
    }

    /// Cells of dimension `lineality + 2`.
    pub fn cones(&self) -> usize {
        self.complex.count_dim(self.complex.lineality_dim() as isize + 2)
    }
}

/// Monomial in `in_w(I)` up to degree D for a Gröbner cell, if there is one.
fn cell_monomial(pieces: &GradedPieces, gc: &GrobnerComplex, i: usize) -> Result<Option<Mono>> {
    let cell = &gc.cells[i];
    if let Some(g) = cell.initial_gens.iter().find(|g| g.is_monomial()) {
        return Ok(Some(g.terms.keys().next().unwrap().clone()));
    }
    // An ideal containing a monomial of degree ≤ D contains one of degree D.
    let order = WeightOrder::weight(&cell.representative_w);
    pieces.monomial_witness_in_degree(pieces.max_degree(), &order)
}

/// Tropical variety of a Laurent ideal from the `w₀ = 0` slice of the
/// Gröbner complex of its homogenization.
pub fn tropicalize(ideal: &LaurentIdeal, max_degree: usize, slack: usize, opts: &ComplexOptions) -> Result<Tropicalization> {
    let (h, warning) = homogenized_ideal(ideal, max_degree, slack)?;
    check_degree_bound(&h, max_degree)?;
    let gc = groebner_complex(&h, max_degree, opts)?;
    let pieces = GradedPieces::build(&h, max_degree);
    let monomials: Vec<Option<Mono>> = (0..gc.len()).map(|i| cell_monomial(&pieces, &gc, i)).collect::<Result<_>>()?;
    let keep: Vec<bool> = monomials.iter().map(|m| m.is_none()).collect();
    if !keep.iter().any(|&k| k) {
        return Err(Error::IdealIsUnit);
    }
    let n = ideal.nvars;
    let sliced: Vec<(QPolyhedron, Option<String>)> = (0..gc.len())
        .filter(|&i| keep[i])
        .map(|i| (gc.complex.cells[i].slice_drop(0), gc.complex.labels[i].clone()))
        .filter(|(c, _)| !c.is_empty())
        .collect();
    let complex = PolyhedralComplex::from_cells(n, sliced);
    info!("tropicalize: {} cells, lineality {}", complex.len(), complex.lineality_dim());
    Ok(Tropicalization { complex, groebner: gc, homogenized: h, monomials, warning, max_degree })
}

/// Generators plus witnesses, each witness certifying the cells listed for it.
#[derive(Clone, Debug)]
pub struct TropicalBasis {
    pub polynomials: Vec<KPoly>,
    /// `(Gröbner cell index, basis index)`: that element's initial form is a
    /// monomial on the cell.
    pub certificate: Vec<(usize, usize)>,
}

impl TropicalBasis {
    pub fn to_json(&self, field: &FieldSpec, names: &[String], gc: &GrobnerComplex) -> Value {
        json!({
            "polynomials": self.polynomials.iter().map(|p| p.format(field, names)).collect::<Vec<_>>(),
            "certificate": self.certificate.iter().map(|(c, b)| json!({
                "cell": c,
                "representative_w": crate::polyhedra::json::vector_json(&gc.cells[*c].representative_w),
                "basis_index": b,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Whether `in_w(f^h)` is the same monomial for every `w` in the relative
/// interior of `cell`: some term is strictly minimal at an interior point and
/// minimal on every generator of the cell.
fn certifies(field: &FieldSpec, f: &KPoly, cell: &QPolyhedron) -> Result<bool> {
    let fh = homogenize_laurent(f)?;
    let Some(p) = cell.relative_interior_point() else { return Ok(false) };
    let init = fh.initial_form_ext(field, &p)?;
    if !init.is_monomial() {
        return Ok(false);
    }
    let u = init.terms.keys().next().unwrap();
    let cu = field.val(&fh.terms[u]).unwrap();
    let lin = |w: &[Rational], a: &Mono| crate::rational::dot_int(w, a);
    for (a, c) in &fh.terms {
        if a == u {
            continue;
        }
        let ca = field.val(c).unwrap();
        if cell.vertices.iter().any(|v| &cu + &lin(v, u) > &ca + &lin(v, a))
            || cell.rays.iter().any(|r| lin(r, u) > lin(r, a))
            || cell.lineality.iter().any(|l| lin(l, u) != lin(l, a))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x^u + Σ c_a x^a ∈ I_d` with every `x^a` outside the lex-refined initial ideal at `w`.
fn witness(pieces: &GradedPieces, w: &[Rational], u: &Mono) -> Result<KPoly> {
    let d = u.iter().sum::<i32>() as usize;
    let m = pieces
        .monomial_initial(&WeightOrder::weight(w).with_lex())?
        .ok_or_else(|| Error::Internal("lex-refined initial ideal is not monomial".into()))?;
    let p = &pieces.pieces[d];
    let col = p.index[u];
    let b = p.block_of[col].ok_or_else(|| Error::Internal("witness monomial outside I_d".into()))?;
    let blk = &p.blocks[b];
    let lead: Vec<bool> = blk.cols.iter().map(|&c| m.per_degree[d].contains(&p.monomials[c])).collect();
    let order: Vec<usize> = (0..blk.cols.len()).filter(|&j| lead[j]).chain((0..blk.cols.len()).filter(|&j| !lead[j])).collect();
    let mut rows = blk.rows.clone();
    let piv = rref_ordered(&pieces.field, &mut rows, Some(&order));
    let j = blk.cols.iter().position(|&c| c == col).unwrap();
    let r = piv.iter().position(|&pc| pc == j).ok_or_else(|| {
        Error::DegreeBoundTooSmall("initial monomial is not a pivot of I_d; increase D".into())
    })?;
    let mut g: KPoly = Poly::zero(pieces.nvars);
    for (jj, x) in rows[r].iter().enumerate() {
        if !x.is_zero() {
            g.terms.insert(p.monomials[blk.cols[jj]].clone(), x.clone());
        }
    }
    Ok(g)
}

/// Rounds of the closing loop in [`tropical_basis_from`].
pub const BASIS_ROUNDS: usize = 64;

/// Original generators plus, for each cell whose initial ideal contains a
/// monomial and is not certified by an existing element on its whole
/// interior, one element of `I` whose initial form there is that monomial.
/// A closing loop then compares the prevariety with the variety and adds a
/// witness at every separating point until the supports agree.
pub fn tropical_basis_from(ideal: &LaurentIdeal, trop: &Tropicalization) -> Result<TropicalBasis> {
    let field = &ideal.field;
    let gc = &trop.groebner;
    let pieces = GradedPieces::build(&trop.homogenized, trop.max_degree);
    let mut polys = ideal.generators.clone();
    let mut cert = Vec::new();
    let mut order: Vec<usize> = (0..gc.len()).filter(|&i| trop.monomials[i].is_some()).collect();
    order.sort_by_key(|&i| (gc.complex.cells[i].dim(), i));
    let add_witness = |polys: &mut Vec<KPoly>, w: &[Rational], u: &Mono, what: &str| -> Result<usize> {
        let g = witness(&pieces, w, u)?;
        let gi = g.initial_form_ext(field, w)?;
        if !gi.is_monomial() || gi.terms.keys().next() != Some(u) {
            return Err(Error::InconsistentInitial(format!("witness for {what} has non-monomial initial form")));
        }
        polys.push(g.dehomogenize(field));
        Ok(polys.len() - 1)
    };
    for i in order {
        let cell = &gc.complex.cells[i];
        let mut found = None;
        for (k, f) in polys.iter().enumerate() {
            if certifies(field, f, cell)? {
                found = Some(k);
                break;
            }
        }
        let k = match found {
            Some(k) => k,
            None => {
                let u = trop.monomials[i].as_ref().unwrap();
                add_witness(&mut polys, &gc.cells[i].representative_w, u, &format!("cell {i}"))?
            }
        };
        cert.push((i, k));
    }
    for _ in 0..BASIS_ROUNDS {
        let pre = prevariety(field, ideal.nvars, &polys)?;
        let Some(p) = pre.support_equal(&trop.complex)?.1 else {
            return Ok(TropicalBasis { polynomials: polys, certificate: cert });
        };
        if trop.complex.support_contains(&p) {
            return Err(Error::Internal("prevariety of a subset of I misses a point of trop(V(I))".into()));
        }
        let w: Vec<Rational> = std::iter::once(Rational::zero()).chain(p.iter().cloned()).collect();
        let u = pieces
            .monomial_witness(&WeightOrder::weight(&w))?
            .ok_or_else(|| Error::DegreeBoundTooSmall(format!("no monomial in in_w(I) up to D at w = {p:?}")))?;
        info!("tropical basis: separating point {p:?}");
        let k = add_witness(&mut polys, &w, &u, "a separating point")?;
        if let Some(i) = gc.complex.cell_containing(&w) {
            cert.push((i, k));
        }
    }
    Err(Error::NonConvergence(BASIS_ROUNDS))
}

pub fn tropical_basis(ideal: &LaurentIdeal, max_degree: usize, slack: usize, opts: &ComplexOptions) -> Result<(TropicalBasis, Tropicalization)> {
    let trop = tropicalize(ideal, max_degree, slack, opts)?;
    Ok((tropical_basis_from(ideal, &trop)?, trop))
}

/// `⋂ trop(V(f))` as a complex; empty when some `f` is a monomial.
pub fn prevariety(field: &FieldSpec, nvars: usize, fs: &[KPoly]) -> Result<PolyhedralComplex> {
    let mut acc = PolyhedralComplex::from_cells(nvars, vec![(QPolyhedron::full(nvars), None)]);
    for f in fs {
        check_arity(nvars, f.nvars)?;
        match trop_hypersurface(field, f) {
            Ok(h) => acc = acc.common_refinement(&h)?,
            Err(Error::MonomialInput) => return Ok(PolyhedralComplex::empty(nvars)),
            Err(e) => return Err(e),
        }
    }
    Ok(acc)
}

/// Outcome of comparing a prevariety with the tropical variety.
#[derive(Clone, Debug)]
pub struct Verification {
    pub is_basis: bool,
    pub witness: Option<Vec<Rational>>,
    pub prevariety: PolyhedralComplex,
    pub variety: PolyhedralComplex,
}

/// Checks `F ⊆ I`, then `⋂ trop(V(f)) = trop(V(I))`.
pub fn verify_tropical_basis(
    fs: &[KPoly],
    ideal: &LaurentIdeal,
    max_degree: usize,
    slack: usize,
    opts: &ComplexOptions,
) -> Result<Verification> {
    let field = &ideal.field;
    let (h, _) = homogenized_ideal(ideal, max_degree, slack)?;
    let hs: Vec<KPoly> = fs.iter().map(homogenize_laurent).collect::<Result<_>>()?;
    let top = hs.iter().map(|f| f.degree() as usize).max().unwrap_or(0).max(max_degree);
    let pieces = GradedPieces::build(&h, top);
    for (f, fh) in fs.iter().zip(&hs) {
        if !pieces.contains(fh) {
            return Err(Error::NotInIdeal(f.format(field, &crate::poly::default_names(ideal.nvars))));
        }
    }
    let variety = match tropicalize(ideal, max_degree, slack, opts) {
        Ok(t) => t.complex,
        Err(Error::IdealIsUnit) => PolyhedralComplex::empty(ideal.nvars),
        Err(e) => return Err(e),
    };
    let pre = prevariety(field, ideal.nvars, fs)?;
    let (eq, w) = pre.support_equal(&variety)?;
    Ok(Verification { is_basis: eq, witness: w, prevariety: pre, variety })
}

/// Distinct monomials appearing as cell certificates, for reporting.
pub fn certified_monomials(trop: &Tropicalization) -> BTreeSet<Mono> {
    trop.monomials.iter().flatten().cloned().collect()
}

/// Constant polynomial helper for callers building ideals programmatically.
pub fn constant(nvars: usize, c: i64) -> KPoly {
    KPoly::constant(nvars, FieldElement::from_int(c))
}
