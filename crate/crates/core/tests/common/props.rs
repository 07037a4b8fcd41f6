//! Randomized desk-scale instances and the property checks run on them.
//!
//! Instances are drawn as small index tuples and turned into ideals here, so
//! failures shrink to readable cases.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use tropgrob::grobner_complex::{groebner_complex, ComplexOptions};
use tropgrob::ideal_graded::{initial_of_initial_space, monomials_of_degree, epsilon_of_basis, GradedPieces, HomogeneousIdeal, WeightOrder};
use tropgrob::parse::parse_element;
use tropgrob::poly::KPoly;
use tropgrob::tropical::{homogenize_laurent, trop_hypersurface, tropical_basis, verify_tropical_basis, LaurentIdeal};
use tropgrob::valued_field::{FieldKind, FieldSpec};
use tropgrob::{Error, Rational};

pub const CASES: u32 = 200;

pub fn field(i: usize) -> FieldSpec {
    match i % 4 {
        0 => FieldSpec::padic(2).unwrap(),
        1 => FieldSpec::padic(3).unwrap(),
        2 => FieldSpec::tadic(1).unwrap(),
        _ => FieldSpec::tadic(2).unwrap(),
    }
}

const PADIC_POOL: [&str; 10] = ["1", "-1", "2", "-3", "4", "6", "1/2", "3/4", "5", "-8"];
const TADIC_POOL: [&str; 10] = ["1", "-1", "2", "t", "-t^2", "1+t", "3*t", "1/t", "t^(1/2)", "2-t"];

fn coeff(f: &FieldSpec, i: usize) -> tropgrob::valued_field::FieldElement {
    let s = match f.kind {
        FieldKind::PAdic(_) => PADIC_POOL[i % 10],
        FieldKind::TAdic(n) => {
            let s = TADIC_POOL[i % 10];
            if n == 1 && s.contains("(1/2)") {
                "t^3"
            } else {
                s
            }
        }
    };
    parse_element(s, f).unwrap()
}

/// Weight coordinate `k/N` (t-adic) or `k` (p-adic): always in Γ.
fn gamma(f: &FieldSpec, k: i64) -> Rational {
    match f.kind {
        FieldKind::TAdic(n) => Rational::new(k, n as i64),
        FieldKind::PAdic(_) => Rational::from_int(k),
    }
}

fn poly_from(f: &FieldSpec, nvars: usize, monos: &[Vec<i32>], terms: &[(usize, usize)]) -> KPoly {
    let mut p = KPoly::zero(nvars);
    for &(m, c) in terms {
        p = p.add(f, &KPoly::monomial(monos[m % monos.len()].clone(), coeff(f, c)));
    }
    p
}

/// A homogeneous ideal in three variables with a weight pair and a shift.
#[derive(Clone, Debug)]
pub struct IdealCase {
    pub field: usize,
    pub gens: Vec<(usize, Vec<(usize, usize)>)>,
    pub w: Vec<i64>,
    pub v: Vec<i64>,
    pub lambda: (i64, i64),
}

pub fn ideal_case() -> impl Strategy<Value = IdealCase> {
    (
        0..4usize,
        prop::collection::vec((1..=2usize, prop::collection::vec((0..10usize, 0..10usize), 1..=3)), 1..=2),
        prop::collection::vec(-3..=3i64, 3),
        prop::collection::vec(-3..=3i64, 3),
        (-7..=7i64, 1..=4i64),
    )
        .prop_map(|(field, gens, w, v, lambda)| IdealCase { field, gens, w, v, lambda })
}

impl IdealCase {
    pub fn field(&self) -> FieldSpec {
        field(self.field)
    }

    pub fn ideal(&self) -> Option<HomogeneousIdeal> {
        let f = self.field();
        let gens: Vec<KPoly> = self
            .gens
            .iter()
            .map(|(d, t)| poly_from(&f, 3, &monomials_of_degree(3, *d), t))
            .filter(|p| !p.is_zero())
            .collect();
        if gens.is_empty() {
            return None;
        }
        HomogeneousIdeal::new(f, 3, gens).ok()
    }

    pub fn w(&self) -> Vec<Rational> {
        let f = self.field();
        self.w.iter().map(|&k| gamma(&f, k)).collect()
    }

    pub fn v(&self) -> Vec<Rational> {
        self.v.iter().map(|&k| Rational::from_int(k)).collect()
    }

    pub fn max_degree(&self) -> usize {
        3
    }
}

/// A single polynomial (not necessarily homogeneous) with two weights.
#[derive(Clone, Debug)]
pub struct PolyCase {
    pub field: usize,
    pub nvars: usize,
    pub terms: Vec<(usize, usize)>,
    pub w: Vec<i64>,
    pub v: Vec<i64>,
}

pub fn poly_case() -> impl Strategy<Value = PolyCase> {
    (1..=3usize, 0..4usize).prop_flat_map(|(n, field)| {
        (
            prop::collection::vec((0..20usize, 0..10usize), 1..=5),
            prop::collection::vec(-3..=3i64, n),
            prop::collection::vec(-3..=3i64, n),
        )
            .prop_map(move |(terms, w, v)| PolyCase { field, nvars: n, terms, w, v })
    })
}

fn monomials_up_to(n: usize, d: usize) -> Vec<Vec<i32>> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

impl PolyCase {
    pub fn field(&self) -> FieldSpec {
        field(self.field)
    }

    pub fn poly(&self) -> KPoly {
        poly_from(&self.field(), self.nvars, &monomials_up_to(self.nvars, 3), &self.terms)
    }

    pub fn w(&self) -> Vec<Rational> {
        let f = self.field();
        self.w.iter().map(|&k| gamma(&f, k)).collect()
    }

    pub fn v(&self) -> Vec<Rational> {
        self.v.iter().map(|&k| Rational::from_int(k)).collect()
    }
}

/// A Laurent ideal in two or three variables for the basis round trip.
#[derive(Clone, Debug)]
pub struct LaurentCase {
    pub field: usize,
    pub nvars: usize,
    pub gens: Vec<Vec<(usize, usize)>>,
}

pub fn laurent_case() -> impl Strategy<Value = LaurentCase> {
    (2..=3usize, 0..4usize, prop::collection::vec(prop::collection::vec((0..10usize, 0..10usize), 2..=3), 1..=2))
        .prop_map(|(nvars, field, gens)| LaurentCase { field, nvars, gens })
}

impl LaurentCase {
    pub fn field(&self) -> FieldSpec {
        field(self.field)
    }

    pub fn ideal(&self) -> Option<LaurentIdeal> {
        let f = self.field();
        let monos = monomials_up_to(self.nvars, 2);
        let gens: Vec<KPoly> = self.gens.iter().map(|t| poly_from(&f, self.nvars, &monos, t)).filter(|p| !p.is_zero()).collect();
        if gens.is_empty() {
            return None;
        }
        LaurentIdeal::new(f, self.nvars, gens).ok()
    }
}

fn lib(e: Error) -> TestCaseError {
    TestCaseError::fail(format!("library error: {e}"))
}

/// `dim (S/I)_d = #standard monomials of in_w(I)_d` for `d ≤ D`.
pub fn check_hilbert(c: &IdealCase) -> Result<(), TestCaseError> {
    let Some(i) = c.ideal() else { return Ok(()) };
    let pieces = GradedPieces::build(&i, c.max_degree());
    for d in 0..=c.max_degree() {
        let sp = pieces.initial_space(d, &c.w()).map_err(lib)?;
        prop_assert_eq!(pieces.hilbert_dim(d), sp.standard.len(), "degree {}", d);
        prop_assert_eq!(sp.basis.len() + sp.standard.len(), monomials_of_degree(3, d).len());
    }
    Ok(())
}

/// `in_v(in_w(f)) = in_{w+ε'v}(f)` with `ε' = ε/2`.
pub fn check_initial_of_initial_form(c: &PolyCase) -> Result<(), TestCaseError> {
    let f = c.field();
    let p = c.poly();
    if p.is_zero() {
        return Ok(());
    }
    let (w, v) = (c.w(), c.v());
    let eps = p.epsilon_bound(&f, &w, &v).map_err(lib)?;
    prop_assert!(eps.is_positive());
    let half = &eps / &Rational::from_int(2);
    let shifted: Vec<Rational> = w.iter().zip(&v).map(|(a, b)| a + &(b * &half)).collect();
    let lhs = p.initial_form(&f, &w).map_err(lib)?.initial_form_residue(&v);
    let rhs = p.initial_form_ext(&f, &shifted).map_err(lib)?;
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// `in_v(in_w(I))_d = in_{w+ε'v}(I)_d` for `d ≤ D`, `ε'` below the bound
/// from the reduced Gröbner basis for the order `(w, v, lex)`.
pub fn check_initial_of_initial_ideal(c: &IdealCase) -> Result<(), TestCaseError> {
    let Some(i) = c.ideal() else { return Ok(()) };
    let f = c.field();
    let k = f.residue_field();
    let (w, v) = (c.w(), c.v());
    let pieces = GradedPieces::build(&i, c.max_degree());
    let m = pieces
        .monomial_initial(&WeightOrder::weight(&w).then(&v).with_lex())
        .map_err(lib)?
        .ok_or_else(|| TestCaseError::fail("lex-refined order gave a non-monomial initial ideal"))?;
    let eps = epsilon_of_basis(&f, &m.basis, &w, &v).map_err(lib)?;
    let half = &eps / &Rational::from_int(2);
    let shifted: Vec<Rational> = w.iter().zip(&v).map(|(a, b)| a + &(b * &half)).collect();
    for d in 0..=c.max_degree() {
        let at_w = pieces.initial_space(d, &w).map_err(lib)?;
        let lhs = initial_of_initial_space(&k, &at_w, &v, 3);
        let rhs = pieces.initial_space_order(d, &WeightOrder::weight(&shifted)).map_err(lib)?;
        prop_assert_eq!(&lhs.basis, &rhs.basis, "degree {}", d);
    }
    Ok(())
}

/// `in_{w+λ·1}(I) = in_w(I)` for rational `λ`.
pub fn check_lineality(c: &IdealCase) -> Result<(), TestCaseError> {
    let Some(i) = c.ideal() else { return Ok(()) };
    let w = c.w();
    let lambda = Rational::new(c.lambda.0, c.lambda.1);
    let moved: Vec<Rational> = w.iter().map(|x| x + &lambda).collect();
    let pieces = GradedPieces::build(&i, c.max_degree());
    for d in 0..=c.max_degree() {
        let a = pieces.initial_space_order(d, &WeightOrder::weight(&w)).map_err(lib)?;
        let b = pieces.initial_space_order(d, &WeightOrder::weight(&moved)).map_err(lib)?;
        prop_assert_eq!(a.basis, b.basis, "degree {}", d);
    }
    Ok(())
}

/// Every emitted complex satisfies the complex axioms: Gröbner complexes of
/// random ideals and tropical hypersurfaces of random polynomials.
pub fn check_complex_axioms(c: &IdealCase) -> Result<(), TestCaseError> {
    let Some(i) = c.ideal() else { return Ok(()) };
    let d = i.max_generator_degree() + 1;
    let opts = ComplexOptions { seed: c.w.iter().map(|x| x.unsigned_abs()).sum(), ..ComplexOptions::default() };
    let gc = groebner_complex(&i, d, &opts).map_err(lib)?;
    gc.complex.check_axioms().map_err(TestCaseError::fail)?;
    prop_assert!(gc.complex.lineality_contains(&[Rational::one(), Rational::one(), Rational::one()]));
    for g in &i.generators {
        match trop_hypersurface(&i.field, g) {
            Ok(h) => h.check_axioms().map_err(TestCaseError::fail)?,
            Err(Error::MonomialInput) => {}
            Err(e) => return Err(lib(e)),
        }
    }
    Ok(())
}

/// `verify_tropical_basis(tropical_basis(I), I)` holds.
pub fn check_basis_round_trip(c: &LaurentCase) -> Result<(), TestCaseError> {
    let Some(i) = c.ideal() else { return Ok(()) };
    let mut top = 0;
    for g in &i.generators {
        top = top.max(homogenize_laurent(g).map_err(lib)?.degree() as usize);
    }
    let d = top + 1;
    let opts = ComplexOptions::default();
    let (basis, trop) = match tropical_basis(&i, d, 2, &opts) {
        Ok(x) => x,
        Err(Error::IdealIsUnit) => return Ok(()),
        Err(e) => return Err(lib(e)),
    };
    trop.complex.check_axioms().map_err(TestCaseError::fail)?;
    let v = verify_tropical_basis(&basis.polynomials, &i, d, 2, &opts).map_err(lib)?;
    prop_assert!(v.is_basis, "witness {:?}", v.witness);
    Ok(())
}
