//! Sparse multivariate (Laurent) polynomials over K and over its residue field.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::{dot_int, Rational};
use crate::valued_field::{Field, FieldElement, FieldSpec, ResidueField};

/// Exponent vector. Homogeneous rings put the homogenizing variable x₀ first.
pub type Mono = Vec<i32>;

/// A polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, C>,
}

/// Polynomial over the valued field K.
pub type KPoly = Poly<FieldElement>;
/// Polynomial over the residue field 𝕜 (F_p values are stored as `0..p`).
pub type RPoly = Poly<Rational>;

impl<C: Clone + PartialEq + std::fmt::Debug> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn from_terms<F: Field<Elem = C>>(f: &F, nvars: usize, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (u, c) in terms {
            p.add_term(f, u, c);
        }
        p
    }

    pub fn add_term<F: Field<Elem = C>>(&mut self, f: &F, u: Mono, c: C) {
        debug_assert_eq!(u.len(), self.nvars);
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&u) {
            Some(x) => {
                let s = f.add(x, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&u);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(u, c);
            }
        }
    }

    pub fn add<F: Field<Elem = C>>(&self, f: &F, o: &Self) -> Self {
        let mut p = self.clone();
        for (u, c) in &o.terms {
            p.add_term(f, u.clone(), c.clone());
        }
        p
    }

    pub fn neg<F: Field<Elem = C>>(&self, f: &F) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(u, c)| (u.clone(), f.neg(c))).collect() }
    }

    pub fn sub<F: Field<Elem = C>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn scale<F: Field<Elem = C>>(&self, f: &F, c: &C) -> Self {
        if f.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(u, a)| (u.clone(), f.mul(a, c))).collect() }
    }

    pub fn mul<F: Field<Elem = C>>(&self, f: &F, o: &Self) -> Self {
        let mut p = Poly::zero(self.nvars);
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let w: Mono = u.iter().zip(v).map(|(x, y)| x + y).collect();
                p.add_term(f, w, f.mul(a, b));
            }
        }
        p
    }

    /// Multiplies by the monomial `x^a`.
    pub fn shift(&self, a: &[i32]) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(u, c)| (u.iter().zip(a).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    /// Largest total degree of a term.
    pub fn degree(&self) -> i32 {
        self.terms.keys().map(|u| u.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|u| u.iter().sum::<i32>());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|u| u.iter().any(|&e| e < 0))
    }

    /// Substitutes x₀ = 1 by deleting the first coordinate.
    pub fn dehomogenize<F: Field<Elem = C>>(&self, f: &F) -> Self {
        Poly::from_terms(f, self.nvars - 1, self.terms.iter().map(|(u, c)| (u[1..].to_vec(), c.clone())))
    }

    /// Multiplies by the monomial making every exponent nonnegative with each
    /// variable's minimal exponent zero.
    pub fn monomial_clear(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mins: Vec<i32> = (0..self.nvars).map(|i| self.terms.keys().map(|u| u[i]).min().unwrap()).collect();
        let neg: Vec<i32> = mins.iter().map(|m| -m).collect();
        self.shift(&neg)
    }

    /// Terms in the canonical printing order (lexicographically descending).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter().rev()
    }

    /// Renders the polynomial with the given variable names; `coef` prints a
    /// single coefficient.
    pub fn format_with(&self, names: &[String], coef: impl Fn(&C) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (u, c) in self.terms_desc() {
            let mono = format_monomial(u, names);
            let cs = coef(c);
            let compound = cs.chars().skip(1).any(|ch| ch == '+' || ch == '-');
            let mut term = if mono.is_empty() {
                if compound {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if compound {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                term.insert(0, '+');
            }
            out.push_str(&term);
        }
        out
    }
}

pub fn format_monomial(u: &[i32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, name) in u.iter().zip(names) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Default names `x1..xn`, or `x0..xn` for a homogeneous ring.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Names of the homogenized ring: a fresh x₀ name followed by `names`.
pub fn homogenized_names(names: &[String]) -> Vec<String> {
    let mut h = "x0".to_string();
    while names.contains(&h) {
        h.push('_');
    }
    std::iter::once(h).chain(names.iter().cloned()).collect()
}

/// Result of evaluating trop(f) at a weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropValue {
    pub value: Rational,
    pub argmin: Vec<Mono>,
}

impl KPoly {
    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn monomial(u: Mono, c: FieldElement) -> Self {
        let mut p = Poly::zero(u.len());
        if !c.is_zero() {
            p.terms.insert(u, c);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut u = vec![0; nvars];
        u[i] = 1;
        Self::monomial(u, FieldElement::one())
    }

    pub fn format(&self, field: &FieldSpec, names: &[String]) -> String {
        self.format_with(names, |c| field.format(c))
    }

    /// `val(c_u) + w·u` for every term.
    pub fn term_values(&self, field: &FieldSpec, w: &[Rational]) -> Vec<(Rational, &Mono, &FieldElement)> {
        self.terms
            .iter()
            .map(|(u, c)| (field.val(c).expect("stored coefficients are nonzero") + dot_int(w, u), u, c))
            .collect()
    }

    /// `trop(f)(w) = min(val(c_u) + w·u)` together with the minimizing monomials.
    pub fn trop_eval(&self, field: &FieldSpec, w: &[Rational]) -> Result<TropValue> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        check_arity(self.nvars, w.len())?;
        let vals = self.term_values(field, w);
        let value = vals.iter().map(|t| t.0.clone()).min().unwrap();
        let argmin = vals.iter().filter(|t| t.0 == value).map(|t| t.1.clone()).collect();
        Ok(TropValue { value, argmin })
    }

    /// `in_w(f)`; rejects weights outside Γ.
    pub fn initial_form(&self, field: &FieldSpec, w: &[Rational]) -> Result<RPoly> {
        check_arity(self.nvars, w.len())?;
        field.check_value_group(w)?;
        self.initial_form_ext(field, w)
    }

    /// `in_w(f)` for any rational `w`. Outside Γ this is the initial form over
    /// a ramified extension of K, which only depends on `val(c_u) + w·u` and on
    /// the unit parts of the coefficients.
    pub fn initial_form_ext(&self, field: &FieldSpec, w: &[Rational]) -> Result<RPoly> {
        let tv = self.trop_eval(field, w)?;
        let mut p = Poly::zero(self.nvars);
        for u in tv.argmin {
            let c = field.unit_part(&self.terms[&u])?;
            p.terms.insert(u, c);
        }
        Ok(p)
    }

    /// Largest ε such that `in_{w+ε'v}(f) = in_v(in_w(f))` for all `0 < ε' < ε`;
    /// 1 when nothing competes.
    pub fn epsilon_bound(&self, field: &FieldSpec, w: &[Rational], v: &[Rational]) -> Result<Rational> {
        let tv = self.trop_eval(field, w)?;
        check_arity(self.nvars, v.len())?;
        let w_prime = tv.argmin.iter().map(|u| dot_int(v, u)).min().unwrap();
        let mut eps: Option<Rational> = None;
        for (a, u, _) in self.term_values(field, w) {
            if a == tv.value {
                continue;
            }
            let b = dot_int(v, u);
            if b < w_prime {
                let bound = (&a - &tv.value) / (&w_prime - &b);
                if eps.as_ref().is_none_or(|e| bound < *e) {
                    eps = Some(bound);
                }
            }
        }
        Ok(eps.unwrap_or_else(Rational::one))
    }

    /// `x₀^{deg f} f(x/x₀)`, with x₀ as the first variable.
    pub fn homogenize(&self) -> Result<KPoly> {
        if let Some(u) = self.terms.keys().find(|u| u.iter().any(|&e| e < 0)) {
            return Err(Error::NotPolynomial(format!("{u:?}")));
        }
        let d = self.degree();
        Ok(Poly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(u, c)| {
                    let mut v = Vec::with_capacity(u.len() + 1);
                    v.push(d - u.iter().sum::<i32>());
                    v.extend_from_slice(u);
                    (v, c.clone())
                })
                .collect(),
        })
    }

    pub fn eval(&self, x: &[FieldElement]) -> Result<FieldElement> {
        let mut acc = FieldElement::zero();
        for (u, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(u) {
                t = t.mul(&xi.pow(e as i64)?);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl RPoly {
    pub fn format(&self, names: &[String]) -> String {
        self.format_with(names, |c| c.to_string())
    }

    /// Trivial-valuation initial form: keeps the terms minimizing `v·u`.
    pub fn initial_form_residue(&self, v: &[Rational]) -> RPoly {
        let Some(m) = self.terms.keys().map(|u| dot_int(v, u)).min() else {
            return self.clone();
        };
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(u, _)| dot_int(v, u) == m).map(|(u, c)| (u.clone(), c.clone())).collect(),
        }
    }

    /// Scales so the leading (first printed) coefficient is one.
    pub fn monic(&self, k: &ResidueField) -> RPoly {
        match self.terms_desc().next() {
            Some((_, c)) => {
                let inv = k.div(&Rational::one(), c);
                self.scale(k, &inv)
            }
            None => self.clone(),
        }
    }
}

pub fn check_arity(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Arity { expected, got });
    }
    Ok(())
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

    #[test]
    fn two_adic_initial_form() {
        let f2 = FieldSpec::padic(2).unwrap();
        let n = names(&["x", "y"]);
        let f = parse_poly("6*x^2+5*x*y+7*y^2", &f2, &n).unwrap();
        let tv = f.trop_eval(&f2, &[q(1), q(2)]).unwrap();
        assert_eq!(tv.value, q(3));
        assert_eq!(tv.argmin.len(), 2);
        assert_eq!(f.initial_form(&f2, &[q(1), q(2)]).unwrap().format(&n), "x^2+x*y");
        assert!(f.initial_form(&f2, &[Rational::new(1, 2), q(0)]).is_err());
    }

    #[test]
    fn epsilon_breakpoint() {
        let t = FieldSpec::tadic(1).unwrap();
        let n = names(&["x", "y"]);
        let f = parse_poly("x+t*y", &t, &n).unwrap();
        let e = f.epsilon_bound(&t, &[q(0), q(0)], &[q(1), q(-1)]).unwrap();
        assert_eq!(e, Rational::new(1, 2));
        assert_eq!(f.epsilon_bound(&t, &[q(0), q(0)], &[q(0), q(0)]).unwrap(), q(1));
    }

    #[test]
    fn homogenize_clear_dehomogenize() {
        let t = FieldSpec::trivial();
        let n = names(&["x", "y"]);
        let f = parse_poly("x+y+1", &t, &n).unwrap();
        let h = f.homogenize().unwrap();
        assert_eq!(h.format(&t, &homogenized_names(&n)), "x0+x+y");
        assert_eq!(h.dehomogenize(&t), f);
        let g = parse_poly("x^-2+x^-1", &t, &n).unwrap().monomial_clear();
        assert_eq!(g.format(&t, &n), "x+1");
        let r = parse_poly("x^2+x*y", &t, &n).unwrap().initial_form(&t, &[q(0), q(0)]).unwrap();
        assert_eq!(r.initial_form_residue(&[q(0), q(1)]).format(&n), "x^2");
    }
}
