//! Valued fields: Q with a p-adic valuation, and Q(t^{1/N}) with the t-adic one.
//!
//! Elements are [`FieldElement`]s; the field they live in is described by a
//! [`FieldSpec`], which owns everything valuation-dependent (val, residue,
//! splitting). Plain arithmetic does not need the spec.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{mod_inverse, Rational};
use crate::upoly::UPoly;

/// Minimal field interface shared by K and its residue field so that the
/// linear algebra in [`crate::linalg`] is written once.
pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Panics when `b` is zero; callers test first.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    PAdic(u64),
    TAdic(u32),
}

/// A valued field together with its fixed splitting `w ↦ t^w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub kind: FieldKind,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of K in canonical form.
///
/// `Rat` covers all of Q (p-adic case) and the constants of Q(s) (t-adic case).
/// `Series` is `s^shift · num(s)/den(s)` with `num(0) ≠ 0`, `den(0) = 1`,
/// `gcd(num, den) = 1`, where `s = t^{1/N}`; it is never a constant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(Rational),
    Series { shift: i64, num: UPoly, den: UPoly },
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rat(Rational::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// `s^k` as an element of Q(s).
    pub fn s_power(k: i64) -> Self {
        Self::from_parts(k, UPoly::one(), UPoly::one())
    }

    fn parts(&self) -> (i64, UPoly, UPoly) {
        match self {
            FieldElement::Rat(r) => (0, UPoly::constant(r.clone()), UPoly::one()),
            FieldElement::Series { shift, num, den } => (*shift, num.clone(), den.clone()),
        }
    }

    /// Canonicalizes `s^shift · num/den`; `den` must be nonzero.
    pub fn from_parts(shift: i64, num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return FieldElement::zero();
        }
        let kn = num.low_order().unwrap();
        let kd = den.low_order().expect("zero denominator");
        let shift = shift + kn as i64 - kd as i64;
        let (mut num, mut den) = (num.shift_down(kn), den.shift_down(kd));
        if den.degree() != Some(0) {
            let g = num.gcd(&den);
            if g.degree() != Some(0) {
                num = num.divrem(&g).0;
                den = den.divrem(&g).0;
            }
        }
        let d0 = den.coeff(0).recip().unwrap();
        let num = num.scale(&d0);
        let den = den.scale(&d0);
        if shift == 0 && num.degree() == Some(0) && den.degree() == Some(0) {
            return FieldElement::Rat(num.coeff(0));
        }
        FieldElement::Series { shift, num, den }
    }

    pub fn add(&self, o: &Self) -> Self {
        if let (FieldElement::Rat(a), FieldElement::Rat(b)) = (self, o) {
            return FieldElement::Rat(a + b);
        }
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (sa, na, da) = self.parts();
        let (sb, nb, db) = o.parts();
        let m = sa.min(sb);
        let left = na.mul(&db).shift_up((sa - m) as usize);
        let right = nb.mul(&da).shift_up((sb - m) as usize);
        Self::from_parts(m, left.add(&right), da.mul(&db))
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rat(a) => FieldElement::Rat(-a),
            FieldElement::Series { shift, num, den } => FieldElement::Series {
                shift: *shift,
                num: num.scale(&Rational::from_int(-1)),
                den: den.clone(),
            },
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        if let (FieldElement::Rat(a), FieldElement::Rat(b)) = (self, o) {
            return FieldElement::Rat(a - b);
        }
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a * b),
            (FieldElement::Rat(a), FieldElement::Series { shift, num, den })
            | (FieldElement::Series { shift, num, den }, FieldElement::Rat(a)) => {
                if a.is_zero() {
                    return FieldElement::zero();
                }
                FieldElement::Series { shift: *shift, num: num.scale(a), den: den.clone() }
            }
            _ => {
                let (sa, na, da) = self.parts();
                let (sb, nb, db) = o.parts();
                Self::from_parts(sa + sb, na.mul(&nb), da.mul(&db))
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElement::Rat(a) => a.recip().map(FieldElement::Rat).ok_or(Error::ZeroDivision),
            FieldElement::Series { shift, num, den } => {
                Ok(Self::from_parts(-shift, den.clone(), num.clone()))
            }
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if let (FieldElement::Rat(a), FieldElement::Rat(b)) = (self, o) {
            if b.is_zero() {
                return Err(Error::ZeroDivision);
            }
            return Ok(FieldElement::Rat(a / b));
        }
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// True when the printed form is a single signed factor (no `+`).
    pub fn is_atomic(&self) -> bool {
        match self {
            FieldElement::Rat(_) => true,
            FieldElement::Series { num, den, .. } => {
                den.degree() == Some(0) && num.0.iter().filter(|c| !c.is_zero()).count() == 1
            }
        }
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::Rat(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{r}"),
            FieldElement::Series { shift, num, den } => {
                write!(f, "s^{shift}*({:?})/({:?})", num.0, den.0)
            }
        }
    }
}

impl FieldSpec {
    pub fn padic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("p={p} is not prime")));
        }
        Ok(FieldSpec { kind: FieldKind::PAdic(p) })
    }

    pub fn tadic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("N must be at least 1".into()));
        }
        Ok(FieldSpec { kind: FieldKind::TAdic(n) })
    }

    /// Q(t) with constants only is the usual stand-in for a trivially valued field.
    pub fn trivial() -> Self {
        FieldSpec { kind: FieldKind::TAdic(1) }
    }

    pub fn residue_field(&self) -> ResidueField {
        match self.kind {
            FieldKind::PAdic(p) => ResidueField::Fp(p),
            FieldKind::TAdic(_) => ResidueField::Q,
        }
    }

    /// Whether `w` lies in Γ = Z or (1/N)Z.
    pub fn in_value_group(&self, w: &Rational) -> bool {
        match self.kind {
            FieldKind::PAdic(_) => w.is_integer(),
            FieldKind::TAdic(n) => (w * &Rational::from_int(n as i64)).is_integer(),
        }
    }

    pub fn check_value_group(&self, w: &[Rational]) -> Result<()> {
        match w.iter().find(|x| !self.in_value_group(x)) {
            Some(x) => Err(Error::ValueGroup(x.to_string())),
            None => Ok(()),
        }
    }

    /// Valuation; `None` stands for +∞ (the zero element).
    pub fn val(&self, a: &FieldElement) -> Option<Rational> {
        if a.is_zero() {
            return None;
        }
        match (self.kind, a) {
            (FieldKind::PAdic(p), FieldElement::Rat(r)) => r.padic_val(p).map(Rational::from_int),
            (FieldKind::PAdic(_), FieldElement::Series { .. }) => {
                panic!("t-adic element used in a p-adic field")
            }
            (FieldKind::TAdic(_), FieldElement::Rat(_)) => Some(Rational::zero()),
            (FieldKind::TAdic(n), FieldElement::Series { shift, .. }) => {
                Some(Rational::new(*shift, n as i64))
            }
        }
    }

    /// The splitting `w ↦ t^w`: `p^w` or `s^{Nw}`.
    pub fn split(&self, w: &Rational) -> Result<FieldElement> {
        if !self.in_value_group(w) {
            return Err(Error::ValueGroup(w.to_string()));
        }
        match self.kind {
            FieldKind::PAdic(p) => {
                let e = w.to_i64().unwrap();
                Ok(FieldElement::Rat(Rational::from_int(p as i64).pow(e as i32)))
            }
            FieldKind::TAdic(n) => {
                let k = (w * &Rational::from_int(n as i64)).to_i64().unwrap();
                Ok(FieldElement::s_power(k))
            }
        }
    }

    /// Image in the residue field of an element of the valuation ring.
    pub fn residue(&self, a: &FieldElement) -> Result<Rational> {
        match self.val(a) {
            None => Ok(Rational::zero()),
            Some(v) if v.is_negative() => Err(Error::NotInValuationRing(v.to_string())),
            Some(v) if v.is_positive() => Ok(Rational::zero()),
            Some(_) => Ok(self.unit_part(a).unwrap()),
        }
    }

    /// `residue(t^{-val a} · a)`, nonzero for nonzero `a`.
    pub fn unit_part(&self, a: &FieldElement) -> Result<Rational> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(match (self.kind, a) {
            (FieldKind::PAdic(p), FieldElement::Rat(r)) => {
                let v = r.padic_val(p).unwrap();
                let u = r / &Rational::from_int(p as i64).pow(v as i32);
                Rational::from_int(u.mod_prime(p).unwrap() as i64)
            }
            (FieldKind::TAdic(_), FieldElement::Rat(r)) => r.clone(),
            (FieldKind::TAdic(_), FieldElement::Series { num, .. }) => num.coeff(0),
            (FieldKind::PAdic(_), FieldElement::Series { .. }) => {
                panic!("t-adic element used in a p-adic field")
            }
        })
    }

    /// Exact arithmetic entry point mirroring the four field operations.
    pub fn arith(&self, a: &FieldElement, b: &FieldElement, op: char) -> Result<FieldElement> {
        match op {
            '+' => Ok(a.add(b)),
            '-' => Ok(a.sub(b)),
            '*' => Ok(a.mul(b)),
            '/' => a.div(b),
            _ => Err(Error::Parse(format!("unknown operator {op}"))),
        }
    }

    /// Text form accepted back by the parser, e.g. `3/2*t^(1/2)+t` or `(1)/(1-t)`.
    pub fn format(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Rat(r) => r.to_string(),
            FieldElement::Series { shift, num, den } => {
                let n = match self.kind {
                    FieldKind::TAdic(n) => n as i64,
                    FieldKind::PAdic(_) => 1,
                };
                let num_s = format_spoly(num, *shift, n);
                if den.degree() == Some(0) {
                    num_s
                } else {
                    format!("({num_s})/({})", format_spoly(den, 0, n))
                }
            }
        }
    }
}

fn t_power(k: i64, n: i64) -> String {
    let q = Rational::new(k, n);
    if q.is_one() {
        "t".to_string()
    } else if q.is_integer() && !q.is_negative() {
        format!("t^{q}")
    } else {
        format!("t^({q})")
    }
}

/// Prints `s^shift · p(s)` as a sum of rational multiples of powers of t.
fn format_spoly(p: &UPoly, shift: i64, n: i64) -> String {
    let mut out = String::new();
    for (i, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = shift + i as i64;
        let mut term = if k == 0 {
            c.to_string()
        } else if c.is_one() {
            t_power(k, n)
        } else if *c == Rational::from_int(-1) {
            format!("-{}", t_power(k, n))
        } else {
            format!("{c}*{}", t_power(k, n))
        };
        if !out.is_empty() && !term.starts_with('-') {
            term.insert(0, '+');
        }
        out.push_str(&term);
    }
    out
}

impl Field for FieldSpec {
    type Elem = FieldElement;
    fn zero(&self) -> FieldElement {
        FieldElement::zero()
    }
    fn one(&self) -> FieldElement {
        FieldElement::one()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.add(b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.sub(b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.mul(b)
    }
    fn div(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.div(b).expect("division by zero in K")
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        a.neg()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
}

/// The residue field 𝕜: F_p (elements kept as integers in `0..p`) or Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueField {
    Fp(u64),
    Q,
}

impl ResidueField {
    /// Canonical representative of a rational number in 𝕜.
    pub fn reduce(&self, r: &Rational) -> Rational {
        match self {
            ResidueField::Fp(p) => {
                Rational::from_int(r.mod_prime(*p).expect("denominator divisible by p") as i64)
            }
            ResidueField::Q => r.clone(),
        }
    }

    fn fp(p: u64, x: i128) -> Rational {
        Rational::from_int(x.rem_euclid(p as i128) as i64)
    }

    fn small(r: &Rational) -> i128 {
        r.to_i64().expect("F_p element is a small integer") as i128
    }
}

impl Field for ResidueField {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            ResidueField::Fp(p) => Self::fp(*p, Self::small(a) + Self::small(b)),
            ResidueField::Q => a + b,
        }
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            ResidueField::Fp(p) => Self::fp(*p, Self::small(a) - Self::small(b)),
            ResidueField::Q => a - b,
        }
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            ResidueField::Fp(p) => Self::fp(*p, Self::small(a) * Self::small(b)),
            ResidueField::Q => a * b,
        }
    }
    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            ResidueField::Fp(p) => {
                let inv = mod_inverse(Self::small(b) as u64, *p).expect("division by zero in F_p");
                Self::fp(*p, Self::small(a) * inv as i128)
            }
            ResidueField::Q => a / b,
        }
    }
    fn neg(&self, a: &Rational) -> Rational {
        match self {
            ResidueField::Fp(p) => Self::fp(*p, -Self::small(a)),
            ResidueField::Q => -a,
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn s(k: i64) -> FieldElement {
        FieldElement::s_power(k)
    }

    #[test]
    fn padic_valuation_and_units() {
        let f = FieldSpec::padic(3).unwrap();
        assert_eq!(f.val(&q(3)), Some(Rational::one()));
        assert_eq!(f.val(&q(8)), Some(Rational::zero()));
        assert_eq!(f.val(&q(0)), None);
        assert_eq!(f.unit_part(&q(6)).unwrap(), Rational::from_int(2));
        let f2 = FieldSpec::padic(2).unwrap();
        assert_eq!(f2.unit_part(&q(24)).unwrap(), Rational::one());
        assert_eq!(f2.residue(&q(14)).unwrap(), Rational::zero());
        assert_eq!(f2.residue(&q(5)).unwrap(), Rational::one());
        assert_eq!(f2.split(&Rational::from_int(3)).unwrap(), q(8));
        assert!(matches!(f2.split(&Rational::new(1, 2)), Err(Error::ValueGroup(_))));
        assert!(FieldSpec::padic(4).is_err());
    }

    #[test]
    fn tadic_arithmetic() {
        let f = FieldSpec::tadic(2).unwrap();
        // t^{3/2} + t^2 = s^3 + s^4
        let a = s(3).add(&s(4));
        assert_eq!(f.val(&a), Some(Rational::new(3, 2)));
        let t = FieldSpec::tadic(1).unwrap();
        let one_minus = q(1).sub(&s(1));
        let one_plus = q(1).add(&s(1));
        assert_eq!(one_minus.mul(&one_plus), q(1).sub(&s(2)));
        let inv = q(1).div(&one_minus).unwrap();
        assert_eq!(t.val(&inv), Some(Rational::zero()));
        assert_eq!(inv.mul(&one_minus), q(1));
        assert_eq!(t.residue(&q(3).add(&s(1))).unwrap(), Rational::from_int(3));
        assert_eq!(t.format(&q(3).add(&s(1))), "3+t");
        assert_eq!(f.format(&s(1).mul(&q(3)).div(&q(2)).unwrap().add(&s(2))), "3/2*t^(1/2)+t");
    }

    #[test]
    fn residue_field_ops() {
        let k = ResidueField::Fp(5);
        let a = Rational::from_int(3);
        let b = Rational::from_int(4);
        assert_eq!(k.add(&a, &b), Rational::from_int(2));
        assert_eq!(k.div(&a, &b), Rational::from_int(2));
        assert_eq!(k.reduce(&Rational::new(2, 3)), Rational::from_int(4));
    }
}
