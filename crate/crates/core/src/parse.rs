//! Text syntax for field elements and polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ['^' exponent]
//! atom   := integer | name | 't' | '(' expr ')'
//! exponent := ['-'] integer | '(' expr ')'
//! ```
//! `t` (t-adic fields only) denotes the uniformizer and accepts rational
//! exponents in Γ, e.g. `3/2*t^(1/2)`. Variables accept integer exponents,
//! negative ones giving Laurent monomials.

use crate::error::{Error, Result};
use crate::poly::KPoly;
use crate::rational::Rational;
use crate::valued_field::{FieldElement, FieldKind, FieldSpec};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FieldSpec,
    names: &'a [String],
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<KPoly> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg(self.field);
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = acc.add(self.field, &t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = acc.sub(self.field, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<KPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                let p = self.power()?;
                acc = acc.mul(self.field, &p);
            } else if self.eat(b'/') {
                let p = self.power()?;
                acc = acc.mul(self.field, &invert_monomial(&p)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<KPoly> {
        let start = self.pos;
        let (base, is_t) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if is_t {
            let el = self.field.split(&e).map_err(|_| err(format!("t^({e}) is outside the value group")))?;
            return Ok(KPoly::constant(self.n(), el));
        }
        let Some(k) = e.to_i64() else {
            return Err(err(format!("non-integer exponent {e} near byte {start}")));
        };
        pow(self.field, &base, k)
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.eat(b'(') {
            let p = self.expr()?;
            if !self.eat(b')') {
                return Err(err("expected ')' in exponent"));
            }
            return constant_rational(&p).ok_or_else(|| err("exponent must be a rational constant"));
        }
        let neg = self.eat(b'-');
        let k = self.integer()?;
        Ok(if neg { -k } else { k })
    }

    fn integer(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected a number at byte {start}")));
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| err("bad integer"))
    }

    fn atom(&mut self) -> Result<(KPoly, bool)> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(format!("expected ')' at byte {}", self.pos)));
                }
                Ok((e, false))
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok((KPoly::constant(self.n(), FieldElement::Rat(k)), false))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(i) = self.names.iter().position(|x| x == name) {
                    return Ok((KPoly::variable(self.n(), i), false));
                }
                if name == "t" {
                    if let FieldKind::TAdic(n) = self.field.kind {
                        return Ok((KPoly::constant(self.n(), FieldElement::s_power(n as i64)), true));
                    }
                    return Err(err("t is only available in t-adic fields"));
                }
                Err(err(format!("unknown variable {name}")))
            }
            Some(c) => Err(err(format!("unexpected character {:?} at byte {}", c as char, self.pos))),
            None => Err(err("unexpected end of input")),
        }
    }
}

fn constant_rational(p: &KPoly) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    if p.len() != 1 {
        return None;
    }
    let (u, c) = p.terms.iter().next().unwrap();
    if u.iter().any(|&e| e != 0) {
        return None;
    }
    c.as_rational().cloned()
}

fn invert_monomial(p: &KPoly) -> Result<KPoly> {
    if p.len() != 1 {
        return Err(err("can only divide by a nonzero constant or monomial"));
    }
    let (u, c) = p.terms.iter().next().unwrap();
    Ok(KPoly::monomial(u.iter().map(|e| -e).collect(), c.inv()?))
}

fn pow(field: &FieldSpec, base: &KPoly, k: i64) -> Result<KPoly> {
    let b = if k < 0 { invert_monomial(base)? } else { base.clone() };
    let mut acc = KPoly::constant(base.nvars, FieldElement::one());
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(field, &b);
    }
    Ok(acc)
}

/// Parses a polynomial in the variables `names` over `field`.
pub fn parse_poly(s: &str, field: &FieldSpec, names: &[String]) -> Result<KPoly> {
    if let FieldKind::TAdic(_) = field.kind {
        if names.iter().any(|x| x == "t") {
            return Err(err("t is reserved for the uniformizer in t-adic fields"));
        }
    }
    let mut p = Parser { src: s.as_bytes(), pos: 0, field, names };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at byte {}", p.pos)));
    }
    Ok(out)
}

/// Parses a constant of the field, e.g. `3/2*t^(1/2)+t`.
pub fn parse_element(s: &str, field: &FieldSpec) -> Result<FieldElement> {
    let p = parse_poly(s, field, &[])?;
    Ok(p.terms.values().next().cloned().unwrap_or_else(FieldElement::zero))
}

/// Comma-separated rationals, e.g. `1,2,-1/2`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|x| x.trim().parse::<Rational>().map_err(|e| err(e.to_string()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn round_trip() {
        let f = FieldSpec::tadic(2).unwrap();
        let n = names(&["x", "y"]);
        for s in ["x^2+x*y", "3/2*x-y+1", "(1+t)*x^2-t^(1/2)*y", "x^-1*y+1", "(1)/(1-t)*x"] {
            let p = parse_poly(s, &f, &n).unwrap();
            let printed = p.format(&f, &n);
            assert_eq!(parse_poly(&printed, &f, &n).unwrap(), p, "{s} -> {printed}");
        }
        assert_eq!(parse_poly("(1)/(1-t)*x", &f, &n).unwrap().format(&f, &n), "((1)/(1-t))*x");
    }

    #[test]
    fn rejects_bad_input() {
        let p = FieldSpec::padic(2).unwrap();
        let n = names(&["x"]);
        assert!(parse_poly("x+t", &p, &n).is_err());
        assert!(parse_poly("x^(1/2)", &p, &n).is_err());
        assert!(parse_poly("x/(x+1)", &p, &n).is_err());
        assert!(parse_poly("x+", &p, &n).is_err());
        let f = FieldSpec::tadic(1).unwrap();
        assert!(matches!(parse_element("t^(1/2)", &f), Err(Error::Parse(_))));
        assert_eq!(parse_element("1/3+2/3", &p).unwrap(), FieldElement::one());
    }
}
