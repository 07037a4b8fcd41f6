//! Dense univariate polynomials over Q, used as numerators and denominators
//! of t-adic field elements.

use crate::rational::Rational;

/// Coefficients in increasing degree; no trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(pub Vec<Rational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly(vec![c]).trimmed()
    }

    pub fn one() -> Self {
        UPoly(vec![Rational::one()])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    /// Divides by `s^k`; the caller guarantees the low coefficients are zero.
    pub fn shift_down(&self, k: usize) -> Self {
        UPoly(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        UPoly((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect()).trimmed()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        UPoly((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect()).trimmed()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly(out).trimmed()
    }

    /// Multiplies by `s^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("division by zero polynomial").clone();
        let dd = d.0.len() - 1;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.0.iter().enumerate() {
                let t = &c * b;
                r[k + j] -= &t;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly(q).trimmed(), UPoly(r).trimmed())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.lead().cloned() {
            Some(l) => a.scale(&l.recip().unwrap()),
            None => a,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UPoly {
        UPoly(v.iter().map(|&x| Rational::from_int(x)).collect()).trimmed()
    }

    #[test]
    fn divrem_and_gcd() {
        // (1-s)(1+s) = 1 - s^2
        let a = p(&[1, -1]).mul(&p(&[1, 1]));
        assert_eq!(a, p(&[1, 0, -1]));
        let (q, r) = a.divrem(&p(&[1, 1]));
        assert_eq!(q, p(&[1, -1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[2, 2])), p(&[1, 1]));
    }
}
