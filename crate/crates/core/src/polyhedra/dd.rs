//! Incremental double description for polyhedral cones over Q.
//!
//! Computes lineality space and extreme rays of `{y : G y ≥ 0, H y = 0}`.
//! Rays carry the set of processed inequalities they make tight; two rays are
//! adjacent when no third ray is tight on everything both are tight on.

use crate::rational::{dot, primitive_integer, Rational};

#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    pub lineality: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<Rational>,
    tight: Bits,
}

fn normalize(v: Vec<Rational>) -> Vec<Rational> {
    primitive_integer(&v).0
}

fn sub_multiple(v: &[Rational], factor: &Rational, l: &[Rational]) -> Vec<Rational> {
    v.iter().zip(l).map(|(a, b)| a - &(factor * b)).collect()
}

/// Removes the `g`-component along lineality: returns true if some lineality
/// vector was consumed (and pushed to `consumed`).
fn absorb_lineality(g: &[Rational], lin: &mut Vec<Vec<Rational>>, rays: &mut [Ray]) -> Option<Vec<Rational>> {
    let i = lin.iter().position(|l| !dot(g, l).is_zero())?;
    let l0 = lin.swap_remove(i);
    let gl0 = dot(g, &l0);
    for l in lin.iter_mut() {
        let f = dot(g, l) / &gl0;
        if !f.is_zero() {
            *l = normalize(sub_multiple(l, &f, &l0));
        }
    }
    for r in rays.iter_mut() {
        let f = dot(g, &r.v) / &gl0;
        if !f.is_zero() {
            r.v = normalize(sub_multiple(&r.v, &f, &l0));
        }
    }
    Some(if gl0.is_negative() { l0.iter().map(|x| -x).collect() } else { l0 })
}

fn combine_adjacent(rays: &[Ray], pos: &[usize], neg: &[usize], vals: &[Rational], extra_tight: Option<usize>) -> Vec<Ray> {
    let mut out = Vec::new();
    for &p in pos {
        for &n in neg {
            let common = rays[p].tight.and(&rays[n].tight);
            let adjacent = !rays
                .iter()
                .enumerate()
                .any(|(r, ray)| r != p && r != n && common.subset_of(&ray.tight));
            if !adjacent {
                continue;
            }
            // vals[p] > 0 > vals[n]: vals[p]·n − vals[n]·p lies on the hyperplane.
            let v: Vec<Rational> = rays[n]
                .v
                .iter()
                .zip(&rays[p].v)
                .map(|(a, b)| &(&vals[p] * a) - &(&vals[n] * b))
                .collect();
            let mut tight = common;
            if let Some(k) = extra_tight {
                tight.set(k);
            }
            out.push(Ray { v: normalize(v), tight });
        }
    }
    out
}

/// Generators of `{y ∈ Q^dim : g·y ≥ 0 for g in ineqs, h·y = 0 for h in eqs}`.
pub fn cone_generators(dim: usize, ineqs: &[Vec<Rational>], eqs: &[Vec<Rational>]) -> ConeGenerators {
    let m = ineqs.len();
    let mut lin: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rational::zero(); dim];
            e[i] = Rational::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for h in eqs {
        if absorb_lineality(h, &mut lin, &mut rays).is_some() {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next = combine_adjacent(&rays, &pos, &neg, &vals, None);
        let zero: Vec<Ray> = rays.into_iter().zip(&vals).filter(|(_, v)| v.is_zero()).map(|(r, _)| r).collect();
        next.splice(0..0, zero);
        rays = next;
    }

    for (k, g) in ineqs.iter().enumerate() {
        if let Some(l0) = absorb_lineality(g, &mut lin, &mut rays) {
            for r in rays.iter_mut() {
                r.tight.set(k);
            }
            let mut tight = Bits::new(m);
            for j in 0..k {
                tight.set(j);
            }
            rays.push(Ray { v: normalize(l0), tight });
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot(g, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.set(k);
                }
            }
            continue;
        }
        let new = combine_adjacent(&rays, &pos, &neg, &vals, Some(k));
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + new.len());
        for (mut r, v) in rays.into_iter().zip(&vals) {
            if v.is_zero() {
                r.tight.set(k);
                kept.push(r);
            } else if v.is_positive() {
                kept.push(r);
            }
        }
        kept.extend(new);
        rays = kept;
    }
    ConeGenerators { lineality: lin, rays: rays.into_iter().map(|r| r.v).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| Rational::from_int(a)).collect()
    }

    #[test]
    fn quadrant_and_halfplane() {
        let g = cone_generators(2, &[v(&[1, 0]), v(&[0, 1])], &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 2);
        let h = cone_generators(2, &[v(&[1, 0])], &[]);
        assert_eq!(h.lineality.len(), 1);
        assert_eq!(h.rays, vec![v(&[1, 0])]);
    }

    #[test]
    fn square_cone_has_four_rays() {
        // Cone over the square |x|,|y| ≤ z.
        let ineqs = [v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])];
        let g = cone_generators(3, &ineqs, &[]);
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert_eq!(r[2], Rational::one());
        }
        let e = cone_generators(3, &ineqs, &[v(&[1, 0, 0])]);
        assert_eq!(e.rays.len(), 2);
    }
}
