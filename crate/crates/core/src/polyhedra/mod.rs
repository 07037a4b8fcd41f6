//! Exact rational polyhedra and polyhedral complexes.
//!
//! A polyhedron is converted once to generators (double description on its
//! homogenization); everything else — dimension, implicit equalities, facets,
//! faces, interior points — is read off the generators exactly.

pub mod complex;
pub mod dd;
pub mod json;
pub mod linearity;

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::linalg::{canonical_row_space, nullspace, project_off, rank, Rationals};
use crate::rational::{dot, primitive_integer, Rational};

pub use complex::PolyhedralComplex;
pub use linearity::{linearity_complex, nonlinearity_locus, TropicalAffineFamily};

/// Row `(a, b)` stored as one vector `[a…, b]`.
pub type Row = Vec<Rational>;

/// Identity of a polyhedron: ambient dimension, canonical equalities, canonical facets.
pub type PolyKey = (usize, Vec<Row>, Vec<Row>);

/// `{x : a·x ≤ b for each inequality, a·x = c for each equality}` in canonical form.
///
/// Equalities are the affine hull in reduced echelon form (primitive integer
/// rows); inequalities are exactly the facets, with normals projected onto the
/// direction space of the affine hull, scaled to primitive integers and sorted.
#[derive(Clone)]
pub struct QPolyhedron {
    ambient: usize,
    pub equalities: Vec<Row>,
    pub inequalities: Vec<Row>,
    dim: isize,
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

impl PartialEq for QPolyhedron {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.equalities == o.equalities && self.inequalities == o.inequalities
    }
}

impl Eq for QPolyhedron {}

impl std::hash::Hash for QPolyhedron {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.equalities.hash(state);
        self.inequalities.hash(state);
    }
}

impl fmt::Debug for QPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolyhedron(dim {}, eq {:?}, ineq {:?})", self.dim, self.equalities, self.inequalities)
    }
}

fn split_row(r: &Row) -> (&[Rational], &Rational) {
    (&r[..r.len() - 1], &r[r.len() - 1])
}

fn make_row(a: &[Rational], b: &Rational) -> Row {
    let mut r = a.to_vec();
    r.push(b.clone());
    r
}

/// Scales `(a, b)` by the positive factor making `a` a primitive integer vector.
fn primitive_row(a: &[Rational], b: &Rational) -> Row {
    let (pa, s) = primitive_integer(a);
    make_row(&pa, &(b * &s))
}

impl QPolyhedron {
    /// The empty polyhedron in `ambient` dimensions.
    pub fn empty(ambient: usize) -> Self {
        let mut e = vec![Rational::zero(); ambient];
        e.push(Rational::one());
        QPolyhedron {
            ambient,
            equalities: vec![e],
            inequalities: Vec::new(),
            dim: -1,
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_constraints(ambient, &[], &[])
    }

    /// Canonical form of `{a·x ≤ b} ∩ {e·x = c}` (rows `[a…, b]`, `[e…, c]`).
    pub fn from_constraints(ambient: usize, ineqs: &[Row], eqs: &[Row]) -> Self {
        // Deduplicate inequalities by primitive normal, keeping the tightest offset.
        let mut best: HashMap<Vec<Rational>, Rational> = HashMap::new();
        let mut eq_rows: Vec<Row> = Vec::new();
        for r in ineqs {
            debug_assert_eq!(r.len(), ambient + 1);
            let (a, b) = split_row(r);
            if a.iter().all(|x| x.is_zero()) {
                if b.is_negative() {
                    return Self::empty(ambient);
                }
                continue;
            }
            let p = primitive_row(a, b);
            let (pa, pb) = split_row(&p);
            match best.get_mut(pa) {
                Some(old) if *old <= *pb => {}
                Some(old) => *old = pb.clone(),
                None => {
                    best.insert(pa.to_vec(), pb.clone());
                }
            }
        }
        for r in eqs {
            let (a, b) = split_row(r);
            if a.iter().all(|x| x.is_zero()) {
                if !b.is_zero() {
                    return Self::empty(ambient);
                }
                continue;
            }
            eq_rows.push(r.clone());
        }
        let mut cand: Vec<Row> = best.into_iter().map(|(a, b)| make_row(&a, &b)).collect();
        cand.sort();
        // Homogenize: y = (x, λ); b λ − a·x ≥ 0, c λ − e·x = 0, λ ≥ 0.
        let hom = |r: &Row| -> Row {
            let (a, b) = split_row(r);
            a.iter().map(|x| -x).chain(std::iter::once(b.clone())).collect()
        };
        let mut g: Vec<Row> = cand.iter().map(hom).collect();
        let mut lam = vec![Rational::zero(); ambient + 1];
        lam[ambient] = Rational::one();
        g.push(lam);
        let h: Vec<Row> = eq_rows.iter().map(hom).collect();
        let gens = dd::cone_generators(ambient + 1, &g, &h);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in gens.rays {
            let (x, l) = split_row(&r);
            if l.is_zero() {
                rays.push(x.to_vec());
            } else {
                vertices.push(x.iter().map(|v| v / l).collect());
            }
        }
        if vertices.is_empty() {
            return Self::empty(ambient);
        }
        let lineality: Vec<Vec<Rational>> = gens.lineality.iter().map(|l| l[..ambient].to_vec()).collect();
        let mut all = cand;
        all.extend(eq_rows.iter().cloned());
        all.extend(eq_rows.iter().map(|r| r.iter().map(|x| -x).collect()));
        Self::from_generators(ambient, vertices, rays, lineality, &all)
    }

    /// Canonical form from a V-description plus inequalities valid on it; the
    /// facets are selected among `candidates`.
    pub fn from_generators(
        ambient: usize,
        vertices: Vec<Vec<Rational>>,
        rays: Vec<Vec<Rational>>,
        lineality: Vec<Vec<Rational>>,
        candidates: &[Row],
    ) -> Self {
        if vertices.is_empty() {
            return Self::empty(ambient);
        }
        let lineality = canonical_row_space(&lineality);
        let mut vs: Vec<Vec<Rational>> = vertices.iter().map(|v| project_off(v, &lineality)).collect();
        vs.sort();
        vs.dedup();
        let mut rs: Vec<Vec<Rational>> = rays
            .iter()
            .map(|r| primitive_integer(&project_off(r, &lineality)).0)
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        rs.sort();
        rs.dedup();
        let zero = Rational::zero();
        let one = Rational::one();
        let hom_gens: Vec<Row> = vs
            .iter()
            .map(|v| make_row(v, &one))
            .chain(rs.iter().map(|r| make_row(r, &zero)))
            .chain(lineality.iter().map(|l| make_row(l, &zero)))
            .collect();
        let full_rank = rank(&Rationals, &hom_gens);
        let dim = full_rank as isize - 1;
        // Affine hull: (a, -c) in the kernel of the homogenized generators.
        let ker = nullspace(&hom_gens, ambient + 1);
        let eq_rows: Vec<Row> = ker
            .iter()
            .map(|y| {
                let (a, mc) = split_row(y);
                make_row(a, &-mc)
            })
            .collect();
        let equalities = canonical_row_space(&eq_rows);
        let eq_dirs: Vec<Vec<Rational>> = equalities.iter().map(|r| split_row(r).0.to_vec()).collect();
        let x0 = &vs[0];
        let mut facets: HashSet<Row> = HashSet::new();
        for r in candidates {
            let (a, b) = split_row(r);
            let mut tight: Vec<Row> = Vec::new();
            let mut slack = false;
            for v in &vs {
                if dot(a, v) == *b {
                    tight.push(make_row(v, &one));
                } else {
                    slack = true;
                }
            }
            for ray in &rs {
                if dot(a, ray).is_zero() {
                    tight.push(make_row(ray, &zero));
                } else {
                    slack = true;
                }
            }
            // Every face contains a minimal face; rows tight only on rays
            // cut out the face at infinity.
            if !slack || tight.first().is_none_or(|t| t[ambient].is_zero()) {
                continue;
            }
            tight.extend(lineality.iter().map(|l| make_row(l, &zero)));
            if rank(&Rationals, &tight) + 1 != full_rank {
                continue;
            }
            let ap = project_off(a, &eq_dirs);
            let shift: Vec<Rational> = a.iter().zip(&ap).map(|(x, y)| x - y).collect();
            let bp = b - &dot(&shift, x0);
            if ap.iter().all(|x| x.is_zero()) {
                continue;
            }
            facets.insert(primitive_row(&ap, &bp));
        }
        let mut inequalities: Vec<Row> = facets.into_iter().collect();
        inequalities.sort();
        QPolyhedron { ambient, equalities, inequalities, dim, vertices: vs, rays: rs, lineality }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension; −1 for the empty set.
    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn key(&self) -> PolyKey {
        (self.ambient, self.equalities.clone(), self.inequalities.clone())
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// Whether every offset lies in the given set (e.g. the value group).
    pub fn offsets_satisfy(&self, pred: impl Fn(&Rational) -> bool) -> bool {
        self.equalities.iter().chain(&self.inequalities).all(|r| pred(split_row(r).1))
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if self.is_empty() {
            return false;
        }
        self.equalities.iter().all(|r| {
            let (a, c) = split_row(r);
            dot(a, x) == *c
        }) && self.inequalities.iter().all(|r| {
            let (a, b) = split_row(r);
            dot(a, x) <= *b
        })
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_relint(&self, x: &[Rational]) -> bool {
        self.contains(x)
            && self.inequalities.iter().all(|r| {
                let (a, b) = split_row(r);
                dot(a, x) < *b
            })
    }

    /// Average of the vertices plus the sum of the rays: an exact point of the
    /// relative interior.
    pub fn relative_interior_point(&self) -> Option<Vec<Rational>> {
        if self.is_empty() {
            return None;
        }
        let k = Rational::from_int(self.vertices.len() as i64);
        let mut p = vec![Rational::zero(); self.ambient];
        for v in &self.vertices {
            for (x, y) in p.iter_mut().zip(v) {
                *x += y;
            }
        }
        for x in p.iter_mut() {
            *x = &*x / &k;
        }
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        Some(p)
    }

    /// All constraint rows, equalities written as two inequalities.
    pub fn constraint_rows(&self) -> Vec<Row> {
        let mut out = self.inequalities.clone();
        for e in &self.equalities {
            out.push(e.clone());
            out.push(e.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn intersect(&self, o: &Self) -> crate::Result<Self> {
        crate::poly::check_arity(self.ambient, o.ambient)?;
        if self.is_empty() || o.is_empty() {
            return Ok(Self::empty(self.ambient));
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(o.inequalities.iter().cloned());
        let mut eqs = self.equalities.clone();
        eqs.extend(o.equalities.iter().cloned());
        Ok(Self::from_constraints(self.ambient, &ineqs, &eqs))
    }

    /// Adds extra constraints and re-canonicalizes.
    pub fn restrict(&self, ineqs: &[Row], eqs: &[Row]) -> Self {
        let mut i = self.inequalities.clone();
        i.extend(ineqs.iter().cloned());
        let mut e = self.equalities.clone();
        e.extend(eqs.iter().cloned());
        Self::from_constraints(self.ambient, &i, &e)
    }

    /// Whether `d` is in the lineality space.
    pub fn lineality_contains(&self, d: &[Rational]) -> bool {
        self.equalities.iter().chain(&self.inequalities).all(|r| dot(split_row(r).0, d).is_zero())
    }

    fn tight_generators(&self, r: &Row) -> (Vec<bool>, Vec<bool>) {
        let (a, b) = split_row(r);
        (
            self.vertices.iter().map(|v| dot(a, v) == *b).collect(),
            self.rays.iter().map(|ray| dot(a, ray).is_zero()).collect(),
        )
    }

    fn face_from_mask(&self, vmask: &[bool], rmask: &[bool]) -> Self {
        let vs = self.vertices.iter().zip(vmask).filter(|(_, m)| **m).map(|(v, _)| v.clone()).collect();
        let rs = self.rays.iter().zip(rmask).filter(|(_, m)| **m).map(|(v, _)| v.clone()).collect();
        let mut cand = self.constraint_rows();
        cand.sort();
        Self::from_generators(self.ambient, vs, rs, self.lineality.clone(), &cand)
    }

    /// The smallest face containing `x` (which must lie in the polyhedron).
    pub fn face_containing(&self, x: &[Rational]) -> Self {
        let mut vmask = vec![true; self.vertices.len()];
        let mut rmask = vec![true; self.rays.len()];
        for r in &self.inequalities {
            let (a, b) = split_row(r);
            if dot(a, x) == *b {
                let (tv, tr) = self.tight_generators(r);
                for (m, t) in vmask.iter_mut().zip(tv) {
                    *m &= t;
                }
                for (m, t) in rmask.iter_mut().zip(tr) {
                    *m &= t;
                }
            }
        }
        self.face_from_mask(&vmask, &rmask)
    }

    /// All nonempty proper faces, each once.
    pub fn faces(&self) -> Vec<Self> {
        if self.is_empty() {
            return Vec::new();
        }
        let facet_masks: Vec<(Vec<bool>, Vec<bool>)> =
            self.inequalities.iter().map(|r| self.tight_generators(r)).collect();
        let full = (vec![true; self.vertices.len()], vec![true; self.rays.len()]);
        let mut seen: HashSet<(Vec<bool>, Vec<bool>)> = HashSet::new();
        seen.insert(full.clone());
        let mut queue = vec![full];
        let mut out = Vec::new();
        while let Some((vm, rm)) = queue.pop() {
            for (fv, fr) in &facet_masks {
                let nv: Vec<bool> = vm.iter().zip(fv).map(|(a, b)| *a && *b).collect();
                if !nv.iter().any(|&x| x) {
                    continue;
                }
                let nr: Vec<bool> = rm.iter().zip(fr).map(|(a, b)| *a && *b).collect();
                let key = (nv, nr);
                if seen.insert(key.clone()) {
                    out.push(self.face_from_mask(&key.0, &key.1));
                    queue.push(key);
                }
            }
        }
        let mut uniq: HashMap<PolyKey, Self> = HashMap::new();
        for f in out {
            uniq.entry(f.key()).or_insert(f);
        }
        let mut v: Vec<Self> = uniq.into_values().collect();
        v.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.key().cmp(&b.key())));
        v
    }

    /// Faces of dimension one less.
    pub fn facets(&self) -> Vec<Self> {
        self.inequalities
            .iter()
            .map(|r| {
                let (tv, tr) = self.tight_generators(r);
                self.face_from_mask(&tv, &tr)
            })
            .collect()
    }

    /// Whether `f` is a (possibly improper) face of `self`.
    pub fn has_face(&self, f: &Self) -> bool {
        match f.relative_interior_point() {
            None => true,
            Some(x) => self.contains(&x) && self.face_containing(&x) == *f,
        }
    }

    /// Whether `o ⊆ self`.
    pub fn contains_polyhedron(&self, o: &Self) -> bool {
        if o.is_empty() {
            return true;
        }
        o.vertices.iter().all(|v| self.contains(v))
            && o.rays.iter().chain(&o.lineality).all(|r| self.recession_contains(r))
            && o.lineality.iter().all(|l| {
                let m: Vec<Rational> = l.iter().map(|x| -x).collect();
                self.recession_contains(&m)
            })
    }

    fn recession_contains(&self, r: &[Rational]) -> bool {
        self.equalities.iter().all(|e| dot(split_row(e).0, r).is_zero())
            && self.inequalities.iter().all(|e| !dot(split_row(e).0, r).is_positive())
    }

    /// Sign pattern of `a·x − b` over the polyhedron: (has negative, has positive).
    pub fn sides(&self, a: &[Rational], b: &Rational) -> (bool, bool) {
        let mut neg = false;
        let mut pos = false;
        for v in &self.vertices {
            let s = dot(a, v) - b;
            neg |= s.is_negative();
            pos |= s.is_positive();
        }
        for r in &self.rays {
            let s = dot(a, r);
            neg |= s.is_negative();
            pos |= s.is_positive();
        }
        for l in &self.lineality {
            if !dot(a, l).is_zero() {
                neg = true;
                pos = true;
            }
        }
        (neg, pos)
    }

    /// `{x ∈ P : x_k = 0}` with coordinate k deleted.
    pub fn slice_drop(&self, k: usize) -> Self {
        let mut e = vec![Rational::zero(); self.ambient + 1];
        e[k] = Rational::one();
        let sliced = self.restrict(&[], &[e]);
        if sliced.is_empty() {
            return Self::empty(self.ambient - 1);
        }
        let drop = |r: &Row| -> Row { r.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x.clone()).collect() };
        let ineqs: Vec<Row> = sliced.inequalities.iter().map(drop).collect();
        let eqs: Vec<Row> = sliced.equalities.iter().map(drop).collect();
        Self::from_constraints(self.ambient - 1, &ineqs, &eqs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json::polyhedron_json(self)
    }
}
