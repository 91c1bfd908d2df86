use std::cmp::Ordering;

use super::ring::{Monomial, PolyRing};

/// A sparse polynomial: terms sorted descending under the owning ring's
/// order, no zero coefficients, no repeated monomials.
///
/// A `Poly` does not carry its ring; every operation takes the ring it was
/// built in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(ring: &PolyRing, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &PolyRing) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &PolyRing, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn monomial(_ring: &PolyRing, m: Monomial, c: u32) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Build from arbitrary terms: sorts, merges duplicates and drops zeros.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Poly { terms: out }
    }

    /// Trust that `terms` is already canonical for the ring.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, u32)>) -> Self {
        Poly { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|(_, c)| *c)
    }

    pub fn add(&self, ring: &PolyRing, other: &Poly) -> Poly {
        self.combine(ring, other, 1, None)
    }

    pub fn sub(&self, ring: &PolyRing, other: &Poly) -> Poly {
        self.combine(ring, other, ring.field().neg(1), None)
    }

    pub fn neg(&self, ring: &PolyRing) -> Poly {
        self.scale(ring, ring.field().neg(1))
    }

    pub fn scale(&self, ring: &PolyRing, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        let f = ring.field();
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(*a, c)))
                .collect(),
        }
    }

    /// Multiply by the term `c * m`.
    pub fn mul_term(&self, ring: &PolyRing, m: &Monomial, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        let f = ring.field();
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), f.mul(*a, c)))
                .collect(),
        }
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_mul_term(&self, ring: &PolyRing, other: &Poly, c: u32, m: &Monomial) -> Poly {
        self.combine(ring, other, c, Some(m))
    }

    fn combine(&self, ring: &PolyRing, other: &Poly, c: u32, m: Option<&Monomial>) -> Poly {
        let f = ring.field();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |idx: usize| -> (Monomial, u32) {
            let (om, oc) = &other.terms[idx];
            let mm = match m {
                Some(m) => om.mul(m),
                None => om.clone(),
            };
            (mm, f.mul(*oc, c))
        };
        let mut pending: Option<(Monomial, u32)> = None;
        while i < self.terms.len() || j < other.terms.len() {
            if pending.is_none() && j < other.terms.len() {
                pending = Some(shifted(j));
            }
            match (&pending, self.terms.get(i)) {
                (Some((om, oc)), Some((sm, sc))) => match ring.cmp(sm, om) {
                    Ordering::Greater => {
                        out.push((sm.clone(), *sc));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((om.clone(), *oc));
                        pending = None;
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = f.add(*sc, *oc);
                        if s != 0 {
                            out.push((sm.clone(), s));
                        }
                        pending = None;
                        i += 1;
                        j += 1;
                    }
                },
                (Some((om, oc)), None) => {
                    out.push((om.clone(), *oc));
                    pending = None;
                    j += 1;
                }
                (None, Some((sm, sc))) => {
                    out.push((sm.clone(), *sc));
                    i += 1;
                }
                (None, None) => break,
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, ring: &PolyRing, other: &Poly) -> Poly {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            acc = acc.add_mul_term(ring, large, *c, m);
        }
        acc
    }

    pub fn pow(&self, ring: &PolyRing, e: u32) -> Poly {
        let mut acc = Poly::one(ring);
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, ring: &PolyRing) -> Poly {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(ring, ring.field().inv(c)),
        }
    }

    /// True when every term has the same bidegree.
    pub fn is_bihomogeneous(&self, ring: &PolyRing) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| ring.bidegree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// True when every term has the same total (standard) degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Bidegree of the leading term (the bidegree of a bihomogeneous poly).
    pub fn bidegree(&self, ring: &PolyRing) -> Option<(u32, u32)> {
        self.leading_monomial().map(|m| ring.bidegree(m))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Does the variable `i` occur?
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)
    }

    pub fn involves_any(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&i| self.involves(i))
    }

    /// Re-express in `dst`, sending variable `i` of `src` to `map[i]`.
    /// Returns `None` if a variable mapped to `None` occurs.
    pub fn remap(&self, dst: &PolyRing, map: &[Option<usize>]) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = Monomial::one(dst.nvars());
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e.0[map[i]?] += x;
                }
            }
            terms.push((e, *c));
        }
        Some(Poly::from_terms(dst, terms))
    }

    /// Substitute `images[i]` (polys in `dst`) for variable `i`.
    pub fn substitute(&self, src: &PolyRing, dst: &PolyRing, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), src.nvars());
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(dst)]; src.nvars()];
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(dst, 1).scale(dst, *c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(dst, &images[i]);
                    powers[i].push(next);
                }
                t = t.mul(dst, &powers[i][e as usize]);
            }
            acc = acc.add(dst, &t);
        }
        acc
    }

    /// Evaluate at a point of GF(p)^n.
    pub fn evaluate(&self, ring: &PolyRing, point: &[u32]) -> u32 {
        let f = ring.field();
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Exact division by a nonzero `divisor`; `None` if it does not divide.
    pub fn exact_div(&self, ring: &PolyRing, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.terms.first()?;
        let inv = ring.field().inv(*lc);
        let f = ring.field();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let q = lm.quotient_of(&m);
            let qc = f.mul(c, inv);
            rem = rem.add_mul_term(ring, divisor, f.neg(qc), &q);
            quot.push((q, qc));
        }
        Some(Poly::from_terms(ring, quot))
    }

    pub fn format(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = ring.field();
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sc = f.to_signed(*c);
            let neg = sc < 0;
            let mag = sc.unsigned_abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&mag.to_string());
            } else if mag == 1 {
                s.push_str(&ring.format_monomial(m));
            } else {
                s.push_str(&format!("{}*{}", mag, ring.format_monomial(m)));
            }
        }
        s
    }
}
