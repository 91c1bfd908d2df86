//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy. Output is the reduced (monic, interreduced)
//! basis, sorted by descending leading monomial.

use std::cmp::Ordering;

use super::poly::Poly;
use super::ring::{Monomial, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroebnerBasis {
    elements: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Does the basis generate the unit ideal?
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial())
    }

    /// Unique remainder of `f` modulo the basis.
    pub fn normal_form(&self, ring: &PolyRing, f: &Poly) -> Poly {
        let refs: Vec<&Poly> = self.elements.iter().collect();
        let masks: Vec<u64> = refs
            .iter()
            .map(|g| g.leading_monomial().unwrap().support_mask())
            .collect();
        reduce(ring, f, &refs, &masks)
    }

    pub fn contains(&self, ring: &PolyRing, f: &Poly) -> bool {
        self.normal_form(ring, f).is_zero()
    }
}

/// Fully reduce `f` by `basis` (elements need not be monic).
pub(crate) fn reduce(ring: &PolyRing, f: &Poly, basis: &[&Poly], masks: &[u64]) -> Poly {
    let field = ring.field();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    while let Some((m, c)) = p.terms().first().map(|(m, c)| (m.clone(), *c)) {
        let mm = m.support_mask();
        let divisor = basis.iter().zip(masks).find(|(g, &gm)| {
            gm & !mm == 0 && g.leading_monomial().unwrap().divides(&m)
        });
        match divisor {
            Some((g, _)) => {
                let glm = g.leading_monomial().unwrap();
                let q = glm.quotient_of(&m);
                let coef = field.mul(c, field.inv(g.leading_coeff().unwrap()));
                p = p.add_mul_term(ring, g, field.neg(coef), &q);
            }
            None => {
                rem.push((m, c));
                p = Poly::from_sorted_unchecked(p.terms()[1..].to_vec());
            }
        }
    }
    Poly::from_sorted_unchecked(rem)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(ring: &PolyRing, f: &Poly, g: &Poly) -> Poly {
    let field = ring.field();
    let fm = f.leading_monomial().expect("nonzero");
    let gm = g.leading_monomial().expect("nonzero");
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l);
    let b = gm.quotient_of(&l);
    let fc = field.inv(f.leading_coeff().unwrap());
    let gc = field.inv(g.leading_coeff().unwrap());
    f.mul_term(ring, &a, fc)
        .add_mul_term(ring, g, field.neg(gc), &b)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    ring: &'a PolyRing,
    polys: Vec<Poly>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn active_refs(&self) -> (Vec<&Poly>, Vec<u64>) {
        let mut refs = Vec::new();
        let mut masks = Vec::new();
        for (k, p) in self.polys.iter().enumerate() {
            if self.active[k] {
                refs.push(p);
                masks.push(self.masks[k]);
            }
        }
        (refs, masks)
    }

    fn reduce_by_active(&self, f: &Poly) -> Poly {
        let (refs, masks) = self.active_refs();
        reduce(self.ring, f, &refs, &masks)
    }

    /// Insert a nonzero, fully reduced, monic polynomial and update pairs.
    fn insert(&mut self, h: Poly) {
        let hm = h.leading_monomial().unwrap().clone();
        let idx = self.polys.len();
        self.masks.push(hm.support_mask());
        self.lms.push(hm.clone());
        self.polys.push(h);
        self.active.push(false);

        let mut cands: Vec<usize> = (0..idx).filter(|&k| self.active[k]).collect();
        let mut kept: Vec<usize> = Vec::new();
        while !cands.is_empty() {
            let g1 = cands.remove(0);
            let l1 = hm.lcm(&self.lms[g1]);
            let dominated = |g2: &usize| hm.lcm(&self.lms[*g2]).divides(&l1);
            if hm.is_coprime(&self.lms[g1])
                || (!cands.iter().any(dominated) && !kept.iter().any(dominated))
            {
                kept.push(g1);
            }
        }
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && lms[p.i].lcm(&hm) != p.lcm
                && lms[p.j].lcm(&hm) != p.lcm)
        });
        for g in kept {
            if !hm.is_coprime(&self.lms[g]) {
                let lcm = hm.lcm(&self.lms[g]);
                self.pairs.push(Pair { i: g, j: idx, lcm });
            }
        }
        for k in 0..idx {
            if self.active[k] && hm.divides(&self.lms[k]) {
                self.active[k] = false;
            }
        }
        self.active[idx] = true;
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let a = &self.pairs[k];
            let b = &self.pairs[best];
            let ord = ring
                .cmp(&a.lcm, &b.lcm)
                .then((a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Compute the reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(ring: &PolyRing, gens: &[Poly]) -> GroebnerBasis {
    let mut input: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic(ring))
        .collect();
    if input.iter().any(|g| g.is_constant()) {
        return GroebnerBasis {
            elements: vec![Poly::one(ring)],
        };
    }
    // Small leading monomials first keeps the intermediate basis lean.
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut eng = Engine {
        ring,
        polys: Vec::new(),
        lms: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for f in input {
        let h = eng.reduce_by_active(&f);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return GroebnerBasis {
                elements: vec![Poly::one(ring)],
            };
        }
        eng.insert(h.monic(ring));
    }
    while let Some(pair) = eng.select() {
        let s = s_polynomial(ring, &eng.polys[pair.i], &eng.polys[pair.j]);
        let h = eng.reduce_by_active(&s);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return GroebnerBasis {
                elements: vec![Poly::one(ring)],
            };
        }
        eng.insert(h.monic(ring));
    }

    let basis: Vec<Poly> = eng
        .polys
        .iter()
        .enumerate()
        .filter(|(k, _)| eng.active[*k])
        .map(|(_, p)| p.clone())
        .collect();
    interreduce(ring, basis)
}

/// Turn a minimal basis into the reduced one.
fn interreduce(ring: &PolyRing, basis: Vec<Poly>) -> GroebnerBasis {
    let mut out = Vec::with_capacity(basis.len());
    for (k, g) in basis.iter().enumerate() {
        let others: Vec<&Poly> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p)
            .collect();
        let masks: Vec<u64> = others
            .iter()
            .map(|p| p.leading_monomial().unwrap().support_mask())
            .collect();
        let (lm, lc) = g.terms()[0].clone();
        let tail = Poly::from_sorted_unchecked(g.terms()[1..].to_vec());
        let tail = reduce(ring, &tail, &others, &masks);
        let full = Poly::monomial(ring, lm, lc).add(ring, &tail);
        out.push(full.monic(ring));
    }
    out.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    GroebnerBasis { elements: out }
}

/// Check Buchberger's criterion: all S-polynomials reduce to zero.
pub fn is_groebner_basis(ring: &PolyRing, basis: &[Poly]) -> bool {
    let gb = GroebnerBasis {
        elements: basis.to_vec(),
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_polynomial(ring, &basis[i], &basis[j]);
            if !gb.normal_form(ring, &s).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::polycore::parse::parse_poly;
    use crate::polycore::ring::{Block, MonomialOrder, Variable};

    fn rees_ring() -> PolyRing {
        PolyRing::new(
            FieldSpec::default(),
            vec![
                Variable::new("x", Block::Y),
                Variable::new("y", Block::Y),
                Variable::new("T_1", Block::T),
                Variable::new("T_2", Block::T),
                Variable::new("T_3", Block::T),
            ],
            MonomialOrder::BigradedGrevlex,
        )
        .unwrap()
    }

    fn polys(r: &PolyRing, src: &[&str]) -> Vec<Poly> {
        src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn already_reduced() {
        let r = rees_ring();
        let g = groebner(&r, &polys(&r, &["x", "y"]));
        assert_eq!(g.len(), 2);
        let g = groebner(&r, &polys(&r, &["y*T_1 - x*T_2"]));
        assert_eq!(g.elements(), polys(&r, &["y*T_1 - x*T_2"]).as_slice());
    }

    #[test]
    fn symmetric_ideal_of_square_of_maximal_ideal() {
        let r = rees_ring();
        let g = groebner(&r, &polys(&r, &["y*T_1 - x*T_2", "y*T_2 - x*T_3"]));
        let q = parse_poly(&r, "T_1*T_3 - T_2^2").unwrap();
        let yq = parse_poly(&r, "y*T_1*T_3 - y*T_2^2").unwrap();
        assert!(!g.contains(&r, &q));
        assert!(g.contains(&r, &yq));
        // The S-pair of the two linear relations yields x·(T_2^2 − T_1T_3).
        let printed: Vec<String> = g.elements().iter().map(|e| e.format(&r)).collect();
        assert_eq!(printed, ["x*T_2^2 - x*T_1*T_3", "y*T_1 - x*T_2", "y*T_2 - x*T_3"].map(String::from));
        assert!(is_groebner_basis(&r, g.elements()));
    }

    #[test]
    fn unit_and_zero() {
        let r = rees_ring();
        assert!(groebner(&r, &polys(&r, &["x", "x + 1"])).is_unit());
        assert!(groebner(&r, &[]).is_empty());
        assert!(groebner(&r, &[Poly::zero()]).is_empty());
    }

    #[test]
    fn normal_form_of_generator() {
        let r = rees_ring();
        let g = groebner(&r, &polys(&r, &["x", "y"]));
        assert!(g.normal_form(&r, &parse_poly(&r, "x").unwrap()).is_zero());
    }
}
