use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use super::groebner::{groebner, GroebnerBasis};
use super::poly::Poly;
use super::ring::{Block, Monomial, MonomialOrder, PolyRing, Variable};
use crate::error::{Error, Result};

/// An ideal of a polynomial ring, with a write-once Gröbner basis cache.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Ideal {
    pub fn new(ring: Arc<PolyRing>, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring,
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: Arc<PolyRing>) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: Arc<PolyRing>) -> Self {
        let one = Poly::one(&ring);
        Ideal::new(ring, vec![one])
    }

    /// The ideal generated by the variables of a block.
    pub fn block_ideal(ring: Arc<PolyRing>, block: Block) -> Self {
        let gens = ring
            .block_indices(block)
            .into_iter()
            .map(|i| Poly::var(&ring, i))
            .collect();
        Ideal::new(ring, gens)
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: Arc<PolyRing>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Poly::var(&ring, i)).collect();
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| groebner(&self.ring, &self.gens))
    }

    /// Ideal generated by the reduced Gröbner basis (same ideal, canonical
    /// generators).
    pub fn reduced(&self) -> Ideal {
        let gb = self.groebner().clone();
        let out = Ideal::new(self.ring.clone(), gb.elements().to_vec());
        let _ = out.gb.set(gb);
        out
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.groebner().normal_form(&self.ring, f)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.gens.iter().all(|g| other.contains(g)))
    }

    /// Ideal equality via reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner() == other.groebner())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(self.ring.clone(), gens))
    }

    pub fn add_generators(&self, extra: &[Poly]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(self.ring.clone(), gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(&self.ring, b));
            }
        }
        Ok(Ideal::new(self.ring.clone(), gens))
    }

    pub fn power(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(self.ring.clone());
        for _ in 0..e {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `self ∩ other`, via `(t·I + (1 − t)·J) ∩ R` with one auxiliary
    /// variable eliminated.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.ring.clone()));
        }
        let n = self.ring.nvars();
        let big = self.ring.extended(
            vec![Variable::new(aux_name(&self.ring, "t"), Block::Aux)],
            MonomialOrder::Elim(vec![n]),
        )?;
        let emb: Vec<Option<usize>> = (0..n).map(Some).collect();
        let t = Poly::var(&big, n);
        let one_minus_t = Poly::one(&big).sub(&big, &t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.remap(&big, &emb).unwrap().mul(&big, &t));
        }
        for g in &other.gens {
            gens.push(g.remap(&big, &emb).unwrap().mul(&big, &one_minus_t));
        }
        let gb = groebner(&big, &gens);
        let back: Vec<Option<usize>> = (0..=n).map(|i| if i < n { Some(i) } else { None }).collect();
        let out = gb
            .elements()
            .iter()
            .filter_map(|g| g.remap(&self.ring, &back))
            .collect();
        Ok(Ideal::new(self.ring.clone(), out))
    }

    /// `self : (f)`.
    pub fn quotient_by(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Ok(Ideal::unit(self.ring.clone()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(self.ring.clone(), vec![f.clone()]);
        let inter = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(inter.gens.len());
        for g in &inter.gens {
            let q = g.exact_div(&self.ring, f).ok_or_else(|| {
                Error::Internal("intersection with (f) produced a non-multiple of f".into())
            })?;
            gens.push(q);
        }
        Ok(Ideal::new(self.ring.clone(), gens))
    }

    /// `self : other = {f | f·other ⊆ self}`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(self.ring.clone())))
    }

    /// `self : other^∞`, iterating quotients until the ideal stabilizes.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.reduced();
        loop {
            let next = cur.quotient(other)?.reduced();
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `self : f^∞` computed in one step as `(I + (1 − u·f)) ∩ R`.
    pub fn saturate_by_element(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Ok(Ideal::unit(self.ring.clone()));
        }
        let n = self.ring.nvars();
        let big = self.ring.extended(
            vec![Variable::new(aux_name(&self.ring, "u"), Block::Aux)],
            MonomialOrder::Elim(vec![n]),
        )?;
        let emb: Vec<Option<usize>> = (0..n).map(Some).collect();
        let mut gens: Vec<Poly> = self
            .gens
            .iter()
            .map(|g| g.remap(&big, &emb).unwrap())
            .collect();
        let u = Poly::var(&big, n);
        let uf = u.mul(&big, &f.remap(&big, &emb).unwrap());
        gens.push(Poly::one(&big).sub(&big, &uf));
        let gb = groebner(&big, &gens);
        let back: Vec<Option<usize>> = (0..=n).map(|i| if i < n { Some(i) } else { None }).collect();
        let out = gb
            .elements()
            .iter()
            .filter_map(|g| g.remap(&self.ring, &back))
            .collect();
        Ok(Ideal::new(self.ring.clone(), out))
    }

    /// `self ∩ k[remaining variables]`, presented in the ring without `vars`.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        let small = Arc::new(self.ring.without(vars)?);
        if vars.is_empty() {
            return Ok(Ideal::new(small, self.gens.clone()));
        }
        let elim_ring = self.ring.with_order(MonomialOrder::Elim(vars.to_vec()))?;
        let ident: Vec<Option<usize>> = (0..self.ring.nvars()).map(Some).collect();
        let gens: Vec<Poly> = self
            .gens
            .iter()
            .map(|g| g.remap(&elim_ring, &ident).unwrap())
            .collect();
        let gb = groebner(&elim_ring, &gens);
        let mut back = Vec::with_capacity(self.ring.nvars());
        let mut k = 0;
        for i in 0..self.ring.nvars() {
            if vars.contains(&i) {
                back.push(None);
            } else {
                back.push(Some(k));
                k += 1;
            }
        }
        let out = gb
            .elements()
            .iter()
            .filter_map(|g| g.remap(&small, &back))
            .collect();
        Ok(Ideal::new(small, out))
    }

    /// Eliminate all variables of a block.
    pub fn eliminate_block(&self, block: Block) -> Result<Ideal> {
        self.eliminate(&self.ring.block_indices(block))
    }

    /// Krull dimension of `ring / self`; `-1` for the unit ideal.
    ///
    /// Computed as the size of a largest set of variables that supports no
    /// leading monomial of the Gröbner basis.
    pub fn krull_dimension(&self) -> i64 {
        let gb = self.groebner();
        if gb.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        assert!(n <= 24, "krull_dimension: too many variables ({n})");
        let supports: Vec<u64> = gb.leading_monomials().map(|m| m.support_mask()).collect();
        let mut best = 0u32;
        for s in 0u64..(1u64 << n) {
            let size = s.count_ones();
            if size <= best {
                continue;
            }
            if supports.iter().all(|&sup| sup & !s != 0) {
                best = size;
            }
        }
        best as i64
    }

    /// `nvars − dim(R/I)`; the unit ideal gets `nvars + 1`.
    pub fn height(&self) -> i64 {
        self.ring.nvars() as i64 - self.krull_dimension()
    }

    /// Counts of a minimal homogeneous generating set per bidegree, from
    /// graded Nakayama: `dim I_D − dim (m·I)_D`.
    pub fn minimal_generators_by_degree(&self) -> Result<BTreeMap<(u32, u32), usize>> {
        let ring = &self.ring;
        if ring
            .variables()
            .iter()
            .any(|v| v.block.bidegree() == (0, 0))
        {
            return Err(Error::Precondition(
                "minimal generator counts need a positive grading (no Z/aux variables)".into(),
            ));
        }
        for g in &self.gens {
            if !g.is_bihomogeneous(ring) {
                return Err(Error::NotHomogeneous(g.format(ring)));
            }
        }
        let degrees: std::collections::BTreeSet<(u32, u32)> = self
            .gens
            .iter()
            .map(|g| g.bidegree(ring).unwrap())
            .collect();
        let m_i = Ideal::maximal(ring.clone()).product(self)?;
        let lt_i: Vec<Monomial> = self.groebner().leading_monomials().cloned().collect();
        let lt_mi: Vec<Monomial> = m_i.groebner().leading_monomials().cloned().collect();
        let mut out = BTreeMap::new();
        for d in degrees {
            let monos = monomials_of_bidegree(ring, d);
            let in_i = monos.iter().filter(|m| lt_i.iter().any(|l| l.divides(m))).count();
            let in_mi = monos.iter().filter(|m| lt_mi.iter().any(|l| l.divides(m))).count();
            if in_i > in_mi {
                out.insert(d, in_i - in_mi);
            }
        }
        Ok(out)
    }

    /// Move into another ring with the same variable names (possibly a
    /// different order or extra variables).
    pub fn map_into(&self, target: Arc<PolyRing>) -> Result<Ideal> {
        let map = name_map(&self.ring, &target)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.remap(&target, &map).unwrap())
            .collect();
        Ok(Ideal::new(target, gens))
    }

    /// Apply a ring homomorphism given by variable images in `target`.
    pub fn substitute(&self, target: Arc<PolyRing>, images: &[Poly]) -> Ideal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(&self.ring, &target, images))
            .collect();
        Ideal::new(target, gens)
    }

    /// Every generator is bihomogeneous.
    pub fn is_bihomogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_bihomogeneous(&self.ring))
    }

    /// Stable short hash of the reduced Gröbner basis.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.ring.to_string().as_bytes());
        for g in self.groebner().elements() {
            h.update(g.format(&self.ring).as_bytes());
            h.update(b";");
        }
        hex::encode(&h.finalize()[..8])
    }

    /// Generators as strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.format(&self.ring)).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// A name that does not clash with the ring's variables.
fn aux_name(ring: &PolyRing, base: &str) -> String {
    let mut name = format!("_{base}");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Map variables of `src` to variables of `dst` with the same name.
pub fn name_map(src: &PolyRing, dst: &PolyRing) -> Result<Vec<Option<usize>>> {
    src.variables()
        .iter()
        .map(|v| {
            dst.var_index(&v.name).map(Some).ok_or_else(|| {
                Error::RingMismatch(format!("variable {} missing in {}", v.name, dst))
            })
        })
        .collect()
}

fn monomials_of_bidegree(ring: &PolyRing, d: (u32, u32)) -> Vec<Monomial> {
    let y = ring.block_indices(Block::Y);
    let t = ring.block_indices(Block::T);
    let ys = monomials_in(&y, d.0);
    let ts = monomials_in(&t, d.1);
    let mut out = Vec::new();
    for a in &ys {
        for b in &ts {
            let mut m = Monomial::one(ring.nvars());
            for (&i, &e) in y.iter().zip(a) {
                m.0[i] += e;
            }
            for (&i, &e) in t.iter().zip(b) {
                m.0[i] += e;
            }
            out.push(m);
        }
    }
    out
}

/// Exponent vectors over `vars.len()` variables of total degree `deg`.
fn monomials_in(vars: &[usize], deg: u32) -> Vec<Vec<u16>> {
    fn rec(k: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k + 1 == cur.len() {
            cur[k] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e as u16;
            rec(k + 1, left - e, cur, out);
        }
    }
    if vars.is_empty() {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; vars.len()];
    rec(0, deg, &mut cur, &mut out);
    out
}
