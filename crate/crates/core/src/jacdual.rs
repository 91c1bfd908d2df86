//! Jacobian duals and their iterated augmentations.
//!
//! `B(φ)` is a `d × s` matrix over `R[T]` with `[Y]·B(φ) = [T]·φ`. Level
//! `i + 1` appends a block `C_i` whose columns span the part of
//! `I_d(B_i) ∩ (Y)` not already in `(Y·B_i)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::modpres::{rank_of_module, PresentationMatrix};
use crate::polycore::{Block, Ideal, Poly, PolyRing};
use crate::reescore::{rees_ring, symmetric_ideal, symmetric_relations};

#[derive(Debug, Clone)]
pub struct JacDualTower {
    pub ring: Arc<PolyRing>,
    pub d: usize,
    /// `B(φ)`.
    pub b: PolyMatrix,
    /// `B_1 = B(φ), B_2, …`.
    pub levels: Vec<PolyMatrix>,
    /// `C_i`, so that `levels[i] = [levels[i-1] | c_blocks[i-1]]`.
    pub c_blocks: Vec<PolyMatrix>,
    /// `(Y·B) + I_d(B_i)`, one entry per level.
    pub ideal_chain: Vec<Ideal>,
    /// First level `N` with `chain[N] = chain[N+1]` (1-based).
    pub stabilized_at: Option<usize>,
    yb: Ideal,
}

/// Write `g` as `[Y]·c`, sending each term to the smallest `Y_k` dividing it.
pub fn split_by_y(ring: &PolyRing, g: &Poly) -> Result<Vec<Poly>> {
    let ys = ring.block_indices(Block::Y);
    let mut parts: Vec<Vec<_>> = vec![Vec::new(); ys.len()];
    for (m, c) in g.terms() {
        let k = ys
            .iter()
            .position(|&y| m.exponents()[y] > 0)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "term {} of {} has no Y-factor",
                    ring.format_monomial(m),
                    g.format(ring)
                ))
            })?;
        let mut e = m.exponents().to_vec();
        e[ys[k]] -= 1;
        parts[k].push((crate::polycore::Monomial::from_exponents(&e), *c));
    }
    Ok(parts
        .into_iter()
        .map(|t| Poly::from_terms(ring, t))
        .collect())
}

fn y_vector(ring: &PolyRing) -> Vec<Poly> {
    ring.block_indices(Block::Y)
        .into_iter()
        .map(|i| Poly::var(ring, i))
        .collect()
}

/// `[Y]·B` as a list of polynomials.
fn y_times(ring: &PolyRing, b: &PolyMatrix) -> Vec<Poly> {
    b.left_mul_vec(ring, &y_vector(ring))
}

fn split_columns(ring: &PolyRing, d: usize, gens: &[Poly]) -> Result<PolyMatrix> {
    let mut m = PolyMatrix::zeros(d, gens.len());
    for (j, g) in gens.iter().enumerate() {
        let col = split_by_y(ring, g)?;
        for (i, p) in col.into_iter().enumerate() {
            m.set(i, j, p);
        }
    }
    Ok(m)
}

/// Level-one tower: `B(φ)` and `(Y·B) + I_d(B)`.
pub fn jacobian_dual(phi: &PresentationMatrix) -> Result<JacDualTower> {
    let ring = rees_ring(phi.ring(), phi.n())?;
    let d = ring.block_indices(Block::Y).len();
    let l = symmetric_relations(phi, &ring)?;
    let b = split_columns(&ring, d, &l)?;
    if y_times(&ring, &b) != l {
        return Err(Error::Internal("[Y]·B differs from [T]·φ".into()));
    }
    let yb = Ideal::new(ring.clone(), l);
    let first = yb.sum(&b.minors_ideal(&ring, d))?;
    Ok(JacDualTower {
        ring,
        d,
        b: b.clone(),
        levels: vec![b],
        c_blocks: Vec::new(),
        ideal_chain: vec![first],
        stabilized_at: None,
        yb,
    })
}

impl JacDualTower {
    /// `(Y·B(φ))`, the symmetric-algebra ideal.
    pub fn yb(&self) -> &Ideal {
        &self.yb
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Append one level.
    pub fn iterate(&mut self) -> Result<()> {
        let ring = self.ring.clone();
        let bi = self.levels.last().unwrap().clone();
        let ybi = Ideal::new(ring.clone(), y_times(&ring, &bi));
        let y = Ideal::block_ideal(ring.clone(), Block::Y);
        let inter = bi.minors_ideal(&ring, self.d).intersect(&y)?.reduced();
        let survivors: Vec<Poly> = inter
            .generators()
            .iter()
            .map(|g| ybi.normal_form(g))
            .filter(|g| !g.is_zero())
            .collect();
        let c = split_columns(&ring, self.d, &survivors)?;
        let yc = y_times(&ring, &c);
        if yc != survivors {
            return Err(Error::Internal("split of a survivor is not exact".into()));
        }
        let lhs = ybi.add_generators(inter.generators());
        let rhs = ybi.add_generators(&yc);
        if !lhs.equals(&rhs)? {
            return Err(Error::Internal(
                "(Y·B_i) + (I_d(B_i) ∩ (Y)) ≠ (Y·B_i) + (Y·C_i)".into(),
            ));
        }
        let next = bi.hconcat(&c);
        let entry = self.yb.sum(&next.minors_ideal(&ring, self.d))?;
        let prev = self.ideal_chain.last().unwrap();
        if self.stabilized_at.is_none() && prev.equals(&entry)? {
            self.stabilized_at = Some(self.levels.len());
        }
        self.levels.push(next);
        self.c_blocks.push(c);
        self.ideal_chain.push(entry);
        Ok(())
    }

    /// Iterate until two consecutive chain entries agree.
    pub fn iterate_until_stable(&mut self, max_levels: usize) -> Result<&Ideal> {
        while self.stabilized_at.is_none() {
            if self.levels.len() >= max_levels.max(1) + 1 {
                return Err(Error::NoStabilization {
                    levels: max_levels,
                    chain: self
                        .ideal_chain
                        .iter()
                        .map(|i| {
                            format!("{} GB elements, dim {}", i.groebner().len(), i.krull_dimension())
                        })
                        .collect(),
                });
            }
            self.iterate()?;
        }
        Ok(&self.ideal_chain[self.stabilized_at.unwrap() - 1])
    }
}

/// Default level cap: `m + 3`, with `m` the degree of the last column.
pub fn default_max_levels(phi: &PresentationMatrix) -> usize {
    rank_of_module(phi).almost_linear_m.unwrap_or(1) as usize + 3
}

/// `(Y·B(φ)) + I_d(B_N(φ))` for the stabilizing level `N`.
pub fn stabilized_ideal(phi: &PresentationMatrix, max_levels: usize) -> Result<(Ideal, JacDualTower)> {
    let mut tower = jacobian_dual(phi)?;
    let ideal = tower.iterate_until_stable(max_levels)?.clone();
    Ok((ideal, tower))
}

/// `(Y·B(φ)) : (Y)^exponent`, as an iterated colon by `(Y)`.
pub fn colon_candidate(phi: &PresentationMatrix, exponent: usize) -> Result<Ideal> {
    if exponent == 0 {
        return Err(Error::Precondition("colon exponent must be at least 1".into()));
    }
    let ring = rees_ring(phi.ring(), phi.n())?;
    let mut cur = symmetric_ideal(phi)?;
    let y = Ideal::block_ideal(ring, Block::Y);
    for _ in 0..exponent {
        cur = cur.quotient(&y)?.reduced();
    }
    Ok(cur)
}
