//! Defining ideals of the symmetric algebra, Rees algebra and fiber cone of
//! `E = coker φ`, together with the invariants read off from them.
//!
//! Everything lives in the bigraded ring `S = R[T_1, …, T_n]` with
//! `deg Y_i = (1, 0)` and `deg T_i = (0, 1)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::combinations;
use crate::modpres::{rank_of_module, PresentationMatrix};
use crate::polycore::{name_map, Block, Ideal, Monomial, MonomialOrder, Poly, PolyRing, Variable};

/// Default cap for the reduction-number search.
pub const DEFAULT_R_MAX: usize = 10;

/// Name of the `i`-th Rees variable (1-based).
pub fn t_name(i: usize) -> String {
    format!("T_{i}")
}

/// `R[T_1, …, T_n]` over the variables of `base`, bigraded grevlex.
pub fn rees_ring(base: &PolyRing, n: usize) -> Result<Arc<PolyRing>> {
    let mut vars: Vec<Variable> = base.variables().to_vec();
    vars.extend((1..=n).map(|i| Variable::new(t_name(i), Block::T)));
    Ok(Arc::new(PolyRing::new(
        *base.field(),
        vars,
        MonomialOrder::BigradedGrevlex,
    )?))
}

#[derive(Debug, Clone)]
pub struct ReesData {
    pub phi: PresentationMatrix,
    pub rank_e: usize,
    /// `R[T_1, …, T_n]`.
    pub ring: Arc<PolyRing>,
    /// Defining ideal `L` of the symmetric algebra.
    pub sym: Ideal,
    /// Defining ideal `J` of the Rees algebra.
    pub rees: Ideal,
    /// Defining ideal of the fiber cone, in the ring without Y-variables.
    pub fiber: Ideal,
    /// Saturating element (a nonzero maximal minor of the right size).
    pub c: Poly,
    /// Analytic spread `ℓ(E)`.
    pub ell: i64,
    /// `dim S/J`.
    pub dim_rees: i64,
}

/// `L = ([T]·φ)`: one generator of bidegree `(δ_j, 1)` per column.
pub fn symmetric_ideal(phi: &PresentationMatrix) -> Result<Ideal> {
    let ring = rees_ring(phi.ring(), phi.n())?;
    symmetric_ideal_in(phi, &ring)
}

fn symmetric_ideal_in(phi: &PresentationMatrix, ring: &Arc<PolyRing>) -> Result<Ideal> {
    Ok(Ideal::new(ring.clone(), symmetric_relations(phi, ring)?))
}

/// The entries of `[T]·φ` in `ring`, zero columns included.
pub fn symmetric_relations(phi: &PresentationMatrix, ring: &PolyRing) -> Result<Vec<Poly>> {
    let base = phi.ring();
    let map = name_map(base, ring)?;
    let ts: Vec<Poly> = (1..=phi.n())
        .map(|i| Poly::var(ring, ring.var_index(&t_name(i)).unwrap()))
        .collect();
    let lifted = phi.matrix().map(|p| p.remap(ring, &map).unwrap());
    Ok(lifted.left_mul_vec(ring, &ts))
}

/// First nonzero `t × t` minor, row subsets outermost.
pub fn first_nonzero_minor(phi: &PresentationMatrix, t: usize) -> Option<Poly> {
    let ring = phi.ring();
    if t == 0 {
        return Some(Poly::one(ring));
    }
    let m = phi.matrix();
    for rows in combinations(phi.n(), t) {
        let sub = m.select_rows(&rows);
        for cols in combinations(phi.s(), t) {
            let d = sub.select_cols(&cols).determinant(ring);
            if !d.is_zero() {
                return Some(d);
            }
        }
    }
    None
}

/// `J = L : c^∞` with `c` the first nonzero maximal minor of `I_{n−e}(φ)`.
pub fn rees_ideal(phi: &PresentationMatrix) -> Result<ReesData> {
    let info = rank_of_module(phi);
    if info.rank_e == 0 {
        return Err(Error::Precondition("module has rank zero".into()));
    }
    let c = first_nonzero_minor(phi, phi.n() - info.rank_e).ok_or_else(|| {
        Error::Precondition(format!(
            "I_{}(φ) = 0: no saturating element",
            phi.n() - info.rank_e
        ))
    })?;
    rees_ideal_with(phi, info.rank_e, c)
}

/// Same as [`rees_ideal`] with an explicit saturating element `c ∈ I_{n−e}(φ)`.
pub fn rees_ideal_with(phi: &PresentationMatrix, rank_e: usize, c: Poly) -> Result<ReesData> {
    let ring = rees_ring(phi.ring(), phi.n())?;
    let sym = symmetric_ideal_in(phi, &ring)?;
    let c_lift = c.remap(&ring, &name_map(phi.ring(), &ring)?).unwrap();
    let rees = sym
        .saturate(&Ideal::new(ring.clone(), vec![c_lift]))?
        .reduced();
    let fiber = compute_fiber(&rees)?.reduced();
    let z_count = ring.block_indices(Block::Z).len() as i64;
    let ell = fiber.krull_dimension() - z_count;
    let d = ring.block_indices(Block::Y).len() as i64;
    let e = rank_e as i64;
    if z_count == 0 && d > 0 && !(e <= ell && ell <= d + e - 1) {
        return Err(Error::Internal(format!(
            "analytic spread {ell} violates {e} ≤ ℓ ≤ {}",
            d + e - 1
        )));
    }
    let dim_rees = rees.krull_dimension();
    Ok(ReesData {
        phi: phi.clone(),
        rank_e,
        ring,
        sym,
        rees,
        fiber,
        c,
        ell,
        dim_rees,
    })
}

/// Eliminate the Y-block: `J ∩ k[T]`.
pub fn compute_fiber(rees: &Ideal) -> Result<Ideal> {
    rees.eliminate_block(Block::Y)
}

pub fn fiber_ideal(rd: &ReesData) -> &Ideal {
    &rd.fiber
}

pub fn analytic_spread(rd: &ReesData) -> i64 {
    rd.ell
}

pub fn is_linear_type(rd: &ReesData) -> Result<bool> {
    rd.sym.equals(&rd.rees)
}

/// `J = L + I_fib·S`.
pub fn is_fiber_type(rd: &ReesData) -> Result<bool> {
    let extended = rd.fiber.map_into(rd.ring.clone())?;
    rd.sym.sum(&extended)?.equals(&rd.rees)
}

/// `J ∩ R = 0`.
pub fn meets_base_trivially(rd: &ReesData) -> Result<bool> {
    Ok(rd.rees.eliminate_block(Block::T)?.is_zero())
}

/// Linear T-forms (degree `(0, 1)`, no Y-variables) spanning a submodule.
#[derive(Debug, Clone)]
pub struct ReductionSpec {
    pub forms: Vec<Poly>,
}

impl ReductionSpec {
    pub fn new(ring: &PolyRing, forms: Vec<Poly>) -> Result<Self> {
        for f in &forms {
            let ok = f.terms().iter().all(|(m, _)| ring.bidegree(m) == (0, 1));
            if !ok {
                return Err(Error::Precondition(format!(
                    "reduction generator {} is not a Y-free linear T-form",
                    f.format(ring)
                )));
            }
        }
        Ok(ReductionSpec { forms })
    }

    /// All of `E`: `U = (T_1, …, T_n)`.
    pub fn whole_module(rd: &ReesData) -> Self {
        let forms = rd
            .ring
            .block_indices(Block::T)
            .into_iter()
            .map(|i| Poly::var(&rd.ring, i))
            .collect();
        ReductionSpec { forms }
    }
}

/// `U` is a reduction iff the fiber cone is finite over the image of `U`.
pub fn is_reduction(rd: &ReesData, u: &ReductionSpec) -> Result<bool> {
    let fring = rd.fiber.ring().clone();
    // Forms are Y-free, so only T/Z variables need a target.
    let map: Vec<Option<usize>> = rd
        .ring
        .variables()
        .iter()
        .map(|v| fring.var_index(&v.name))
        .collect();
    let forms: Vec<Poly> = u
        .forms
        .iter()
        .map(|f| {
            f.remap(&fring, &map).ok_or_else(|| {
                Error::Precondition("reduction form involves Y-variables".into())
            })
        })
        .collect::<Result<_>>()?;
    let z_count = fring.block_indices(Block::Z).len() as i64;
    let quot = rd.fiber.add_generators(&forms);
    Ok(quot.krull_dimension() - z_count == 0)
}

fn t_monomials(ring: &PolyRing, degree: u32) -> Vec<Monomial> {
    let t = ring.block_indices(Block::T);
    let mut out = Vec::new();
    fn rec(t: &[usize], k: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if k + 1 == t.len() {
            cur.0[t[k]] = left as u16;
            out.push(cur.clone());
            cur.0[t[k]] = 0;
            return;
        }
        for e in 0..=left {
            cur.0[t[k]] = e as u16;
            rec(t, k + 1, left - e, cur, out);
        }
        cur.0[t[k]] = 0;
    }
    if t.is_empty() {
        return out;
    }
    rec(&t, 0, degree, &mut Monomial::one(ring.nvars()), &mut out);
    out
}

/// Least `r ≤ r_max` with `E^{r+1} = U·E^r`, tested as: every T-monomial of
/// degree `r + 1` lies in `J + (U)`.
pub fn reduction_number(rd: &ReesData, u: &ReductionSpec, r_max: usize) -> Result<usize> {
    if !is_reduction(rd, u)? {
        return Err(Error::Precondition("U is not a reduction of E".into()));
    }
    let ring = &rd.ring;
    let quot = rd.rees.add_generators(&u.forms);
    let vanishes = |r: usize| {
        t_monomials(ring, r as u32 + 1)
            .into_iter()
            .all(|m| quot.contains(&Poly::monomial(ring, m, 1)))
    };
    for r in 0..=r_max {
        if vanishes(r) {
            if !vanishes(r + 1) {
                return Err(Error::Internal(format!(
                    "E^{{r+1}} = UE^r holds at r = {r} but not at r = {}",
                    r + 1
                )));
            }
            return Ok(r);
        }
    }
    Err(Error::ReductionBound {
        r_max,
        diagnostic: format!(
            "T-monomials of degree {} still survive modulo J + (U)",
            r_max + 1
        ),
    })
}

/// Is `R(E)/(X)` torsion free, tested as `(J + (X)) : c^∞ = J + (X)`?
pub fn torsion_free_quotient_check(rd: &ReesData, x_forms: &[Poly], c: &Poly) -> Result<bool> {
    torsion_free_modulo(&rd.rees, x_forms, c)
}

/// `(j + (x_forms)) : c^∞ = j + (x_forms)`.
pub fn torsion_free_modulo(j: &Ideal, x_forms: &[Poly], c: &Poly) -> Result<bool> {
    let base = j.add_generators(x_forms).reduced();
    let sat = base.saturate(&Ideal::new(j.ring().clone(), vec![c.clone()]))?;
    sat.equals(&base)
}

impl ReesData {
    /// `J + (extra)`.
    pub fn ideal_with(&self, extra: &[Poly]) -> Ideal {
        self.rees.add_generators(extra)
    }

    /// Lift a polynomial of the base ring into `R[T]`.
    pub fn lift(&self, p: &Poly) -> Result<Poly> {
        let map = name_map(self.phi.ring(), &self.ring)?;
        Ok(p.remap(&self.ring, &map).unwrap())
    }

    pub fn d(&self) -> usize {
        self.ring.block_indices(Block::Y).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::matrix::PolyMatrix;
    use crate::polycore::parse_poly;

    fn pres(rows: &[&[&str]]) -> PresentationMatrix {
        let ring = Arc::new(PolyRing::with_y_vars(FieldSpec::default(), &["x", "y"]).unwrap());
        let m = PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(&ring, s).unwrap()).collect())
                .collect(),
        );
        PresentationMatrix::new(ring, m).unwrap()
    }

    #[test]
    fn linear_type_complete_intersection() {
        let rd = rees_ideal(&pres(&[&["y"], &["-x"]])).unwrap();
        assert!(is_linear_type(&rd).unwrap());
        assert!(rd.fiber.is_zero());
        assert_eq!(rd.ell, 2);
    }

    #[test]
    fn zero_rank_rejected() {
        let ring = Arc::new(PolyRing::with_y_vars(FieldSpec::default(), &["x", "y"]).unwrap());
        let p = |s: &str| parse_poly(&ring, s).unwrap();
        let m = PolyMatrix::from_rows(vec![vec![p("x"), p("y")]]);
        let phi = PresentationMatrix::new(ring, m).unwrap();
        assert!(matches!(rees_ideal(&phi), Err(Error::Precondition(_))));
    }

    #[test]
    fn reduction_spec_validation() {
        let rd = rees_ideal(&pres(&[&["y"], &["-x"]])).unwrap();
        let bad = parse_poly(&rd.ring, "x*T_1").unwrap();
        assert!(ReductionSpec::new(&rd.ring, vec![bad]).is_err());
        let u = ReductionSpec::whole_module(&rd);
        assert_eq!(reduction_number(&rd, &u, 3).unwrap(), 0);
    }

    #[test]
    fn t_monomial_count() {
        let rd = rees_ideal(&pres(&[&["y", "0"], &["-x", "y"], &["0", "-x"]])).unwrap();
        assert_eq!(t_monomials(&rd.ring, 2).len(), 6);
    }
}
