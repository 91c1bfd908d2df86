//! Generic Bourbaki ideals.
//!
//! For `E = coker φ` of rank `e`, factor out `e − 1` generic elements
//! `x_j = Σ_i Z_ji f_i`. After the change of generators
//! `(x_1, …, x_{e−1}, f_{k_1}, …)` the presentation becomes `[A over ψ]`,
//! and `ψ` presents an ideal `I` (realized via Hilbert–Burch).
//!
//! In randomized mode `Z` is a matrix of field scalars drawn from a seeded
//! stream. In symbolic mode the pivot block of `Z` is the identity and the
//! remaining entries are fresh variables, so the row transform stays
//! polynomial.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::modpres::{generic_rank, PresentationMatrix};
use crate::polycore::{name_map, Block, Ideal, Poly, PolyRing, Variable};
use crate::reescore::{
    rees_ring, reduction_number, torsion_free_modulo, ReductionSpec, ReesData,
    DEFAULT_R_MAX,
};
use crate::verify::Assertion;

/// Default cap on `(e − 1)·n` in symbolic mode.
pub const DEFAULT_SYMBOLIC_BUDGET: usize = 3;

const MAX_DRAWS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BourbakiMode {
    Randomized,
    Symbolic { budget: usize },
}

#[derive(Debug, Clone)]
pub struct BourbakiContext {
    pub mode: BourbakiMode,
    pub seed: u64,
    pub rank_e: usize,
    /// `R` in randomized mode, `R[Z]` in symbolic mode.
    pub base: Arc<PolyRing>,
    /// `φ` over `base`.
    pub phi: PresentationMatrix,
    /// Scalar `Z` (randomized mode only).
    pub z_values: Option<Vec<Vec<u32>>>,
    /// `(e − 1) × n` coefficient matrix of the `x_j`, over `base`.
    pub z_matrix: PolyMatrix,
    pub pivots: Vec<usize>,
    /// `P` with `P·φ = [A over ψ]` and `T = T'·P`.
    pub row_transform: PolyMatrix,
    /// `X_j = Σ_i Z_ji T_i` in `R[T]`.
    pub x_forms: Vec<Poly>,
    /// `R[T_1, …, T_n]` over `base`.
    pub rees_ring: Arc<PolyRing>,
    pub a: PolyMatrix,
    pub psi: PresentationMatrix,
    /// The Bourbaki ideal `I ⊂ base`.
    pub ideal: Ideal,
}

fn scalar_inverse(field: &FieldSpec, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| a[i][col] != 0)?;
        a.swap(col, piv);
        let inv = field.inv(a[col][col]);
        for v in a[col].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..n {
            if i != col && a[i][col] != 0 {
                let f = a[i][col];
                for k in 0..2 * n {
                    let v = field.mul(f, a[col][k]);
                    a[i][k] = field.sub(a[i][k], v);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Pivot columns of a scalar matrix (first nonzero entry per step).
fn pivot_columns(field: &FieldSpec, z: &[Vec<u32>]) -> Vec<usize> {
    let mut rows = z.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]);
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = field.mul(rows[i][col], inv);
                for k in col..ncols {
                    let v = field.mul(f, rows[r][k]);
                    rows[i][k] = field.sub(rows[i][k], v);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn transpose(m: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

/// Rows of the new generator basis: `x_j` first, then the non-pivot `f_k`.
fn generator_rows(z: &[Vec<u32>], pivots: &[usize], n: usize) -> Vec<Vec<u32>> {
    let mut rows = z.to_vec();
    for k in (0..n).filter(|k| !pivots.contains(k)) {
        rows.push((0..n).map(|i| u32::from(i == k)).collect());
    }
    rows
}

pub fn z_name(j: usize, i: usize) -> String {
    format!("Z_{j}_{i}")
}

/// Build the context. `e` must equal the rank of `E`.
pub fn generic_bourbaki(
    phi: &PresentationMatrix,
    e: usize,
    seed: u64,
    mode: BourbakiMode,
) -> Result<BourbakiContext> {
    let n = phi.n();
    if e == 0 || e > n {
        return Err(Error::Precondition(format!("rank {e} out of range 1..={n}")));
    }
    let rank = n - generic_rank(phi);
    if rank != e {
        return Err(Error::Precondition(format!(
            "declared rank {e} but the module has rank {rank}"
        )));
    }
    let r0 = phi.ring().clone();
    let field = *r0.field();
    let (base, z_values, z_matrix, pivots, p) = match mode {
        BourbakiMode::Randomized => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut draw = None;
            for _ in 0..MAX_DRAWS {
                let z: Vec<Vec<u32>> = (0..e - 1)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..field.characteristic())).collect())
                    .collect();
                let piv = pivot_columns(&field, &z);
                if piv.len() == e - 1 {
                    draw = Some((z, piv));
                    break;
                }
            }
            let (z, pivots) = draw.ok_or_else(|| {
                Error::Internal("could not draw a full-rank coefficient matrix".into())
            })?;
            let m = generator_rows(&z, &pivots, n);
            let p = scalar_inverse(&field, &transpose(&m))
                .ok_or_else(|| Error::Internal("generator change is singular".into()))?;
            let zm = PolyMatrix::from_scalars(&r0, &z);
            let pm = PolyMatrix::from_scalars(&r0, &p);
            (r0.clone(), Some(z), zm, pivots, pm)
        }
        BourbakiMode::Symbolic { budget } => {
            if (e - 1) * n > budget {
                return Err(Error::Precondition(format!(
                    "symbolic mode needs (e−1)·n = {} variables, over the budget {budget}",
                    (e - 1) * n
                )));
            }
            let mut vars = r0.variables().to_vec();
            for j in 1..e {
                for i in e..=n {
                    vars.push(Variable::new(z_name(j, i), Block::Z));
                }
            }
            let base = Arc::new(PolyRing::new(field, vars, r0.order().clone())?);
            let z_var = |j: usize, i: usize| Poly::var(&base, base.var_index(&z_name(j, i)).unwrap());
            let mut zm = PolyMatrix::zeros(e - 1, n);
            for j in 0..e - 1 {
                zm.set(j, j, Poly::one(&base));
                for i in e - 1..n {
                    zm.set(j, i, z_var(j + 1, i + 1));
                }
            }
            // P = [[1, 0], [−Z'ᵗ, 1]].
            let mut pm = PolyMatrix::zeros(n, n);
            for i in 0..n {
                pm.set(i, i, Poly::one(&base));
            }
            for i in e - 1..n {
                for j in 0..e - 1 {
                    pm.set(i, j, z_var(j + 1, i + 1).neg(&base));
                }
            }
            (base, None, zm, (0..e - 1).collect(), pm)
        }
    };

    let to_base = name_map(&r0, &base)?;
    let phi_b = PresentationMatrix::new(
        base.clone(),
        phi.matrix().map(|q| q.remap(&base, &to_base).unwrap()),
    )?;
    let transformed = p.mul(&base, phi_b.matrix());
    let a = transformed.select_rows(&(0..e - 1).collect::<Vec<_>>());
    let psi = PresentationMatrix::new(
        base.clone(),
        transformed.select_rows(&(e - 1..n).collect::<Vec<_>>()),
    )?;
    let same_degrees = psi
        .column_degrees()
        .iter()
        .zip(phi_b.column_degrees())
        .all(|(a, b)| a.is_none() || b.is_none() || a == b);
    if !same_degrees {
        return Err(Error::Internal("ψ changed the column degrees".into()));
    }

    let rring = rees_ring(&base, n)?;
    let to_rees = name_map(&base, &rring)?;
    let ts: Vec<Poly> = (1..=n)
        .map(|i| Poly::var(&rring, rring.var_index(&format!("T_{i}")).unwrap()))
        .collect();
    let x_forms = (0..e - 1)
        .map(|j| {
            let mut acc = Poly::zero();
            for (i, t) in ts.iter().enumerate() {
                let c = z_matrix.get(j, i).remap(&rring, &to_rees).unwrap();
                acc = acc.add(&rring, &c.mul(&rring, t));
            }
            acc
        })
        .collect();

    let ideal = realize_ideal_hilbert_burch(&psi)?;
    Ok(BourbakiContext {
        mode,
        seed,
        rank_e: e,
        base,
        phi: phi_b,
        z_values,
        z_matrix,
        pivots,
        row_transform: p,
        x_forms,
        rees_ring: rring,
        a,
        psi,
        ideal,
    })
}

/// Signed maximal minors of an `n' × (n' − 1)` matrix whose minors have
/// height 2; the columns are re-verified as syzygies.
pub fn realize_ideal_hilbert_burch(psi: &PresentationMatrix) -> Result<Ideal> {
    let (n, s) = (psi.n(), psi.s());
    if n < 2 || s + 1 != n {
        return Err(Error::Precondition(format!(
            "realization unsupported: ψ is {n} × {s}, not n' × (n' − 1)"
        )));
    }
    if generic_rank(psi) != s {
        return Err(Error::Precondition(
            "realization unsupported: ψ does not have full column rank".into(),
        ));
    }
    let ring = psi.ring();
    let m = psi.matrix();
    let minors: Vec<Poly> = (0..n)
        .map(|k| {
            let rows: Vec<usize> = (0..n).filter(|&i| i != k).collect();
            let d = m.select_rows(&rows).determinant(ring);
            if k % 2 == 0 {
                d
            } else {
                d.neg(ring)
            }
        })
        .collect();
    if m.left_mul_vec(ring, &minors).iter().any(|p| !p.is_zero()) {
        return Err(Error::Internal("Hilbert–Burch minors are not killed by ψ".into()));
    }
    let ideal = Ideal::new(ring.clone(), minors);
    if ideal.height() != 2 {
        return Err(Error::Precondition(format!(
            "realization unsupported: maximal minors have height {}, not 2",
            ideal.height()
        )));
    }
    Ok(ideal)
}

impl BourbakiContext {
    pub fn n(&self) -> usize {
        self.phi.n()
    }

    /// Rewrite an ideal of `R[T]` in the coordinates `T'` with `T = T'·P`.
    pub fn to_primed(&self, ideal: &Ideal) -> Result<Ideal> {
        let ring = &self.rees_ring;
        let moved = ideal.map_into(ring.clone())?;
        let to_rees = name_map(&self.base, ring)?;
        let p = &self.row_transform;
        let n = self.n();
        let images: Vec<Poly> = ring
            .variables()
            .iter()
            .enumerate()
            .map(|(v, var)| match var.name.strip_prefix("T_") {
                Some(idx) => {
                    let i: usize = idx.parse::<usize>().unwrap() - 1;
                    let mut acc = Poly::zero();
                    for k in 0..n {
                        let c = p.get(k, i).remap(ring, &to_rees).unwrap();
                        let tk = Poly::var(ring, ring.var_index(&format!("T_{}", k + 1)).unwrap());
                        acc = acc.add(ring, &c.mul(ring, &tk));
                    }
                    acc
                }
                None => Poly::var(ring, v),
            })
            .collect();
        Ok(moved.substitute(ring.clone(), &images))
    }

    /// Embed an ideal of `R[T_1, …, T_{n'}]` (ψ's ring) via
    /// `T_k ↦ T'_{k+e−1}` and add `(T'_1, …, T'_{e−1})`.
    pub fn embed_from_psi(&self, ideal: &Ideal) -> Result<Ideal> {
        let ring = &self.rees_ring;
        let src = ideal.ring();
        let shift = self.rank_e - 1;
        let images: Vec<Poly> = src
            .variables()
            .iter()
            .map(|var| {
                let name = match var.name.strip_prefix("T_") {
                    Some(idx) => format!("T_{}", idx.parse::<usize>().unwrap() + shift),
                    None => var.name.clone(),
                };
                ring.var_index(&name)
                    .map(|i| Poly::var(ring, i))
                    .ok_or_else(|| Error::RingMismatch(format!("{name} missing")))
            })
            .collect::<Result<_>>()?;
        let mut out = ideal.substitute(ring.clone(), &images);
        let xs: Vec<Poly> = (1..=shift)
            .map(|k| Poly::var(ring, ring.var_index(&format!("T_{k}")).unwrap()))
            .collect();
        out = out.add_generators(&xs);
        Ok(out)
    }

    /// `J_E + (X)` in `T'`-coordinates equals `J_I` embedded plus `(T'_1, …)`.
    pub fn j_map_check(&self, rd_e: &ReesData, rd_i: &ReesData) -> Result<bool> {
        let lhs = self.to_primed(&rd_e.rees.map_into(self.rees_ring.clone())?.add_generators(&self.x_forms))?;
        let rhs = self.embed_from_psi(&rd_i.rees)?;
        lhs.equals(&rhs)
    }

    /// `R(E)/(X)` is torsion free and `X` drops the dimension by `e − 1`.
    pub fn deformation_check(&self, rd_e: &ReesData) -> Result<bool> {
        let ring = &self.rees_ring;
        let j = rd_e.rees.map_into(ring.clone())?;
        let c = self
            .ideal
            .generators()
            .first()
            .ok_or_else(|| Error::Precondition("Bourbaki ideal is zero".into()))?;
        let c = c.remap(ring, &name_map(&self.base, ring)?).unwrap();
        let torsion_free = torsion_free_modulo(&j, &self.x_forms, &c)?;
        let drop = j.krull_dimension() - j.add_generators(&self.x_forms).krull_dimension();
        Ok(torsion_free && drop == (self.rank_e - 1) as i64)
    }

    /// `U = (X) + (random forms)` for `E` and `K` = the images in `I`.
    pub fn reduction_pair(&self, rd_e: &ReesData, extra: usize) -> Result<(ReductionSpec, ReductionSpec)> {
        let Some(p) = self.z_values.as_ref().map(|_| &self.row_transform) else {
            return Err(Error::Precondition(
                "reductions are only drawn in randomized mode".into(),
            ));
        };
        let ring = &rd_e.ring;
        let n = self.n();
        let field = *ring.field();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(1);
        let coeffs: Vec<Vec<u32>> = (0..extra)
            .map(|_| (0..n).map(|_| rng.gen_range(0..field.characteristic())).collect())
            .collect();
        let t = |i: usize| Poly::var(ring, ring.var_index(&format!("T_{i}")).unwrap());
        let to_e = name_map(&self.rees_ring, ring)?;
        let mut u_forms: Vec<Poly> = self
            .x_forms
            .iter()
            .map(|x| x.remap(ring, &to_e).unwrap())
            .collect();
        for c in &coeffs {
            let mut acc = Poly::zero();
            for (i, &ci) in c.iter().enumerate() {
                acc = acc.add(ring, &t(i + 1).scale(ring, ci));
            }
            u_forms.push(acc);
        }
        let u = ReductionSpec::new(ring, u_forms)?;

        // u = [T]·c = [T']·(P·c); drop the T'_1..T'_{e−1} part.
        let psi_ring = rees_ring(&self.base, self.psi.n())?;
        let shift = self.rank_e - 1;
        let mut k_forms = Vec::new();
        for c in &coeffs {
            let mut acc = Poly::zero();
            for k in shift..n {
                let mut v = 0u32;
                for (i, &ci) in c.iter().enumerate() {
                    let pk = p.get(k, i);
                    let s = pk.terms().first().map_or(0, |t| t.1);
                    v = field.add(v, field.mul(s, ci));
                }
                let tk = Poly::var(
                    &psi_ring,
                    psi_ring.var_index(&format!("T_{}", k - shift + 1)).unwrap(),
                );
                acc = acc.add(&psi_ring, &tk.scale(&psi_ring, v));
            }
            k_forms.push(acc);
        }
        let k = ReductionSpec::new(&psi_ring, k_forms)?;
        Ok((u, k))
    }
}

/// Numbers behind a Bourbaki invariant report.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BourbakiNumerics {
    pub mu_i: Option<usize>,
    pub height_i: i64,
    pub ell_e: i64,
    pub ell_i: i64,
    pub r_u_e: Option<usize>,
    pub r_k_i: Option<usize>,
}

fn mu_of(ctx: &BourbakiContext) -> Result<usize> {
    let ideal = match ctx.mode {
        BourbakiMode::Randomized => ctx.ideal.clone(),
        BourbakiMode::Symbolic { .. } => {
            // μ over k(Z): specialize Z at a seeded random point.
            let base = &ctx.base;
            let plain: Vec<Variable> = base
                .variables()
                .iter()
                .filter(|v| v.block != Block::Z)
                .cloned()
                .collect();
            let small = Arc::new(PolyRing::new(*base.field(), plain, base.order().clone())?);
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            rng.set_stream(2);
            let images: Vec<Poly> = base
                .variables()
                .iter()
                .map(|v| match small.var_index(&v.name) {
                    Some(i) => Poly::var(&small, i),
                    None => Poly::constant(
                        &small,
                        rng.gen_range(1..base.field().characteristic()) as i64,
                    ),
                })
                .collect();
            ctx.ideal.substitute(small, &images)
        }
    };
    Ok(ideal.reduced().minimal_generators_by_degree()?.values().sum())
}

/// Bourbaki invariants of `I` against `E`.
pub fn verify_bourbaki_invariants(
    ctx: &BourbakiContext,
    rd_e: &ReesData,
    rd_i: &ReesData,
) -> Result<(Vec<Assertion>, BourbakiNumerics)> {
    let e = ctx.rank_e;
    let n = ctx.n();
    let mut out = Vec::new();
    let mut num = BourbakiNumerics {
        height_i: ctx.ideal.height(),
        ell_e: rd_e.ell,
        ell_i: rd_i.ell,
        ..Default::default()
    };

    let mu = mu_of(ctx)?;
    num.mu_i = Some(mu);
    out.push(Assertion::new(
        "mu_I",
        mu == n - e + 1,
        format!("μ(I) = {mu}, n − e + 1 = {}", n - e + 1),
    ));
    out.push(Assertion::new(
        "grade_I_positive",
        !ctx.ideal.is_zero(),
        format!("I = {}", ctx.ideal),
    ));
    out.push(Assertion::new(
        "height_I",
        num.height_i == 2,
        format!("ht I = {}", num.height_i),
    ));
    out.push(Assertion::new(
        "analytic_spread",
        rd_i.ell == rd_e.ell - e as i64 + 1,
        format!("ℓ(I) = {}, ℓ(E) = {}", rd_i.ell, rd_e.ell),
    ));
    let deformation = ctx.deformation_check(rd_e)?;
    out.push(Assertion::new(
        "deformation",
        deformation,
        "(J_E + (X)) : c^∞ = J_E + (X) and dim drops by e − 1".to_string(),
    ));
    let jmap = ctx.j_map_check(rd_e, rd_i)?;
    out.push(Assertion::new(
        "j_map",
        jmap,
        "J_E + (X) in T' coordinates vs J_I + (T'_1, …, T'_{e−1})".to_string(),
    ));

    if matches!(ctx.mode, BourbakiMode::Randomized) {
        let extra = (rd_e.ell - (e as i64 - 1)).max(0) as usize;
        let assertion = if !deformation {
            Assertion::skipped("reduction_number", "deformation check failed")
        } else {
            let (u, k) = ctx.reduction_pair(rd_e, extra)?;
            let ru = reduction_number(rd_e, &u, DEFAULT_R_MAX);
            let rk = reduction_number(rd_i, &k, DEFAULT_R_MAX);
            match (ru, rk) {
                (Ok(ru), Ok(rk)) => {
                    num.r_u_e = Some(ru);
                    num.r_k_i = Some(rk);
                    Assertion::new(
                        "reduction_number",
                        ru == rk,
                        format!("r_U(E) = {ru}, r_K(I) = {rk}, μ(K) = {}", k.forms.len()),
                    )
                }
                (ru, rk) => Assertion::new(
                    "reduction_number",
                    false,
                    format!("r_U(E): {ru:?}; r_K(I): {rk:?}"),
                ),
            }
        };
        out.push(assertion);
    }
    Ok((out, num))
}
