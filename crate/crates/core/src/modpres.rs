//! Presentation matrices of graded modules: generic rank, Fitting ideals,
//! the `G_s` condition and the last-rows minors criterion.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::polycore::{Ideal, Poly, PolyRing};

const RANK_TRIALS: usize = 3;
const RANK_SEED: u64 = 0x5eed_0001;

/// An `n × s` matrix `φ` with `R^s → R^n → E → 0`; every column is
/// homogeneous of a constant degree `δ_j` in the Y-variables.
#[derive(Debug, Clone)]
pub struct PresentationMatrix {
    ring: Arc<PolyRing>,
    matrix: PolyMatrix,
    column_degrees: Vec<Option<u32>>,
}

fn y_degree(ring: &PolyRing, p: &Poly) -> Option<u32> {
    let mut degs = p.terms().iter().map(|(m, _)| ring.bidegree(m).0);
    let d = degs.next()?;
    if degs.all(|e| e == d) {
        Some(d)
    } else {
        None
    }
}

impl PresentationMatrix {
    pub fn new(ring: Arc<PolyRing>, matrix: PolyMatrix) -> Result<Self> {
        if matrix.nrows() == 0 {
            return Err(Error::Precondition(
                "presentation matrix needs at least one row".into(),
            ));
        }
        let mut column_degrees = Vec::with_capacity(matrix.ncols());
        for j in 0..matrix.ncols() {
            let mut deg: Option<u32> = None;
            for i in 0..matrix.nrows() {
                let p = matrix.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let d = y_degree(&ring, p).ok_or_else(|| {
                    Error::Precondition(format!(
                        "entry ({}, {}) = {} is not homogeneous",
                        i + 1,
                        j + 1,
                        p.format(&ring)
                    ))
                })?;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => {
                        return Err(Error::Precondition(format!(
                            "column {} mixes degrees {e} and {d}",
                            j + 1
                        )))
                    }
                    _ => {}
                }
            }
            column_degrees.push(deg);
        }
        Ok(PresentationMatrix {
            ring,
            matrix,
            column_degrees,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Number of generators `n = μ(E)`.
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// Number of relations `s`.
    pub fn s(&self) -> usize {
        self.matrix.ncols()
    }

    /// `δ_j`; `None` for a zero column.
    pub fn column_degree(&self, j: usize) -> Option<u32> {
        self.column_degrees[j]
    }

    pub fn column_degrees(&self) -> &[Option<u32>] {
        &self.column_degrees
    }

    pub fn format(&self) -> Vec<Vec<String>> {
        self.matrix.format(&self.ring)
    }
}

/// Rank, generator count and shape flags of `E = coker φ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleInfo {
    pub rank_e: usize,
    pub mu: usize,
    pub is_pd1: bool,
    pub almost_linear_m: Option<u32>,
}

fn scalar_rank(field: &crate::field::FieldSpec, mut rows: Vec<Vec<u32>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv(rows[rank][col]);
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let factor = field.mul(rows[i][col], inv);
                for k in col..ncols {
                    let v = field.mul(factor, rows[rank][k]);
                    rows[i][k] = field.sub(rows[i][k], v);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn symbolic_rank(phi: &PresentationMatrix) -> usize {
    let max = phi.n().min(phi.s());
    (1..=max)
        .rev()
        .find(|&t| phi.matrix.minors(&phi.ring, t).iter().any(|m| !m.is_zero()))
        .unwrap_or(0)
}

/// Rank of `φ` over the fraction field.
///
/// Random evaluations give a lower bound; it is confirmed by checking that
/// all minors one size up vanish, with a full symbolic scan as fallback.
pub fn generic_rank(phi: &PresentationMatrix) -> usize {
    let ring = &phi.ring;
    let field = ring.field();
    let max = phi.n().min(phi.s());
    let mut rng = ChaCha8Rng::seed_from_u64(RANK_SEED);
    let mut best = 0;
    for _ in 0..RANK_TRIALS {
        let point: Vec<u32> = (0..ring.nvars())
            .map(|_| rng.gen_range(1..field.characteristic()))
            .collect();
        let rows: Vec<Vec<u32>> = (0..phi.n())
            .map(|i| {
                (0..phi.s())
                    .map(|j| phi.matrix.get(i, j).evaluate(ring, &point))
                    .collect()
            })
            .collect();
        best = best.max(scalar_rank(field, rows));
        if best == max {
            return best;
        }
    }
    if phi.matrix.minors(ring, best + 1).iter().all(Poly::is_zero) {
        best
    } else {
        symbolic_rank(phi)
    }
}

pub fn rank_of_module(phi: &PresentationMatrix) -> ModuleInfo {
    let r = generic_rank(phi);
    let n = phi.n();
    let s = phi.s();
    let e = n - r;
    let is_pd1 = s == n - e && r == s;
    let almost_linear_m = match phi.column_degrees.split_last() {
        Some((Some(m), rest)) if *m >= 1 && rest.iter().all(|d| *d == Some(1)) => Some(*m),
        _ => None,
    };
    ModuleInfo {
        rank_e: e,
        mu: n,
        is_pd1,
        almost_linear_m,
    }
}

/// `Fitt_j(E) = I_{n−j}(φ)`.
pub fn fitting_ideal(phi: &PresentationMatrix, j: usize) -> Ideal {
    let n = phi.n();
    if j >= n {
        return Ideal::unit(phi.ring.clone());
    }
    phi.matrix.minors_ideal(&phi.ring, n - j)
}

#[derive(Debug, Clone, Serialize)]
pub struct GsEntry {
    /// Codimension being checked.
    pub j: usize,
    /// Index of the Fitting ideal `Fitt_{e+j−1}(E)`.
    pub fitting_index: usize,
    pub height: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GsReport {
    pub s_bound: usize,
    pub rank_e: usize,
    pub holds: bool,
    pub entries: Vec<GsEntry>,
}

/// `G_s` in the form `ht Fitt_{e+j−1}(E) > j` for `1 ≤ j ≤ s − 1`, that is
/// `μ(E_p) ≤ dim R_p + e − 1` whenever `1 ≤ dim R_p ≤ s − 1`.
pub fn check_gs(phi: &PresentationMatrix, s_bound: usize) -> GsReport {
    let e = rank_of_module(phi).rank_e;
    let mut entries = Vec::new();
    for j in 1..s_bound {
        let idx = e + j - 1;
        let height = fitting_ideal(phi, idx).height();
        entries.push(GsEntry {
            j,
            fitting_index: idx,
            height,
            holds: height > j as i64,
        });
    }
    GsReport {
        s_bound,
        rank_e: e,
        holds: entries.iter().all(|x| x.holds),
        entries,
    }
}

/// Row operation applied before taking the last rows.
#[derive(Debug, Clone)]
pub enum RowTransform {
    Identity,
    /// An invertible `n × n` matrix of field scalars.
    Matrix(Vec<Vec<u32>>),
    /// Try the identity, then `trials` seeded random invertible matrices.
    RandomSearch { seed: u64, trials: usize },
}

fn last_rows_match(phi: &PresentationMatrix, transform: &PolyMatrix, ell: usize) -> Result<bool> {
    let ring = &phi.ring;
    let n = phi.n();
    let t = n - ell;
    let moved = transform.mul(ring, &phi.matrix);
    let last: Vec<usize> = (ell..n).collect();
    let lhs = phi.matrix.minors_ideal(ring, t);
    let rhs = moved.select_rows(&last).minors_ideal(ring, t);
    lhs.equals(&rhs)
}

/// Is `I_{n−ℓ}(φ)` generated by the maximal minors of the last `n − ℓ` rows
/// of `φ` after the given row operation?
pub fn check_last_rows_minors_criterion(
    phi: &PresentationMatrix,
    ell: usize,
    transform: &RowTransform,
) -> Result<bool> {
    let n = phi.n();
    if ell > n {
        return Err(Error::Precondition(format!("ℓ = {ell} exceeds n = {n}")));
    }
    if !rank_of_module(phi).is_pd1 {
        return Err(Error::Precondition(
            "last-rows criterion needs a projective-dimension-one presentation".into(),
        ));
    }
    if ell == n {
        return Ok(true);
    }
    let ring = &phi.ring;
    let field = ring.field();
    let identity: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    match transform {
        RowTransform::Identity => {
            last_rows_match(phi, &PolyMatrix::from_scalars(ring, &identity), ell)
        }
        RowTransform::Matrix(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Precondition("row transform must be n × n".into()));
            }
            if scalar_rank(field, rows.clone()) != n {
                return Err(Error::Precondition("row transform is singular".into()));
            }
            last_rows_match(phi, &PolyMatrix::from_scalars(ring, rows), ell)
        }
        RowTransform::RandomSearch { seed, trials } => {
            if last_rows_match(phi, &PolyMatrix::from_scalars(ring, &identity), ell)? {
                return Ok(true);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut tried = 0;
            while tried < *trials {
                let rows: Vec<Vec<u32>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..field.characteristic())).collect())
                    .collect();
                if scalar_rank(field, rows.clone()) != n {
                    continue;
                }
                tried += 1;
                if last_rows_match(phi, &PolyMatrix::from_scalars(ring, &rows), ell)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}
