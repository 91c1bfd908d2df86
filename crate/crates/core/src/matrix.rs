//! Dense matrices with polynomial entries.

use crate::polycore::{Ideal, Poly, PolyRing};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix of field scalars.
    pub fn from_scalars(ring: &PolyRing, rows: &[Vec<u32>]) -> Self {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&c| Poly::constant(ring, c as i64))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.entries.iter()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        PolyMatrix::from_rows(rows.iter().map(|&i| self.row(i)).collect())
    }

    pub fn select_cols(&self, cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_rows(
            (0..self.rows)
                .map(|i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.rows, other.rows);
        PolyMatrix::from_rows(
            (0..self.rows)
                .map(|i| {
                    let mut r = self.row(i);
                    r.extend(other.row(i));
                    r
                })
                .collect(),
        )
    }

    pub fn mul(&self, ring: &PolyRing, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(ring, &a.mul(ring, b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Row vector `v · self`.
    pub fn left_mul_vec(&self, ring: &PolyRing, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = Poly::zero();
                for (i, vi) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vi.is_zero() {
                        acc = acc.add(ring, &vi.mul(ring, a));
                    }
                }
                acc
            })
            .collect()
    }

    /// Apply `f` to every entry.
    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Determinant of a square matrix by cofactor expansion.
    pub fn determinant(&self, ring: &PolyRing) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.det_rec(ring, 0, &idx)
    }

    fn det_rec(&self, ring: &PolyRing, row: usize, cols: &[usize]) -> Poly {
        if cols.is_empty() {
            return Poly::one(ring);
        }
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = Poly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.det_rec(ring, row + 1, &rest);
            let term = a.mul(ring, &sub);
            acc = if k % 2 == 0 {
                acc.add(ring, &term)
            } else {
                acc.sub(ring, &term)
            };
        }
        acc
    }

    /// All `t × t` minors, row subsets in lexicographic order outermost.
    pub fn minors(&self, ring: &PolyRing, t: usize) -> Vec<Poly> {
        let mut out = Vec::new();
        for rows in combinations(self.rows, t) {
            let sub_rows = self.select_rows(&rows);
            for cols in combinations(self.cols, t) {
                out.push(sub_rows.select_cols(&cols).determinant(ring));
            }
        }
        out
    }

    /// Ideal of `t × t` minors: unit for `t = 0`, zero if `t` exceeds a side.
    pub fn minors_ideal(&self, ring: &Arc<PolyRing>, t: usize) -> Ideal {
        if t == 0 {
            return Ideal::unit(ring.clone());
        }
        Ideal::new(ring.clone(), self.minors(ring, t))
    }

    pub fn format(&self, ring: &PolyRing) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).format(ring)).collect())
            .collect()
    }
}
