//! Dense square matrices over a [`RingCtx`](crate::poly::RingCtx).
//!
//! The model matrices this crate produces are sparse in practice (unipotent
//! one-parameter elements, diagonal torus elements), so multiplication skips
//! zero entries; storage stays dense for simplicity at desk scale (dimension
//! at most `|roots| + rank`).

use crate::poly::{Poly, RingCtx};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    entries: Vec<Poly>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat { n, entries: vec![Poly::default(); n * n] }
    }

    pub fn identity(ctx: &RingCtx, n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn diag(ctx: &RingCtx, entries: Vec<Poly>) -> Self {
        let n = entries.len();
        let mut m = Mat::zero(n);
        for (i, e) in entries.into_iter().enumerate() {
            let _ = ctx; // diagonal entries are stored as given
            m.set(i, i, e);
        }
        m
    }

    /// Build from an integer matrix, mapping entries through the context.
    pub fn from_int(ctx: &RingCtx, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Mat::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    m.set(i, j, ctx.int_elem(c));
                }
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, ctx: &RingCtx, rhs: &Mat) -> Mat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = ctx.mul(a, b);
                    let cur = out.get(i, j);
                    out.set(i, j, ctx.add(cur, &prod));
                }
            }
        }
        out
    }

    pub fn add(&self, ctx: &RingCtx, rhs: &Mat) -> Mat {
        assert_eq!(self.n, rhs.n);
        let mut out = Mat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, ctx.add(self.get(i, j), rhs.get(i, j)));
            }
        }
        out
    }

    pub fn sub(&self, ctx: &RingCtx, rhs: &Mat) -> Mat {
        assert_eq!(self.n, rhs.n);
        let mut out = Mat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, ctx.sub(self.get(i, j), rhs.get(i, j)));
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, ctx: &RingCtx, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = ctx.zero();
                for j in 0..self.n {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        continue;
                    }
                    acc = ctx.add(&acc, &ctx.mul(a, &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest `k` with `(M - I)^k = 0`, or `None` if none up to `n + 1`.
    pub fn unipotency_degree(&self, ctx: &RingCtx) -> Option<usize> {
        let id = Mat::identity(ctx, self.n);
        let d = self.sub(ctx, &id);
        let mut acc = Mat::identity(ctx, self.n);
        for k in 0..=self.n {
            if acc.is_zero() {
                return Some(k);
            }
            acc = acc.mul(ctx, &d);
        }
        if acc.is_zero() {
            Some(self.n + 1)
        } else {
            None
        }
    }
}
