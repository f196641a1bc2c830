//! Dense matrices over F_{p^k}: exact elimination, minors, seeded sampling.

use crate::fq::{FqCtx, FqElem};
use rand::Rng;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<FqElem>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<_> = (0..self.cols).map(|j| self[(i, j)].coeffs[0]).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zero(ctx: &FqCtx, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix { rows, cols, entries: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: &FqCtx, n: usize) -> FqMatrix {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = ctx.one();
        }
        m
    }

    pub fn from_fn(ctx: &FqCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FqElem) -> FqMatrix {
        let mut m = Self::zero(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Integer matrix (e.g. a signed permutation representative) mapped
    /// into the field.
    pub fn from_int(ctx: &FqCtx, rows: &[Vec<i64>]) -> FqMatrix {
        let n = rows.len();
        Self::from_fn(ctx, n, rows[0].len(), |i, j| ctx.from_i64(rows[i][j]))
    }

    pub fn mul(&self, ctx: &FqCtx, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let s = self[(i, k)];
                if ctx.is_zero(&s) {
                    continue;
                }
                for j in 0..other.cols {
                    let add = ctx.mul(&s, &other[(k, j)]);
                    out[(i, j)] = ctx.add(&out[(i, j)], &add);
                }
            }
        }
        out
    }

    pub fn transpose(&self, ctx: &FqCtx) -> FqMatrix {
        Self::from_fn(ctx, self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise q-power.
    pub fn frobenius(&self, ctx: &FqCtx, q: u64) -> FqMatrix {
        Self::from_fn(ctx, self.rows, self.cols, |i, j| ctx.frobenius_pow(&self[(i, j)], q))
    }

    pub fn det(&self, ctx: &FqCtx) -> FqElem {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = ctx.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !ctx.is_zero(&m[(r, col)])) else {
                return ctx.zero();
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = m[(pivot, j)];
                    m[(pivot, j)] = m[(col, j)];
                    m[(col, j)] = tmp;
                }
                det = ctx.neg(&det);
            }
            let p = m[(col, col)];
            det = ctx.mul(&det, &p);
            let pinv = ctx.inv(&p).unwrap();
            for r in (col + 1)..n {
                if ctx.is_zero(&m[(r, col)]) {
                    continue;
                }
                let f = ctx.mul(&m[(r, col)], &pinv);
                for j in col..n {
                    let sub = ctx.mul(&f, &m[(col, j)]);
                    m[(r, j)] = ctx.sub(&m[(r, j)], &sub);
                }
            }
        }
        det
    }

    /// Determinant by cofactor expansion along the first row; the
    /// independent cross-check for elimination.
    pub fn det_cofactor(&self, ctx: &FqCtx) -> FqElem {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return ctx.one();
        }
        if n == 1 {
            return self[(0, 0)];
        }
        let mut acc = ctx.zero();
        for j in 0..n {
            if ctx.is_zero(&self[(0, j)]) {
                continue;
            }
            let minor = Self::from_fn(ctx, n - 1, n - 1, |r, c| {
                self[(r + 1, if c < j { c } else { c + 1 })]
            });
            let term = ctx.mul(&self[(0, j)], &minor.det_cofactor(ctx));
            acc = if j % 2 == 0 { ctx.add(&acc, &term) } else { ctx.sub(&acc, &term) };
        }
        acc
    }

    /// Inverse via Gauss-Jordan; None if singular.
    pub fn inv(&self, ctx: &FqCtx) -> Option<FqMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(ctx, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !ctx.is_zero(&m[(r, col)]))?;
            if pivot != col {
                for j in 0..n {
                    let t = m[(pivot, j)];
                    m[(pivot, j)] = m[(col, j)];
                    m[(col, j)] = t;
                    let t = inv[(pivot, j)];
                    inv[(pivot, j)] = inv[(col, j)];
                    inv[(col, j)] = t;
                }
            }
            let pinv = ctx.inv(&m[(col, col)]).unwrap();
            for j in 0..n {
                m[(col, j)] = ctx.mul(&m[(col, j)], &pinv);
                inv[(col, j)] = ctx.mul(&inv[(col, j)], &pinv);
            }
            for r in 0..n {
                if r == col || ctx.is_zero(&m[(r, col)]) {
                    continue;
                }
                let f = m[(r, col)];
                for j in 0..n {
                    let a = ctx.mul(&f, &m[(col, j)]);
                    m[(r, j)] = ctx.sub(&m[(r, j)], &a);
                    let b = ctx.mul(&f, &inv[(col, j)]);
                    inv[(r, j)] = ctx.sub(&inv[(r, j)], &b);
                }
            }
        }
        Some(inv)
    }

    /// Minor on explicit row and column index sets.
    pub fn minor(&self, ctx: &FqCtx, row_set: &[usize], col_set: &[usize]) -> FqElem {
        assert_eq!(row_set.len(), col_set.len(), "minor must be square");
        let sub = Self::from_fn(ctx, row_set.len(), col_set.len(), |i, j| {
            self[(row_set[i], col_set[j])]
        });
        sub.det(ctx)
    }

    pub fn random<R: Rng>(ctx: &FqCtx, n: usize, rng: &mut R) -> FqMatrix {
        Self::from_fn(ctx, n, n, |_, _| ctx.random(rng))
    }

    /// Rejection-samples until the determinant is nonzero.
    pub fn random_invertible<R: Rng>(ctx: &FqCtx, n: usize, rng: &mut R) -> FqMatrix {
        loop {
            let m = Self::random(ctx, n, rng);
            if !ctx.is_zero(&m.det(ctx)) {
                return m;
            }
        }
    }

    /// Row-major JSON of coefficient vectors.
    pub fn to_json(&self, ctx: &FqCtx) -> serde_json::Value {
        let rows: Vec<Vec<Vec<u64>>> = (0..self.rows)
            .map(|i| {
                (0..self.cols).map(|j| self[(i, j)].coeffs[..ctx.k].to_vec()).collect()
            })
            .collect();
        serde_json::json!(rows)
    }
}

impl std::ops::Index<(usize, usize)> for FqMatrix {
    type Output = FqElem;
    fn index(&self, (i, j): (usize, usize)) -> &FqElem {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FqMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FqElem {
        &mut self.entries[i * self.cols + j]
    }
}
