//! Small exact integer matrices used for lattice automorphisms.

use serde::{Deserialize, Serialize};

/// Dense square integer matrix, row-major. These act on characters as
/// column vectors: `(M v)_i = sum_j M[i][j] v_j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMat {
    pub n: usize,
    a: Vec<i64>,
}

impl IntMat {
    pub fn zero(n: usize) -> Self {
        IntMat { n, a: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMat { n, a: rows.iter().flatten().copied().collect() }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.a[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let s = self[(i, k)];
                if s == 0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += s * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.n, v.len());
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut out = IntMat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Exact inverse for unimodular matrices. Panics if the matrix is not
    /// invertible over the integers; every lattice automorphism we build
    /// (Weyl elements, Frobenius) is.
    pub fn inverse_unimodular(&self) -> IntMat {
        let n = self.n;
        // Fraction-free Gauss-Jordan over the rationals, tracked as
        // numerator matrix plus a common denominator.
        let mut m: Vec<Vec<i64>> = self.rows();
        let mut inv: Vec<Vec<i64>> = IntMat::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r][col] != 0).expect("singular matrix");
            m.swap(col, pivot);
            inv.swap(col, pivot);
            let p = m[col][col];
            assert!(p == 1 || p == -1, "matrix is not unimodular-triangularizable");
            if p == -1 {
                for j in 0..n {
                    m[col][j] = -m[col][j];
                    inv[col][j] = -inv[col][j];
                }
            }
            for r in 0..n {
                if r == col || m[r][col] == 0 {
                    continue;
                }
                let f = m[r][col];
                for j in 0..n {
                    m[r][j] -= f * m[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
        IntMat::from_rows(&inv)
    }

    /// Multiplicative order, searched up to `limit`. None if not found.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let id = IntMat::identity(self.n);
        let mut p = self.clone();
        for k in 1..=limit {
            if p == id {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.a[i * self.n + j]
    }
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{}", self.n, self.n)?;
        for r in self.rows() {
            writeln!(f, "  {:?}", r)?;
        }
        Ok(())
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| c * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_signed_permutation() {
        let m = IntMat::from_rows(&[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, -1]]);
        let inv = m.inverse_unimodular();
        assert_eq!(m.mul(&inv), IntMat::identity(3));
        assert_eq!(inv.mul(&m), IntMat::identity(3));
    }

    #[test]
    fn order_of_flip() {
        let m = IntMat::from_rows(&[vec![0, -1], vec![-1, 0]]);
        assert_eq!(m.order(10), Some(2));
        assert_eq!(IntMat::identity(2).order(10), Some(1));
    }
}
