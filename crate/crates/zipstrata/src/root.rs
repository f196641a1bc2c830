//! Root data for the classical families: character lattice, roots and
//! coroots, and the Frobenius action on the lattice.

use crate::matrix::{dot, IntMat};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Element of the character lattice `X*(T) = Z^rank`. Cocharacters use the
/// dual copy of `Z^rank` under the standard pairing and are kept as plain
/// `Vec<i64>`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Character) -> Character {
        Character(crate::matrix::vec_add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Character) -> Character {
        Character(crate::matrix::vec_sub(&self.0, &other.0))
    }

    pub fn scale(&self, c: i64) -> Character {
        Character(crate::matrix::vec_scale(c, &self.0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    GlSplit,
    SpSplit,
    UInert,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::GlSplit => "gl-split",
            Family::SpSplit => "sp-split",
            Family::UInert => "u-inert",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    ZeroRank,
    NotPrimePower(u64),
    BadSignature { n: usize, r: usize, s: usize },
    MissingSignature,
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::ZeroRank => write!(f, "rank must be positive"),
            RootError::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            RootError::BadSignature { n, r, s } => {
                write!(f, "signature ({r},{s}) invalid for n={n}: need r+s=n, r>=s>=0")
            }
            RootError::MissingSignature => write!(f, "this family requires a signature (r,s)"),
        }
    }
}

impl std::error::Error for RootError {}

/// Packs a vector with entries in [-2, 2] into a nibble key; None if any
/// entry falls outside that range (then it is certainly not a root).
fn pack_root(v: &[i64]) -> Option<u64> {
    let mut key: u64 = 0;
    for (i, &x) in v.iter().enumerate() {
        if !(-2..=2).contains(&x) {
            return None;
        }
        key |= ((x + 2) as u64) << (4 * i as u64);
    }
    Some(key)
}

/// Returns `(p, k)` with `q = p^k` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Combinatorial skeleton of one of the classical reductive groups:
/// the lattice `Z^rank` housing `X*(T)`, the positive roots, the simple
/// roots with their coroots, and the Frobenius action `sigma`.
#[derive(Clone)]
pub struct RootDatum {
    pub family: Family,
    pub rank: usize,
    pub q: u64,
    pub signature: Option<(usize, usize)>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub positive_coroots: Vec<Vec<i64>>,
    /// Membership index for Phi+ (hot path for inversion counting).
    positive_set: std::collections::HashSet<Vec<i64>>,
    /// Nibble-packed copy of `positive_set`; root coordinates stay in
    /// [-2, 2] for every classical family, and Weyl images of roots are
    /// roots, so the packed key is total on everything we probe.
    positive_keys: std::collections::HashSet<u64>,
    /// sigma on X*(T).
    pub frobenius: IntMat,
    /// sigma on X_*(T): the inverse transpose of `frobenius`.
    pub frobenius_cochar: IntMat,
    /// Induced permutation of the simple roots: sigma(alpha_i) = alpha_perm[i].
    pub frobenius_perm: Vec<usize>,
    /// Multiplicative order of sigma.
    pub frobenius_order: usize,
}

impl RootDatum {
    pub fn build_classical(
        family: Family,
        n: usize,
        q: u64,
        signature: Option<(usize, usize)>,
    ) -> Result<RootDatum, RootError> {
        if n == 0 {
            return Err(RootError::ZeroRank);
        }
        if prime_power(q).is_none() {
            return Err(RootError::NotPrimePower(q));
        }
        if let Some((r, s)) = signature {
            if r + s != n || r < s {
                return Err(RootError::BadSignature { n, r, s });
            }
        }
        if family == Family::UInert && signature.is_none() {
            return Err(RootError::MissingSignature);
        }

        let e = |i: usize| -> Vec<i64> {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut positive_roots = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                positive_roots.push(crate::matrix::vec_sub(&e(i), &e(j)));
            }
        }
        let mut simple_roots: Vec<Vec<i64>> =
            (0..n.saturating_sub(1)).map(|i| crate::matrix::vec_sub(&e(i), &e(i + 1))).collect();
        if family == Family::SpSplit {
            for i in 0..n {
                for j in (i + 1)..n {
                    positive_roots.push(crate::matrix::vec_add(&e(i), &e(j)));
                }
            }
            for i in 0..n {
                positive_roots.push(crate::matrix::vec_scale(2, &e(i)));
            }
            simple_roots.push(crate::matrix::vec_scale(2, &e(n - 1)));
        }

        let coroot = |beta: &[i64]| -> Vec<i64> {
            let norm = dot(beta, beta);
            assert!(norm == 2 || norm == 4, "unexpected root length");
            beta.iter().map(|&x| 2 * x / norm).collect()
        };
        let simple_coroots: Vec<Vec<i64>> = simple_roots.iter().map(|a| coroot(a)).collect();
        let positive_coroots: Vec<Vec<i64>> = positive_roots.iter().map(|a| coroot(a)).collect();

        let frobenius = match family {
            Family::GlSplit | Family::SpSplit => IntMat::identity(n),
            Family::UInert => {
                // e_i -> -e_{n+1-i}: flips the Dynkin diagram, order 2.
                let mut m = IntMat::zero(n);
                for i in 0..n {
                    m[(n - 1 - i, i)] = -1;
                }
                m
            }
        };
        let frobenius_cochar = frobenius.inverse_unimodular().transpose();
        let frobenius_order = frobenius.order(64).expect("frobenius has finite order");
        let frobenius_perm: Vec<usize> = simple_roots
            .iter()
            .map(|a| {
                let img = frobenius.apply(a);
                simple_roots
                    .iter()
                    .position(|b| *b == img)
                    .expect("frobenius must permute the simple roots")
            })
            .collect();

        let positive_set: std::collections::HashSet<Vec<i64>> =
            positive_roots.iter().cloned().collect();
        let positive_keys = positive_roots.iter().map(|r| pack_root(r).unwrap()).collect();
        let d = RootDatum {
            family,
            rank: n,
            q,
            signature,
            simple_roots,
            simple_coroots,
            positive_roots,
            positive_coroots,
            positive_set,
            positive_keys,
            frobenius,
            frobenius_cochar,
            frobenius_perm,
            frobenius_order,
        };
        d.validate();
        Ok(d)
    }

    /// Structural invariants of the datum; called on construction.
    fn validate(&self) {
        let k = self.simple_roots.len();
        for i in 0..k {
            for j in 0..k {
                let c = dot(&self.simple_roots[i], &self.simple_coroots[j]);
                if i == j {
                    assert_eq!(c, 2, "Cartan diagonal");
                } else {
                    assert!(c <= 0, "Cartan off-diagonal must be non-positive");
                }
            }
        }
        for a in &self.simple_roots {
            assert!(self.is_positive_root(a), "simple roots lie in Phi+");
        }
        // Closure: a sum of positive roots that is a root is again positive.
        for a in &self.positive_roots {
            for b in &self.positive_roots {
                let s = crate::matrix::vec_add(a, b);
                if self.is_root(&s) {
                    assert!(self.is_positive_root(&s), "Phi+ closed under root sums");
                }
            }
        }
        // Pairing invariance of sigma.
        for i in 0..k {
            for j in 0..k {
                let sa = self.frobenius.apply(&self.simple_roots[i]);
                let sb = self.frobenius_cochar.apply(&self.simple_coroots[j]);
                assert_eq!(
                    dot(&sa, &sb),
                    dot(&self.simple_roots[i], &self.simple_coroots[j]),
                    "sigma must preserve the pairing"
                );
            }
        }
        // The standard inner product must be invariant under the simple
        // reflections and sigma; Freudenthal and the Weyl dimension formula
        // depend on it.
        for a in &self.positive_roots {
            let img = self.frobenius.apply(a);
            assert_eq!(dot(&img, &img), dot(a, a), "sigma must be orthogonal");
        }
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        match pack_root(v) {
            Some(k) => self.positive_keys.contains(&k),
            None => false,
        }
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.positive_set.contains(v) || self.positive_set.contains(&crate::matrix::vec_scale(-1, v))
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `<lambda, c>` for a character and a cocharacter vector.
    pub fn pairing(&self, lambda: &Character, cochar: &[i64]) -> i64 {
        assert_eq!(lambda.rank(), cochar.len(), "dimension mismatch");
        dot(&lambda.0, cochar)
    }

    /// K-dominance: `<lambda, alpha^vee> >= 0` for every simple root in K.
    pub fn is_dominant(&self, lambda: &Character, subset: &[usize]) -> bool {
        subset.iter().all(|&i| self.pairing(lambda, &self.simple_coroots[i]) >= 0)
    }

    pub fn all_simple(&self) -> Vec<usize> {
        (0..self.simple_roots.len()).collect()
    }

    pub fn frobenius_char(&self, lambda: &Character) -> Character {
        Character(self.frobenius.apply(&lambda.0))
    }

    pub fn frobenius_inv_char(&self, lambda: &Character) -> Character {
        // sigma has finite order o, so sigma^{-1} = sigma^{o-1}.
        let mut out = lambda.clone();
        for _ in 0..(self.frobenius_order - 1) {
            out = self.frobenius_char(&out);
        }
        out
    }

    /// Positive roots lying in the span of the simple roots indexed by K,
    /// i.e. the positive roots of the Levi attached to K.
    pub fn levi_positive_roots(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.positive_roots.len())
            .filter(|&b| {
                let c = self.simple_root_coordinates(&self.positive_roots[b]);
                c.iter().enumerate().all(|(i, &ci)| ci == 0 || subset.contains(&i))
            })
            .collect()
    }

    /// Coordinates of a positive root in the basis of simple roots.
    /// Exact; panics if the vector is not a non-negative integral
    /// combination (every positive root is).
    pub fn simple_root_coordinates(&self, beta: &[i64]) -> Vec<i64> {
        // Solve sum_i c_i alpha_i = beta by fraction-free elimination on an
        // integer augmented matrix; sizes are tiny.
        let k = self.simple_roots.len();
        let n = self.rank;
        let mut aug: Vec<Vec<i128>> = (0..n)
            .map(|row| {
                let mut r: Vec<i128> =
                    (0..k).map(|col| self.simple_roots[col][row] as i128).collect();
                r.push(beta[row] as i128);
                r
            })
            .collect();
        let mut piv_rows = Vec::new();
        let mut r0 = 0usize;
        for col in 0..k {
            let Some(pr) = (r0..n).find(|&r| aug[r][col] != 0) else {
                continue;
            };
            aug.swap(r0, pr);
            for r in 0..n {
                if r == r0 || aug[r][col] == 0 {
                    continue;
                }
                let (a, b) = (aug[r0][col], aug[r][col]);
                for c in 0..=k {
                    aug[r][c] = aug[r][c] * a - aug[r0][c] * b;
                }
            }
            piv_rows.push((col, r0));
            r0 += 1;
        }
        let mut coords = vec![0i64; k];
        for &(col, row) in &piv_rows {
            let num = aug[row][k];
            let den = aug[row][col];
            assert_eq!(num % den, 0, "root coordinates must be integral");
            coords[col] = (num / den) as i64;
        }
        // Verify consistency (rows without pivots must be satisfied).
        let mut acc = vec![0i64; n];
        for (i, c) in coords.iter().enumerate() {
            for (j, accj) in acc.iter_mut().enumerate() {
                *accj += c * self.simple_roots[i][j];
            }
        }
        assert_eq!(acc.as_slice(), beta, "vector outside the root lattice span");
        coords
    }

    /// Serialization form documented in the README.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "n": self.rank,
            "q": self.q,
            "signature": self.signature,
            "simple_roots": self.simple_roots,
            "positive_roots": self.positive_roots,
            "frobenius_matrix": self.frobenius.rows(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl3_has_type_a_data() {
        let d = RootDatum::build_classical(Family::GlSplit, 3, 5, None).unwrap();
        assert_eq!(d.simple_roots, vec![vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(d.frobenius, IntMat::identity(3));
        assert_eq!(d.positive_roots.len(), 3);
    }

    #[test]
    fn sp2_has_type_c_data() {
        let d = RootDatum::build_classical(Family::SpSplit, 2, 3, None).unwrap();
        assert_eq!(d.positive_roots.len(), 4);
        assert_eq!(d.simple_roots.len(), 2);
        assert_eq!(d.simple_roots[1], vec![0, 2]);
        assert_eq!(d.simple_coroots[1], vec![0, 1]);
    }

    #[test]
    fn u_inert_frobenius_flips() {
        let d = RootDatum::build_classical(Family::UInert, 2, 5, Some((1, 1))).unwrap();
        assert_eq!(d.frobenius.apply(&[1, 0]), vec![0, -1]);
        assert_eq!(d.frobenius_order, 2);
        let d3 = RootDatum::build_classical(Family::UInert, 3, 5, Some((2, 1))).unwrap();
        assert_eq!(d3.frobenius.apply(&[1, 0, 0]), vec![0, 0, -1]);
        assert_eq!(d3.frobenius_perm, vec![1, 0]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            RootDatum::build_classical(Family::GlSplit, 0, 5, None),
            Err(RootError::ZeroRank)
        ));
        assert!(matches!(
            RootDatum::build_classical(Family::GlSplit, 2, 6, None),
            Err(RootError::NotPrimePower(6))
        ));
        assert!(matches!(
            RootDatum::build_classical(Family::UInert, 3, 5, Some((1, 2))),
            Err(RootError::BadSignature { .. })
        ));
        assert!(matches!(
            RootDatum::build_classical(Family::UInert, 3, 5, None),
            Err(RootError::MissingSignature)
        ));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn cartan_pairing_examples() {
        let d = RootDatum::build_classical(Family::GlSplit, 2, 5, None).unwrap();
        let alpha = Character(d.simple_roots[0].clone());
        assert_eq!(d.pairing(&alpha, &d.simple_coroots[0]), 2);
    }
}
