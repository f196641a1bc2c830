//! Weyl group elements, enumeration, Bruhat order and minimal coset
//! representatives.

use crate::matrix::IntMat;
use crate::root::{Character, RootDatum};
use std::collections::HashMap;
use std::fmt;

/// A Weyl group element: its action on `X*(T)` plus the lexicographically
/// least reduced word. Equality is matrix equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElt {
    pub matrix: IntMat,
    pub word: Vec<usize>,
}

impl WeylElt {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "s{}", self.word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("s"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumLimitExceeded {
    pub limit: usize,
}

impl fmt::Display for EnumLimitExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weyl group enumeration exceeded the guard of {} elements", self.limit)
    }
}

impl std::error::Error for EnumLimitExceeded {}

pub const DEFAULT_ENUM_LIMIT: usize = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CosetSide {
    /// Representatives of `W_K \ W`, i.e. the set `^K W`.
    Left,
    /// Representatives of `W / W_K`, i.e. the set `W^K`.
    Right,
}

impl RootDatum {
    /// Reflection matrix of the i-th simple root acting on `X*(T)`:
    /// `v -> v - <v, alpha_i^vee> alpha_i`.
    pub fn simple_reflection_matrix(&self, i: usize) -> IntMat {
        let n = self.rank;
        let alpha = &self.simple_roots[i];
        let coalpha = &self.simple_coroots[i];
        let mut m = IntMat::identity(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] -= alpha[r] * coalpha[c];
            }
        }
        m
    }

    pub fn identity_elt(&self) -> WeylElt {
        WeylElt { matrix: IntMat::identity(self.rank), word: vec![] }
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        WeylElt { matrix: self.simple_reflection_matrix(i), word: vec![i] }
    }

    /// Number of positive roots sent to negative roots; this is the length.
    pub fn inversions(&self, m: &IntMat) -> usize {
        let n = self.rank;
        let mut buf = vec![0i64; n];
        self.positive_roots
            .iter()
            .filter(|beta| {
                for (i, b) in buf.iter_mut().enumerate() {
                    *b = (0..n).map(|j| m[(i, j)] * beta[j]).sum();
                }
                !self.is_positive_root(&buf)
            })
            .count()
    }

    /// Rebuilds the canonical element for a lattice automorphism known to
    /// lie in W: greedy smallest-left-descent walk, which produces the
    /// lexicographically least reduced word. The descent test reads the
    /// sign of w^{-1}(alpha_i), maintained incrementally.
    pub fn element_from_matrix(&self, m: IntMat) -> WeylElt {
        let id = IntMat::identity(self.rank);
        let mut inv = m.inverse_unimodular();
        let mut word = Vec::new();
        let guard = 2 * self.num_positive_roots() + 2;
        while inv != id {
            let i = (0..self.simple_roots.len())
                .find(|&i| !self.is_positive_root(&inv.apply(&self.simple_roots[i])))
                .expect("matrix is not a Weyl group element");
            word.push(i);
            // w <- s_i w, so w^{-1} <- w^{-1} s_i.
            inv = inv.mul(&self.simple_reflection_matrix(i));
            assert!(word.len() <= guard, "matrix is not a Weyl group element");
        }
        WeylElt { matrix: m, word }
    }

    pub fn multiply(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        self.element_from_matrix(a.matrix.mul(&b.matrix))
    }

    pub fn inverse(&self, a: &WeylElt) -> WeylElt {
        self.element_from_matrix(a.matrix.inverse_unimodular())
    }

    /// sigma(w) = sigma . w . sigma^{-1}; its reduced word is the
    /// sigma-permuted word.
    pub fn frobenius_elt(&self, w: &WeylElt) -> WeylElt {
        let m = self
            .frobenius
            .mul(&w.matrix)
            .mul(&self.frobenius.inverse_unimodular());
        self.element_from_matrix(m)
    }

    pub fn act_on_char(&self, w: &WeylElt, lambda: &Character) -> Character {
        Character(w.matrix.apply(&lambda.0))
    }

    /// Left descent: l(s_i w) < l(w), i.e. w^{-1}(alpha_i) is negative.
    pub fn is_left_descent(&self, w: &WeylElt, i: usize) -> bool {
        let cand = self.simple_reflection_matrix(i).mul(&w.matrix);
        self.inversions(&cand) < w.length()
    }

    /// Right descent: l(w s_i) < l(w), i.e. w(alpha_i) is negative.
    pub fn is_right_descent(&self, w: &WeylElt, i: usize) -> bool {
        let img = w.matrix.apply(&self.simple_roots[i]);
        !self.is_positive_root(&img)
    }

    /// All elements of `W_K` (of `W` when `subset` is None), breadth-first
    /// by right multiplication, each with its lexicographically least
    /// reduced word. The listing is sorted by (length, word).
    pub fn weyl_enumerate(
        &self,
        subset: Option<&[usize]>,
        limit: Option<usize>,
    ) -> Result<Vec<WeylElt>, EnumLimitExceeded> {
        let gens: Vec<usize> = match subset {
            Some(k) => k.to_vec(),
            None => self.all_simple(),
        };
        let limit = limit.unwrap_or(DEFAULT_ENUM_LIMIT);
        let mut seen: HashMap<IntMat, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut layer = vec![self.identity_elt()];
        seen.insert(layer[0].matrix.clone(), ());
        while !layer.is_empty() {
            out.extend(layer.iter().cloned());
            if out.len() > limit {
                return Err(EnumLimitExceeded { limit });
            }
            let mut next: Vec<WeylElt> = Vec::new();
            for w in &layer {
                for &i in &gens {
                    let m = w.matrix.mul(&self.simple_reflection_matrix(i));
                    if self.inversions(&m) != w.length() + 1 {
                        continue;
                    }
                    if seen.contains_key(&m) {
                        continue;
                    }
                    // The BFS word is not necessarily lex-least; recompute.
                    let elt = self.element_from_matrix(m.clone());
                    seen.insert(m, ());
                    next.push(elt);
                }
            }
            next.sort_by(|a, b| a.word.cmp(&b.word));
            layer = next;
        }
        Ok(out)
    }

    /// Longest element of `W_K`, built greedily without enumerating `W_K`:
    /// ascend while some generator of K is not a right descent.
    pub fn longest_element(&self, subset: &[usize]) -> WeylElt {
        let mut cur = IntMat::identity(self.rank);
        loop {
            let up = subset
                .iter()
                .copied()
                .find(|&i| self.is_positive_root(&cur.apply(&self.simple_roots[i])));
            match up {
                Some(i) => cur = cur.mul(&self.simple_reflection_matrix(i)),
                None => return self.element_from_matrix(cur),
            }
        }
    }

    /// Bruhat order via the descent recursion; equivalent to the subword
    /// criterion.
    pub fn bruhat_leq(&self, u: &WeylElt, v: &WeylElt) -> bool {
        if u.length() > v.length() {
            return false;
        }
        if u.length() == v.length() {
            return u.matrix == v.matrix;
        }
        // v has positive length here, so it has a left descent.
        let i = v.word[0];
        let sv = self.element_from_matrix(self.simple_reflection_matrix(i).mul(&v.matrix));
        if self.is_left_descent(u, i) {
            let su = self.element_from_matrix(self.simple_reflection_matrix(i).mul(&u.matrix));
            self.bruhat_leq(&su, &sv)
        } else {
            self.bruhat_leq(u, &sv)
        }
    }

    /// Is `w` minimal in `W_K w` (side=Left, the set `^K W`) or in
    /// `w W_K` (side=Right, the set `W^K`)?
    pub fn is_min_coset_rep(&self, w: &WeylElt, subset: &[usize], side: CosetSide) -> bool {
        match side {
            CosetSide::Left => subset.iter().all(|&i| !self.is_left_descent(w, i)),
            CosetSide::Right => subset.iter().all(|&i| !self.is_right_descent(w, i)),
        }
    }

    pub fn min_coset_reps(
        &self,
        subset: &[usize],
        side: CosetSide,
        limit: Option<usize>,
    ) -> Result<Vec<WeylElt>, EnumLimitExceeded> {
        let all = self.weyl_enumerate(None, limit)?;
        Ok(all.into_iter().filter(|w| self.is_min_coset_rep(w, subset, side)).collect())
    }

    pub fn weyl_table(&self, limit: Option<usize>) -> Result<WeylTable, EnumLimitExceeded> {
        WeylTable::build(self, limit)
    }
}

/// Fully enumerated Weyl group with a memoized Bruhat matrix; the elements
/// are sorted by (length, word) so the order matrix can be filled by
/// length induction.
pub struct WeylTable {
    pub elements: Vec<WeylElt>,
    index: HashMap<IntMat, usize>,
    /// s_i * w and w * s_i as element indices.
    left_mul: Vec<Vec<usize>>,
    right_mul: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

impl WeylTable {
    fn build(d: &RootDatum, limit: Option<usize>) -> Result<WeylTable, EnumLimitExceeded> {
        let mut elements = d.weyl_enumerate(None, limit)?;
        elements.sort_by(|a, b| (a.length(), &a.word).cmp(&(b.length(), &b.word)));
        let index: HashMap<IntMat, usize> =
            elements.iter().enumerate().map(|(i, w)| (w.matrix.clone(), i)).collect();
        let gens = d.simple_roots.len();
        let left_mul: Vec<Vec<usize>> = elements
            .iter()
            .map(|w| {
                (0..gens)
                    .map(|i| index[&d.simple_reflection_matrix(i).mul(&w.matrix)])
                    .collect()
            })
            .collect();
        let right_mul: Vec<Vec<usize>> = elements
            .iter()
            .map(|w| {
                (0..gens)
                    .map(|i| index[&w.matrix.mul(&d.simple_reflection_matrix(i))])
                    .collect()
            })
            .collect();
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for v in 0..n {
            leq[v][v] = true;
            if elements[v].length() == 0 {
                continue;
            }
            let i = elements[v].word[0];
            let sv = left_mul[v][i];
            for u in 0..n {
                if elements[u].length() > elements[v].length() {
                    continue;
                }
                if u == v {
                    continue;
                }
                let su = left_mul[u][i];
                let below = if elements[su].length() < elements[u].length() {
                    leq[su][sv]
                } else {
                    leq[u][sv]
                };
                leq[u][v] = below;
            }
        }
        Ok(WeylTable { elements, index, left_mul, right_mul, leq })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &WeylElt) -> usize {
        self.index[&w.matrix]
    }

    pub fn index_of_matrix(&self, m: &IntMat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.leq[u][v]
    }

    pub fn left_mul(&self, i: usize, w: usize) -> usize {
        self.left_mul[w][i]
    }

    pub fn right_mul(&self, w: usize, i: usize) -> usize {
        self.right_mul[w][i]
    }
}
