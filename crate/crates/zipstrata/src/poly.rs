//! Sparse multivariate polynomials over F_p and the exact big-integer
//! binomial sum, plus the socle membership counter-example.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sparse polynomial over F_p in named variables; exponents are
/// arbitrary-precision so large q-power degrees never truncate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    pub p: u64,
    pub variables: Vec<String>,
    pub terms: BTreeMap<Vec<BigUint>, u64>,
}

impl MultiPoly {
    pub fn zero(p: u64, variables: &[&str]) -> MultiPoly {
        MultiPoly { p, variables: variables.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, variables: &[&str], c: u64) -> MultiPoly {
        let mut f = Self::zero(p, variables);
        if !c.is_multiple_of(p) {
            f.terms.insert(vec![BigUint::zero(); f.variables.len()], c % p);
        }
        f
    }

    /// `c * prod variables[i]^exps[i]`.
    pub fn monomial(p: u64, variables: &[&str], exps: &[u64], c: i64) -> MultiPoly {
        let mut f = Self::zero(p, variables);
        assert_eq!(exps.len(), f.variables.len());
        let cc = c.rem_euclid(p as i64) as u64;
        if cc != 0 {
            f.terms.insert(exps.iter().map(|&e| BigUint::from(e)).collect(), cc);
        }
        f
    }

    fn assert_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.p, other.p, "mixed characteristics");
        assert_eq!(self.variables, other.variables, "mixed variable sets");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert(0);
            *entry = (*entry + c) % self.p;
            if *entry == 0 {
                terms.remove(e);
            }
        }
        MultiPoly { p: self.p, variables: self.variables.clone(), terms }
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, &c)| (e.clone(), (self.p - c) % self.p)).collect();
        MultiPoly { p: self.p, variables: self.variables.clone(), terms }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut terms: BTreeMap<Vec<BigUint>, u64> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<BigUint> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert(0);
                *entry = (*entry + ca * cb) % self.p;
            }
        }
        terms.retain(|_, c| *c != 0);
        MultiPoly { p: self.p, variables: self.variables.clone(), terms }
    }

    pub fn pow(&self, e: u64) -> MultiPoly {
        let mut acc = Self::constant(self.p, &self.variables.iter().map(|s| s.as_str()).collect::<Vec<_>>(), 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn support(&self) -> Vec<Vec<BigUint>> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Binomial coefficient with C(a, b) = 0 for b < 0 or b > a.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a || a < 0 {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..b {
        num *= BigUint::from((a - i) as u64);
        den *= BigUint::from((i + 1) as u64);
    }
    num / den
}

/// The alternating sum
/// `sum_{j=0}^{n-i-d} (-1)^j C(n-i, j+d) C(j+d+i, d+i)`, exact over Z.
pub fn binomial_identity_sum(n: i64, i: i64, d: i64) -> BigInt {
    let mut acc = BigInt::zero();
    let upper = n - i - d;
    let mut j = 0i64;
    while j <= upper {
        let term = BigInt::from(binomial(n - i, j + d)) * BigInt::from(binomial(j + d + i, d + i));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        j += 1;
    }
    acc
}

/// The region `4i - 2n + 3d < 0` that this identity is commonly quoted
/// over. It overshoots: e.g. (n,i,d) = (1,1,-1) lies inside but the sum
/// is -1 there.
pub fn nominal_vanishing_region(n: i64, i: i64, d: i64) -> bool {
    4 * i - 2 * n + 3 * d < 0
}

/// The sharp vanishing region `2i + d < n`. Shifting j by d rewrites the
/// sum as sum_j (-1)^j C(n-i, j) C(i+j, j-d), the contraction of the
/// divided powers E^(j-d) E^(j) on the weight-i line of an (n+1)-dim
/// sl_2-string, which telescopes to zero exactly while d stays below the
/// pairing n - 2i of that weight.
pub fn sharp_vanishing_region(n: i64, i: i64, d: i64) -> bool {
    2 * i + d < n
}

/// Report of the socle membership check for `f1^m = delta^{-m}(xy^q - yx^q)^m`
/// with `m = q^2 - q + 1`.
#[derive(Clone, Debug)]
pub struct SocleReport {
    pub q: u64,
    pub m: u64,
    pub support: Vec<(BigUint, BigUint)>,
    pub basis: Vec<(BigUint, BigUint)>,
    /// Whether the expansion support is contained in the 4-monomial basis;
    /// the theory predicts false.
    pub contained: bool,
}

/// Expands `(x y^q - y x^q)^m` over F_p (p = char F_q) and compares the
/// support against the monomial basis `{x^{q^3+1}, x^{q^3} y, x y^{q^3},
/// y^{q^3+1}}` of the irreducible submodule.
pub fn socle_counterexample(q: u64) -> SocleReport {
    let (p, _) = crate::root::prime_power(q).expect("q must be a prime power");
    let m = q * q - q + 1;
    let vars = ["x", "y"];
    let xyq = MultiPoly::monomial(p, &vars, &[1, q], 1);
    let yxq = MultiPoly::monomial(p, &vars, &[q, 1], 1);
    let f = xyq.sub(&yxq).pow(m);
    let support: Vec<(BigUint, BigUint)> =
        f.support().into_iter().map(|e| (e[0].clone(), e[1].clone())).collect();
    let q3 = BigUint::from(q).pow(3);
    let one = BigUint::one();
    let basis = vec![
        (&q3 + &one, BigUint::zero()),
        (q3.clone(), one.clone()),
        (one.clone(), q3.clone()),
        (BigUint::zero(), &q3 + &one),
    ];
    let contained = support.iter().all(|t| basis.contains(t));
    SocleReport { q, m, support, basis, contained }
}

/// Bookkeeping of the Steinberg factorization behind the counter-example:
/// `m(1+q) = q^3 + 1`, base-q digits [1,0,0,1], a 4-element monomial basis
/// of homogeneous degree q^3 + 1 with pairwise distinct torus weights
/// matching the twisted product of two copies of the standard 2-dimensional
/// module.
#[derive(Clone, Debug)]
pub struct SteinbergMonomialReport {
    pub q: u64,
    pub m: u64,
    pub basis_size: usize,
    pub degrees_homogeneous: bool,
    pub weights_distinct: bool,
    pub digits_match: bool,
    pub weights_match_tensor: bool,
}

pub fn steinberg_monomial_check(q: u64) -> SteinbergMonomialReport {
    let m = q * q - q + 1;
    assert_eq!(m * (q + 1), q * q * q + 1);
    // Base-q digits of the single Levi pairing <lambda, alpha^vee> = q^3+1.
    let mut digits = Vec::new();
    let mut t = q * q * q + 1;
    for _ in 0..4 {
        digits.push(t % q);
        t /= q;
    }
    let digits_match = digits == [1, 0, 0, 1] && t == 0;

    // Monomial basis x^a y^b, (a,b) in {q^3+1,q^3,1,0} pattern.
    let q3 = q * q * q;
    let basis: Vec<(u64, u64)> = vec![(q3 + 1, 0), (q3, 1), (1, q3), (0, q3 + 1)];
    let degrees_homogeneous = basis.iter().all(|(a, b)| a + b == q3 + 1);

    // Torus weights: x and y carry the two weights of the standard Levi
    // module; with w_x = (0,-1) and w_y = (-1,0) the monomial x^a y^b has
    // weight a w_x + b w_y (the delta^{-m} twist shifts all four equally).
    let weight = |a: u64, b: u64| -> (i64, i64) { (-(b as i64), -(a as i64)) };
    let mut ws: Vec<(i64, i64)> = basis.iter().map(|&(a, b)| weight(a, b)).collect();
    let weights_distinct = {
        let mut s = ws.clone();
        s.sort();
        s.dedup();
        s.len() == ws.len()
    };
    // Tensor structure: weights must be {mu + q^3 nu} over the four pairs
    // of standard-module weights.
    let std_weights = [(0i64, -1i64), (-1, 0)];
    let mut tensor: Vec<(i64, i64)> = Vec::new();
    for &(a1, b1) in &std_weights {
        for &(a2, b2) in &std_weights {
            tensor.push((a1 + q3 as i64 * a2, b1 + q3 as i64 * b2));
        }
    }
    tensor.sort();
    ws.sort();
    let weights_match_tensor = tensor == ws;

    SteinbergMonomialReport {
        q,
        m,
        basis_size: basis.len(),
        degrees_homogeneous,
        weights_distinct,
        digits_match,
        weights_match_tensor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freshmans_dream() {
        for p in [2u64, 3, 5] {
            let vars = ["x", "y"];
            let f = MultiPoly::monomial(p, &vars, &[1, 0], 1).add(&MultiPoly::monomial(p, &vars, &[0, 1], 1));
            let fp = f.pow(p);
            let expect = MultiPoly::monomial(p, &vars, &[p, 0], 1)
                .add(&MultiPoly::monomial(p, &vars, &[0, p], 1));
            assert_eq!(fp, expect, "p = {p}");
        }
    }

    #[test]
    fn ring_identities() {
        let vars = ["x", "y", "z"];
        let f = MultiPoly::monomial(5, &vars, &[2, 1, 0], 3)
            .add(&MultiPoly::monomial(5, &vars, &[0, 0, 1], 4));
        let one = MultiPoly::constant(5, &vars, 1);
        assert_eq!(f.mul(&one), f);
        assert_eq!(f.sub(&f), MultiPoly::zero(5, &vars));
        assert_eq!(f.pow(0), one);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(3, 7), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn binomial_sum_examples() {
        // (n=1, i=0, d=0): condition -2 < 0, two-term sum vanishes.
        assert_eq!(binomial_identity_sum(1, 0, 0), BigInt::zero());
        // (n=0, i=0, d=-1): condition -3 < 0, vanishes under the
        // zero-binomial convention.
        assert_eq!(binomial_identity_sum(0, 0, -1), BigInt::zero());
        // (n=2, i=1, d=1): 4i-2n+3d = 3 >= 0, no vanishing asserted; the
        // sum is returned as-is.
        let out = binomial_identity_sum(2, 1, 1);
        assert_ne!(out, BigInt::zero());
    }

    #[test]
    fn binomial_vanishing_sweep_sharp_region() {
        for n in 0..=8i64 {
            for i in 0..=n {
                for d in -n..=n {
                    if sharp_vanishing_region(n, i, d) {
                        assert_eq!(
                            binomial_identity_sum(n, i, d),
                            BigInt::zero(),
                            "n={n} i={i} d={d}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn nominal_region_has_counterexamples() {
        // The displayed inequality admits points where the sum is nonzero;
        // these pin the slip and justify the sharp region above.
        assert!(nominal_vanishing_region(1, 1, -1));
        assert_eq!(binomial_identity_sum(1, 1, -1), BigInt::from(-1));
        assert!(nominal_vanishing_region(2, 2, -2));
        assert_eq!(binomial_identity_sum(2, 2, -2), BigInt::from(1));
        // Conversely the sharp region contains vanishing points the
        // nominal one misses.
        assert!(!nominal_vanishing_region(3, 0, 2) && sharp_vanishing_region(3, 0, 2));
        assert_eq!(binomial_identity_sum(3, 0, 2), BigInt::zero());
    }

    #[test]
    fn binomial_termwise_vanishing_regime() {
        // For d <= -(n+1) the second factor C(j+d+i, d+i) has a negative
        // lower index throughout, so every term vanishes.
        for n in 0..=6i64 {
            for i in 0..=n {
                for d in (-2 * n - 2)..=(-n - 1) {
                    let upper = n - i - d;
                    for j in 0..=upper {
                        assert!(
                            binomial(n - i, j + d).is_zero()
                                || binomial(j + d + i, d + i).is_zero(),
                            "termwise vanishing fails at n={n} i={i} d={d} j={j}"
                        );
                    }
                    assert_eq!(binomial_identity_sum(n, i, d), BigInt::zero());
                }
            }
        }
    }

    #[test]
    fn socle_q2_exact_support() {
        let rep = socle_counterexample(2);
        assert_eq!(rep.m, 3);
        assert!(!rep.contained);
        let support: Vec<(u64, u64)> = rep
            .support
            .iter()
            .map(|(a, b)| (a.try_into().unwrap(), b.try_into().unwrap()))
            .collect();
        let mut expect = vec![(3u64, 6u64), (4, 5), (5, 4), (6, 3)];
        expect.sort();
        let mut got = support;
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn socle_q3_not_contained_and_homogeneous() {
        let rep = socle_counterexample(3);
        assert_eq!(rep.m, 7);
        assert!(!rep.contained);
        let deg = BigUint::from(rep.m * (rep.q + 1));
        for (a, b) in &rep.support {
            assert_eq!(a + b, deg);
        }
    }

    #[test]
    fn steinberg_monomial_reports() {
        for q in [2u64, 3, 4, 5] {
            let r = steinberg_monomial_check(q);
            assert_eq!(r.basis_size, 4);
            assert!(r.degrees_homogeneous);
            assert!(r.weights_distinct);
            assert!(r.digits_match);
            assert!(r.weights_match_tensor);
        }
    }
}
