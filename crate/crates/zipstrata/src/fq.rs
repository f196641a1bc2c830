//! Exact arithmetic in F_{p^k} for k <= 4, with deterministic moduli.
//!
//! The modulus for each (p, k) is the lexicographically least monic
//! irreducible polynomial of degree k over F_p (ordering the coefficient
//! tuple from the leading side down), so every run of every suite sees the
//! same field tables.

use rand::Rng;
use std::fmt;

pub const MAX_EXT_DEGREE: usize = 4;

/// Element of F_{p^k}: residues of a degree < k polynomial over F_p.
/// The context `FqCtx` carries (p, k, modulus); elements are plain data.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FqElem {
    pub coeffs: [u64; MAX_EXT_DEGREE],
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq{:?}", self.coeffs)
    }
}

/// Field context for F_{p^k}.
#[derive(Clone, PartialEq, Eq)]
pub struct FqCtx {
    pub p: u64,
    pub k: usize,
    /// Monic modulus `x^k + modulus[k-1] x^{k-1} + ... + modulus[0]`.
    pub modulus: [u64; MAX_EXT_DEGREE],
}

impl fmt::Debug for FqCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.k)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial helpers over F_p on small coefficient slices.
fn poly_eval(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// Remainder of `a` (dense, little-endian) modulo the monic poly `m` of
/// degree d (coefficients of x^0..x^{d-1}; leading 1 implicit).
fn poly_rem(a: &mut Vec<u64>, m: &[u64], d: usize, p: u64) {
    while a.len() > d {
        let lead = *a.last().unwrap() % p;
        let deg = a.len() - 1;
        a.pop();
        if lead == 0 {
            continue;
        }
        for (i, &mc) in m.iter().enumerate().take(d) {
            let idx = deg - d + i;
            let sub = (lead * mc) % p;
            a[idx] = (a[idx] + p * p - sub) % p;
        }
    }
    while a.len() < d {
        a.push(0);
    }
}

fn poly_is_irreducible(m: &[u64], d: usize, p: u64) -> bool {
    // Trial division by all monic polynomials of degree 1..=d/2.
    if d == 1 {
        return true;
    }
    for deg in 1..=(d / 2) {
        let count = p.pow(deg as u32);
        for idx in 0..count {
            // Candidate divisor: x^deg + c_{deg-1} x^{deg-1} + ... + c_0.
            let mut c = vec![0u64; deg];
            let mut t = idx;
            for ci in c.iter_mut() {
                *ci = t % p;
                t /= p;
            }
            // Compute m mod candidate; m has leading coefficient 1 at x^d.
            let mut full: Vec<u64> = m[..d].to_vec();
            full.push(1);
            poly_rem(&mut full, &c, deg, p);
            if full.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl FqCtx {
    /// Field context for F_{p^k}. Panics unless p is prime and 1 <= k <= 4.
    pub fn new(p: u64, k: usize) -> FqCtx {
        assert!(is_prime(p), "p = {p} must be prime");
        assert!((1..=MAX_EXT_DEGREE).contains(&k), "extension degree must be 1..=4");
        assert!(p < (1u64 << 20), "prime too large for this arithmetic");
        let mut modulus = [0u64; MAX_EXT_DEGREE];
        if k == 1 {
            // F_p itself: modulus x (never used in reduction).
        } else {
            // Lexicographic search ordered by (a_{k-1}, ..., a_0).
            let total = p.pow(k as u32);
            let mut found = false;
            'outer: for idx in 0..total {
                let mut coeffs = vec![0u64; k];
                let mut t = idx;
                for j in (0..k).rev() {
                    coeffs[j] = t % p;
                    t /= p;
                }
                // Quick root check prunes most candidates.
                let mut full = coeffs.clone();
                full.push(1);
                if (0..p).any(|x| poly_eval(&full, x, p) == 0) {
                    continue;
                }
                if poly_is_irreducible(&coeffs, k, p) {
                    modulus[..k].copy_from_slice(&coeffs);
                    found = true;
                    break 'outer;
                }
            }
            assert!(found, "no irreducible modulus found");
        }
        FqCtx { p, k, modulus }
    }

    /// Context for F_q with q = p^k.
    pub fn for_order(q: u64) -> FqCtx {
        let (p, k) = crate::root::prime_power(q).expect("field order must be a prime power");
        FqCtx::new(p, k as usize)
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn zero(&self) -> FqElem {
        FqElem { coeffs: [0; MAX_EXT_DEGREE] }
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, x: u64) -> FqElem {
        let mut c = [0; MAX_EXT_DEGREE];
        c[0] = x % self.p;
        FqElem { coeffs: c }
    }

    pub fn from_i64(&self, x: i64) -> FqElem {
        let p = self.p as i64;
        self.from_u64(((x % p) + p) as u64)
    }

    /// The class of the generator t of `F_p[t]/(modulus)`; zero when k = 1.
    pub fn gen_t(&self) -> FqElem {
        let mut c = [0; MAX_EXT_DEGREE];
        if self.k > 1 {
            c[1] = 1;
        }
        FqElem { coeffs: c }
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.k {
            c[i] = (a.coeffs[i] + b.coeffs[i]) % self.p;
        }
        FqElem { coeffs: c }
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.k {
            c[i] = (self.p - a.coeffs[i] % self.p) % self.p;
        }
        FqElem { coeffs: c }
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let k = self.k;
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.coeffs[i] * b.coeffs[j]) % self.p;
            }
        }
        poly_rem(&mut prod, &self.modulus, k, self.p);
        let mut c = [0; MAX_EXT_DEGREE];
        c[..k].copy_from_slice(&prod[..k]);
        FqElem { coeffs: c }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        // x^(q-2) by square and multiply; q <= p^4 stays small.
        Some(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> Option<FqElem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// x -> x^q, a field automorphism fixing F_q pointwise.
    pub fn frobenius_pow(&self, a: &FqElem, q: u64) -> FqElem {
        self.pow(a, q)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> FqElem {
        let mut c = [0; MAX_EXT_DEGREE];
        for ci in c.iter_mut().take(self.k) {
            *ci = rng.gen_range(0..self.p);
        }
        FqElem { coeffs: c }
    }

    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> FqElem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// A fixed multiplicative generator: the least element (in coefficient
    /// order) of full multiplicative order.
    pub fn multiplicative_generator(&self) -> FqElem {
        let q = self.order();
        let group = q - 1;
        let mut divisors = Vec::new();
        for d in 1..=group {
            if group.is_multiple_of(d) {
                divisors.push(d);
            }
        }
        'cand: for idx in 1..q {
            let mut c = [0u64; MAX_EXT_DEGREE];
            let mut t = idx;
            for ci in c.iter_mut().take(self.k) {
                *ci = t % self.p;
                t /= self.p;
            }
            let x = FqElem { coeffs: c };
            for &d in &divisors {
                if d < group && self.pow(&x, d) == self.one() {
                    continue 'cand;
                }
            }
            return x;
        }
        unreachable!("a finite field has a multiplicative generator")
    }

    /// Discrete log base `g`; brute force, fine for the small fields here.
    pub fn dlog(&self, g: &FqElem, x: &FqElem) -> Option<u64> {
        let mut acc = self.one();
        for e in 0..self.order() - 1 {
            if acc == *x {
                return Some(e);
            }
            acc = self.mul(&acc, g);
        }
        None
    }
}
