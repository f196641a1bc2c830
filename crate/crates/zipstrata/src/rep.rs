//! Weight supports of irreducible characteristic-zero Levi modules via
//! Freudenthal's recursion, the Weyl dimension formula, and the
//! Verschiebung admissibility test.

use crate::root::{Character, RootDatum};
use crate::zip::ZipDatum;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;

/// Weight multiset of a Levi module: character -> multiplicity. The total
/// multiplicity equals the Weyl dimension formula value.
#[derive(Clone, Debug)]
pub struct WeightMultiset {
    pub entries: HashMap<Character, BigUint>,
}

impl WeightMultiset {
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, c: &Character) -> BigUint {
        self.entries.get(c).cloned().unwrap_or_else(BigUint::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotDominant;

impl fmt::Display for NotDominant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight is not dominant for the given subsystem")
    }
}

impl std::error::Error for NotDominant {}

fn dot64(a: &[i64], b: &[i64]) -> i64 {
    crate::matrix::dot(a, b)
}

/// `2 rho` of the subsystem spanned by `subset` (sum of its positive roots).
fn two_rho(d: &RootDatum, subset: &[usize]) -> Vec<i64> {
    let mut acc = vec![0i64; d.rank];
    for b in d.levi_positive_roots(subset) {
        for (a, &x) in acc.iter_mut().zip(&d.positive_roots[b]) {
            *a += x;
        }
    }
    acc
}

/// Weyl dimension formula over the positive roots of the given subsystem,
/// exact in big integers.
pub fn weyl_dimension(d: &RootDatum, subset: &[usize], lambda: &Character) -> Result<BigUint, NotDominant> {
    if !d.is_dominant(lambda, subset) {
        return Err(NotDominant);
    }
    let rho2 = two_rho(d, subset);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for b in d.levi_positive_roots(subset) {
        let beta_v = &d.positive_coroots[b];
        let top = 2 * dot64(&lambda.0, beta_v) + dot64(&rho2, beta_v);
        let bot = dot64(&rho2, beta_v);
        num *= BigInt::from(top);
        den *= BigInt::from(bot);
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(r.is_zero() && !q.is_negative(), "Weyl dimension must be a positive integer");
    Ok(q.to_biguint().unwrap())
}

/// Reflect into the dominant chamber of the subsystem.
fn dominantize(d: &RootDatum, subset: &[usize], v: &[i64]) -> Vec<i64> {
    let mut cur = v.to_vec();
    loop {
        let mut moved = false;
        for &i in subset {
            let p = dot64(&cur, &d.simple_coroots[i]);
            if p < 0 {
                for (c, &a) in cur.iter_mut().zip(&d.simple_roots[i]) {
                    *c -= p * a;
                }
                moved = true;
            }
        }
        if !moved {
            return cur;
        }
    }
}

/// Full weight multiset of the irreducible characteristic-zero module of
/// the subsystem `subset` with highest weight `lambda`, by Freudenthal's
/// recursion on dominant weights followed by Weyl-orbit expansion.
pub fn weight_support(
    d: &RootDatum,
    subset: &[usize],
    lambda: &Character,
) -> Result<WeightMultiset, NotDominant> {
    if !d.is_dominant(lambda, subset) {
        return Err(NotDominant);
    }
    let simple: Vec<usize> = subset.to_vec();
    let pos: Vec<usize> = d.levi_positive_roots(&simple);
    let rho2 = two_rho(d, &simple);

    // Box bounds: coordinates of lambda - w_{0,I} lambda in the simple
    // roots of the subsystem.
    let w0i = d.longest_element(&simple);
    let lowest = d.act_on_char(&w0i, lambda);
    let span = lambda.sub(&lowest);
    let coords_full = d.simple_root_coordinates(&span.0);
    let bounds: Vec<i64> = simple.iter().map(|&i| coords_full[i]).collect();
    assert!(bounds.iter().all(|&b| b >= 0));

    // Enumerate candidate dominant weights lambda - sum c_a alpha_a.
    let mut dominants: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut c = vec![0i64; simple.len()];
    loop {
        let mut mu = lambda.0.clone();
        for (ci, &si) in c.iter().zip(&simple) {
            for (m, &a) in mu.iter_mut().zip(&d.simple_roots[si]) {
                *m -= ci * a;
            }
        }
        if simple.iter().all(|&i| dot64(&mu, &d.simple_coroots[i]) >= 0) {
            dominants.push((c.iter().sum(), mu));
        }
        // Odometer over the box.
        let mut pos_i = 0;
        while pos_i < c.len() {
            c[pos_i] += 1;
            if c[pos_i] <= bounds[pos_i] {
                break;
            }
            c[pos_i] = 0;
            pos_i += 1;
        }
        if pos_i == c.len() {
            break;
        }
    }
    dominants.sort();

    // norm4(v) = <2v + 2rho, 2v + 2rho>.
    let norm4 = |v: &[i64]| -> i64 {
        let w: Vec<i64> = v.iter().zip(&rho2).map(|(&x, &r)| 2 * x + r).collect();
        dot64(&w, &w)
    };
    let top_norm = norm4(&lambda.0);

    let mut mult: HashMap<Vec<i64>, BigUint> = HashMap::new();
    for (ht, mu) in &dominants {
        if *ht == 0 {
            mult.insert(mu.clone(), BigUint::one());
            continue;
        }
        let mut rhs = BigInt::zero();
        for &b in &pos {
            let beta = &d.positive_roots[b];
            let mut k = 1i64;
            loop {
                let nu: Vec<i64> =
                    mu.iter().zip(beta).map(|(&m, &x)| m + k * x).collect();
                // Outside the ball means multiplicity zero and all further
                // k only move farther out along beta.
                if norm4(&nu) > top_norm {
                    break;
                }
                let dom = dominantize(d, &simple, &nu);
                if let Some(m) = mult.get(&dom) {
                    let ip = dot64(&nu, beta);
                    rhs += BigInt::from(ip) * BigInt::from_biguint(num_bigint::Sign::Plus, m.clone());
                }
                k += 1;
            }
        }
        let denom = BigInt::from(top_norm - norm4(mu));
        assert!(denom.is_positive(), "Freudenthal denominator must be positive below the top");
        let numer = rhs * BigInt::from(8i64);
        let (qv, r) = num_integer::Integer::div_rem(&numer, &denom);
        assert!(r.is_zero(), "Freudenthal division must be exact");
        if !qv.is_zero() {
            mult.insert(mu.clone(), qv.to_biguint().expect("multiplicity must be non-negative"));
        }
    }

    // Expand dominant multiplicities along Weyl orbits.
    let mut entries: HashMap<Character, BigUint> = HashMap::new();
    for (mu, m) in &mult {
        let mut orbit = vec![mu.clone()];
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        seen.insert(mu.clone(), ());
        let mut idx = 0;
        while idx < orbit.len() {
            let cur = orbit[idx].clone();
            idx += 1;
            for &i in &simple {
                let p = dot64(&cur, &d.simple_coroots[i]);
                let img: Vec<i64> = cur
                    .iter()
                    .zip(&d.simple_roots[i])
                    .map(|(&x, &a)| x - p * a)
                    .collect();
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    orbit.push(img);
                }
            }
        }
        for w in orbit {
            entries.insert(Character(w), m.clone());
        }
    }
    Ok(WeightMultiset { entries })
}

/// Weight support of the Levi module `V_I(lambda)` of a zip datum.
pub fn levi_weight_support(zd: &ZipDatum, lambda: &Character) -> Result<WeightMultiset, NotDominant> {
    weight_support(&zd.datum, &zd.levi, lambda)
}

/// Verschiebung admissibility: every weight of `V_I(lambda)` pairs `<= 0`
/// with every coroot of Delta^P. When true the bundle admits a natural map
/// to its Frobenius twist.
pub fn vgs_full(zd: &ZipDatum, lambda: &Character) -> Result<bool, NotDominant> {
    let support = levi_weight_support(zd, lambda)?;
    let d = &zd.datum;
    Ok(support.entries.keys().all(|nu| {
        zd.delta_p.iter().all(|&a| d.pairing(nu, &d.simple_coroots[a]) <= 0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::Family;
    use crate::zip::{build_zip_datum, levi_from_cocharacter, signature_cocharacter};

    fn gl(n: usize) -> RootDatum {
        RootDatum::build_classical(Family::GlSplit, n, 5, None).unwrap()
    }

    #[test]
    fn gl2_standard_and_symmetric_squares() {
        let d = gl(2);
        let all = d.all_simple();
        let std = weight_support(&d, &all, &Character(vec![1, 0])).unwrap();
        assert_eq!(std.total(), BigUint::from(2u32));
        assert_eq!(std.multiplicity(&Character(vec![1, 0])), BigUint::one());
        assert_eq!(std.multiplicity(&Character(vec![0, 1])), BigUint::one());

        let sym2 = weight_support(&d, &all, &Character(vec![2, 0])).unwrap();
        for w in [vec![2, 0], vec![1, 1], vec![0, 2]] {
            assert_eq!(sym2.multiplicity(&Character(w)), BigUint::one());
        }
        assert_eq!(sym2.total(), BigUint::from(3u32));

        let sym3 = weight_support(&d, &all, &Character(vec![3, 0])).unwrap();
        assert_eq!(sym3.total(), weyl_dimension(&d, &all, &Character(vec![3, 0])).unwrap());
        assert_eq!(sym3.total(), BigUint::from(4u32));
    }

    #[test]
    fn torus_levi_is_single_weight() {
        let d = gl(3);
        let lam = Character(vec![4, -1, 2]);
        let s = weight_support(&d, &[], &lam).unwrap();
        assert_eq!(s.total(), BigUint::one());
        assert_eq!(s.multiplicity(&lam), BigUint::one());
    }

    #[test]
    fn adjoint_gl3_has_interior_multiplicity() {
        // Highest weight (1,0,-1): dimension 8, zero weight twice.
        let d = gl(3);
        let all = d.all_simple();
        let adj = weight_support(&d, &all, &Character(vec![1, 0, -1])).unwrap();
        assert_eq!(adj.total(), BigUint::from(8u32));
        assert_eq!(adj.multiplicity(&Character(vec![0, 0, 0])), BigUint::from(2u32));
    }

    #[test]
    fn weyl_dimensions() {
        let d3 = gl(3);
        assert_eq!(
            weyl_dimension(&d3, &d3.all_simple(), &Character(vec![1, 0, 0])).unwrap(),
            BigUint::from(3u32)
        );
        let d2 = gl(2);
        assert_eq!(
            weyl_dimension(&d2, &d2.all_simple(), &Character(vec![1, 0])).unwrap(),
            BigUint::from(2u32)
        );
        assert!(weyl_dimension(&d2, &d2.all_simple(), &Character(vec![0, 1])).is_err());
    }

    #[test]
    fn support_totals_match_dimension_sp() {
        let d = RootDatum::build_classical(Family::SpSplit, 3, 3, None).unwrap();
        let all = d.all_simple();
        for lam in [vec![1, 0, 0], vec![1, 1, 0], vec![2, 1, 0], vec![1, 1, 1]] {
            let lam = Character(lam);
            let s = weight_support(&d, &all, &lam).unwrap();
            assert_eq!(s.total(), weyl_dimension(&d, &all, &lam).unwrap(), "{lam:?}");
        }
    }

    #[test]
    fn vgs_examples() {
        let d = RootDatum::build_classical(Family::SpSplit, 2, 3, None).unwrap();
        let zd = build_zip_datum(&d, &levi_from_cocharacter(&d, &signature_cocharacter(&d)));
        assert_eq!(vgs_full(&zd, &Character(vec![0, 0])), Ok(true));
        // e_1 is G-dominant but not in the cone; the Levi support contains
        // (0,1) which pairs positively with the long coroot.
        assert_eq!(vgs_full(&zd, &Character(vec![1, 0])), Ok(false));
        assert!(vgs_full(&zd, &Character(vec![0, 1])).is_err());
    }
}
