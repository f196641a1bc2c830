//! Character-level computations: Schubert weights, Chevalley divisors, the
//! Griffiths-Schmid cone, the Lang-map cocharacters delta_alpha, the
//! Delta^P weight filter, the primitivity condition and Steinberg digits.

use crate::root::{Character, RootDatum};
use crate::zip::ZipDatum;
use num_rational::Ratio;

pub type Rat = Ratio<i64>;

/// Chevalley multiplicities `alpha -> <chi, alpha^vee>` together with a
/// dominance flag (the Schubert section extends iff chi is dominant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorVector {
    pub multiplicities: Vec<i64>,
    pub dominant: bool,
}

/// `lambda_chi = chi - q w_{0,I}(sigma^{-1} chi)`.
pub fn schubert_weight(zd: &ZipDatum, chi: &Character) -> Character {
    let d = &zd.datum;
    let twisted = d.act_on_char(&zd.w0_i, &d.frobenius_inv_char(chi));
    chi.sub(&twisted.scale(d.q as i64))
}

pub fn chevalley_divisor(d: &RootDatum, chi: &Character) -> DivisorVector {
    let multiplicities: Vec<i64> =
        d.simple_coroots.iter().map(|av| d.pairing(chi, av)).collect();
    DivisorVector { multiplicities: multiplicities.clone(), dominant: multiplicities.iter().all(|&m| m >= 0) }
}

/// Griffiths-Schmid cone membership: `<lambda, alpha^vee> >= 0` on I and
/// `<lambda, beta^vee> <= 0` on the positive roots outside the Levi.
pub fn in_gs_cone(zd: &ZipDatum, lambda: &Character) -> bool {
    let d = &zd.datum;
    let on_levi = zd.levi.iter().all(|&i| d.pairing(lambda, &d.simple_coroots[i]) >= 0);
    if !on_levi {
        return false;
    }
    let levi_roots = d.levi_positive_roots(&zd.levi);
    (0..d.positive_roots.len())
        .filter(|b| !levi_roots.contains(b))
        .all(|b| d.pairing(lambda, &d.positive_coroots[b]) <= 0)
}

/// The equivalent criterion: `-w_{0,I} lambda` is G-dominant.
pub fn in_gs_cone_via_w0i(zd: &ZipDatum, lambda: &Character) -> bool {
    let d = &zd.datum;
    let m = d.act_on_char(&zd.w0_i, lambda).scale(-1);
    d.is_dominant(&m, &d.all_simple())
}

/// Solves `delta - q sigma(delta) = alpha^vee` in rational cocharacters:
/// `delta_alpha = (1 - q^o)^{-1} sum_k q^k sigma^k(alpha^vee)` with o the
/// order of sigma.
pub fn delta_alpha(zd: &ZipDatum, alpha_index: usize) -> Vec<Rat> {
    let d = &zd.datum;
    let o = d.frobenius_order as u32;
    let q = d.q as i64;
    let mut acc = vec![Ratio::from_integer(0i64); d.rank];
    let mut cur: Vec<i64> = d.simple_coroots[alpha_index].clone();
    let mut qk: i64 = 1;
    for _ in 0..o {
        for (a, &c) in acc.iter_mut().zip(&cur) {
            *a += Ratio::from_integer(qk * c);
        }
        cur = d.frobenius_cochar.apply(&cur);
        qk *= q;
    }
    let denom = Ratio::from_integer(1 - q.pow(o));
    acc.into_iter().map(|x| x / denom).collect()
}

pub fn rational_pairing(lambda: &Character, delta: &[Rat]) -> Rat {
    lambda
        .0
        .iter()
        .zip(delta)
        .map(|(&a, d)| Ratio::from_integer(a) * *d)
        .sum()
}

/// Applies the Lang map `delta -> delta - q sigma(delta)` to a rational
/// cocharacter; `delta_alpha` is its exact preimage of `alpha^vee`.
pub fn lang_map(zd: &ZipDatum, delta: &[Rat]) -> Vec<Rat> {
    let d = &zd.datum;
    let q = Ratio::from_integer(d.q as i64);
    let sigma: Vec<Rat> = {
        // Apply the integer matrix to rational coordinates.
        (0..d.rank)
            .map(|i| {
                (0..d.rank)
                    .map(|j| Ratio::from_integer(d.frobenius_cochar[(i, j)]) * delta[j])
                    .sum()
            })
            .collect()
    };
    delta.iter().zip(&sigma).map(|(x, s)| *x - q * *s).collect()
}

/// Membership in the filtered subspace: `<nu, delta_alpha> >= 0` for every
/// alpha in Delta^P.
pub fn weight_filter_member(zd: &ZipDatum, nu: &Character) -> bool {
    zd.delta_p.iter().all(|&a| {
        let da = delta_alpha(zd, a);
        rational_pairing(nu, &da) >= Ratio::from_integer(0)
    })
}

/// Condition (a) on chi_alpha: `0 < <chi, alpha^vee> < q` and chi
/// orthogonal to every other simple coroot.
pub fn condition_funda_a(zd: &ZipDatum, chi: &Character, alpha_index: usize) -> bool {
    let d = &zd.datum;
    let q = d.q as i64;
    let at = d.pairing(chi, &d.simple_coroots[alpha_index]);
    if !(0 < at && at < q) {
        return false;
    }
    (0..d.simple_roots.len())
        .filter(|&b| b != alpha_index)
        .all(|b| d.pairing(chi, &d.simple_coroots[b]) == 0)
}

/// The restricted region `X*_{1,K}(T)`: `0 <= <lambda, alpha^vee> < q` for
/// every alpha in K. `K = Delta` gives `X*_1(T)`.
pub fn in_restricted_region(d: &RootDatum, lambda: &Character, subset: &[usize]) -> bool {
    let q = d.q as i64;
    subset.iter().all(|&i| {
        let p = d.pairing(lambda, &d.simple_coroots[i]);
        0 <= p && p < q
    })
}

/// Checks that `lambda = sum_i q^i sigma^{-i}(digits[i])` with every digit
/// in the K-restricted region.
pub fn validate_steinberg_digits(
    d: &RootDatum,
    lambda: &Character,
    digits: &[Character],
    subset: &[usize],
) -> bool {
    if !digits.iter().all(|t| in_restricted_region(d, t, subset)) {
        return false;
    }
    let mut acc = Character::zero(d.rank);
    let mut qi: i64 = 1;
    for (i, t) in digits.iter().enumerate() {
        let mut tw = t.clone();
        for _ in 0..i {
            tw = d.frobenius_inv_char(&tw);
        }
        acc = acc.add(&tw.scale(qi));
        qi *= d.q as i64;
    }
    acc == *lambda
}

const STEINBERG_MAX_LEVELS: usize = 64;

/// Greedy base-q digit extraction: lifts the pairing digits to a character
/// congruent to lambda coordinate-wise mod q (minimal non-negative central
/// adjustment), then recurses on `sigma((lambda - digit)/q)`. Returns None
/// if no lift exists or the recursion fails to terminate (which can happen
/// for weights with negative central part).
pub fn steinberg_decompose(d: &RootDatum, lambda: &Character) -> Option<Vec<Character>> {
    let q = d.q as i64;
    let mut digits = Vec::new();
    let mut rest = lambda.clone();
    for _ in 0..STEINBERG_MAX_LEVELS {
        if rest.is_zero() {
            // Normalize: the empty digit list stands for lambda = 0 with
            // m = 0; represent as the single zero digit.
            if digits.is_empty() {
                digits.push(Character::zero(d.rank));
            }
            return Some(digits);
        }
        let digit = lift_digit(d, &rest)?;
        let diff = rest.sub(&digit);
        if diff.0.iter().any(|&c| c % q != 0) {
            return None;
        }
        let scaled = Character(diff.0.iter().map(|&c| c / q).collect());
        rest = d.frobenius_char(&scaled);
        digits.push(digit);
    }
    None
}

/// The unique lift congruent to lambda mod q both in every simple pairing
/// and coordinate-wise, with pairings in [0, q) and a minimal non-negative
/// central shift.
fn lift_digit(d: &RootDatum, lambda: &Character) -> Option<Character> {
    let q = d.q as i64;
    let rank = d.rank;
    let k = d.simple_roots.len();
    let rem = |x: i64| ((x % q) + q) % q;
    match d.family {
        crate::root::Family::SpSplit => {
            // Full-rank pairing lattice: lambda0_i - lambda0_{i+1} = d_i,
            // lambda0_n = d_beta, solved from the right.
            let mut v = vec![0i64; rank];
            v[rank - 1] = rem(d.pairing(lambda, &d.simple_coroots[k - 1]));
            for i in (0..rank - 1).rev() {
                v[i] = v[i + 1] + rem(d.pairing(lambda, &d.simple_coroots[i]));
            }
            Some(Character(v))
        }
        crate::root::Family::GlSplit | crate::root::Family::UInert => {
            // Partial sums of the digits, then shift by the central
            // direction (1,..,1) to match the last coordinate mod q.
            let mut v = vec![0i64; rank];
            for i in (0..rank.saturating_sub(1)).rev() {
                v[i] = v[i + 1] + rem(d.pairing(lambda, &d.simple_coroots[i]));
            }
            let t = rem(lambda.0[rank - 1] - v[rank - 1]);
            for x in v.iter_mut() {
                *x += t;
            }
            Some(Character(v))
        }
    }
}
