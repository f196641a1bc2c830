//! Zip datum derivation: Levi subset, the complementary parabolic data
//! J and Delta^P, the frame element z, and dimension bookkeeping.

use crate::root::{Character, RootDatum};
use crate::weyl::WeylElt;

/// Derived data of a zip datum on top of a root datum: the Levi subset I,
/// the subset J, Delta^P, the frame element z = sigma(w_{0,I}) w_0 and the
/// dimensions of T, B, P and G.
#[derive(Clone)]
pub struct ZipDatum {
    pub datum: RootDatum,
    pub levi: Vec<usize>,
    pub levi_j: Vec<usize>,
    pub delta_p: Vec<usize>,
    pub z: WeylElt,
    pub w0: WeylElt,
    pub w0_i: WeylElt,
    pub dim_t: usize,
    pub dim_b: usize,
    pub dim_p: usize,
    pub dim_g: usize,
}

/// The Levi subset attached to a cocharacter: the simple roots pairing to
/// zero with mu (the centralizer condition).
pub fn levi_from_cocharacter(d: &RootDatum, mu: &[i64]) -> Vec<usize> {
    assert_eq!(mu.len(), d.rank);
    (0..d.simple_roots.len())
        .filter(|&i| d.pairing(&Character(d.simple_roots[i].clone()), mu) == 0)
        .collect()
}

/// Cocharacter of the standard signature embedding: mu = (1^r, 0^s).
pub fn signature_cocharacter(d: &RootDatum) -> Vec<i64> {
    match d.family {
        crate::root::Family::SpSplit => vec![1; d.rank],
        _ => {
            let (r, _s) = d.signature.expect("signature required to derive mu");
            let mut mu = vec![0; d.rank];
            for m in mu.iter_mut().take(r) {
                *m = 1;
            }
            mu
        }
    }
}

pub fn build_zip_datum(d: &RootDatum, levi: &[usize]) -> ZipDatum {
    let mut levi: Vec<usize> = levi.to_vec();
    levi.sort_unstable();
    levi.dedup();
    let all = d.all_simple();
    let delta_p: Vec<usize> = all.iter().copied().filter(|i| !levi.contains(i)).collect();

    let w0 = d.longest_element(&all);
    let w0_i = d.longest_element(&levi);
    let z = d.multiply(&d.frobenius_elt(&w0_i), &w0);

    // J = { -w0 sigma(alpha) : alpha in I }, as indices into Delta.
    let levi_j: Vec<usize> = {
        let mut j: Vec<usize> = levi
            .iter()
            .map(|&i| {
                let img = w0.matrix.apply(&d.frobenius.apply(&d.simple_roots[i]));
                let neg: Vec<i64> = img.iter().map(|x| -x).collect();
                d.simple_roots
                    .iter()
                    .position(|a| *a == neg)
                    .expect("-w0 sigma(alpha) must be simple")
            })
            .collect();
        j.sort_unstable();
        j
    };

    // Frame identity: w0 w_{0,J} = sigma(w_{0,I}) w0, exactly.
    let w0_j = d.longest_element(&levi_j);
    let lhs = d.multiply(&w0, &w0_j);
    assert_eq!(lhs, z, "frame identity failed; construction bug");

    let phi_plus = d.num_positive_roots();
    let levi_plus = d.levi_positive_roots(&levi).len();
    let dim_t = d.rank;
    let dim_b = dim_t + phi_plus;
    let dim_p = dim_b + levi_plus;
    let dim_g = dim_t + 2 * phi_plus;

    ZipDatum { datum: d.clone(), levi, levi_j, delta_p, z, w0, w0_i, dim_t, dim_b, dim_p, dim_g }
}

impl ZipDatum {
    /// Longest element of `^I W`, indexing the open stratum.
    pub fn max_zip_element(&self) -> WeylElt {
        self.datum.multiply(&self.w0_i, &self.w0)
    }

    /// Codimension-one elements `w_{0,I} s_alpha w_0` for alpha in Delta^P,
    /// with duplicates under the sigma-action merged; each entry keeps the
    /// list of Delta^P indices producing it.
    pub fn codim_one_zip_elements(&self) -> Vec<(WeylElt, Vec<usize>)> {
        let d = &self.datum;
        let mut out: Vec<(WeylElt, Vec<usize>)> = Vec::new();
        for &a in &self.delta_p {
            let w = d.multiply(&d.multiply(&self.w0_i, &d.simple_reflection(a)), &self.w0);
            if let Some(entry) = out.iter_mut().find(|(e, _)| *e == w) {
                entry.1.push(a);
            } else {
                out.push((w, vec![a]));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::{Family, RootDatum};

    #[test]
    fn levi_from_mu_examples() {
        let gl3 = RootDatum::build_classical(Family::GlSplit, 3, 5, None).unwrap();
        assert_eq!(levi_from_cocharacter(&gl3, &[1, 1, 0]), vec![0]);
        assert_eq!(levi_from_cocharacter(&gl3, &[0, 0, 0]), gl3.all_simple());
        let sp2 = RootDatum::build_classical(Family::SpSplit, 2, 3, None).unwrap();
        assert_eq!(levi_from_cocharacter(&sp2, &[1, 1]), vec![0]);
    }

    #[test]
    fn frame_identity_all_subsets_small() {
        let data = vec![
            RootDatum::build_classical(Family::GlSplit, 3, 5, None).unwrap(),
            RootDatum::build_classical(Family::SpSplit, 3, 3, None).unwrap(),
            RootDatum::build_classical(Family::UInert, 3, 5, Some((2, 1))).unwrap(),
        ];
        for d in data {
            let k = d.simple_roots.len();
            for mask in 0u32..(1 << k) {
                let levi: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
                // build_zip_datum asserts the frame identity internally.
                let zd = build_zip_datum(&d, &levi);
                assert_eq!(zd.levi.len() + zd.delta_p.len(), k);
            }
        }
    }

    #[test]
    fn split_full_levi_gives_identity_frame() {
        let d = RootDatum::build_classical(Family::GlSplit, 4, 5, None).unwrap();
        let zd = build_zip_datum(&d, &d.all_simple());
        assert!(zd.z.is_identity());
    }

    #[test]
    fn siegel_z_length() {
        let d = RootDatum::build_classical(Family::SpSplit, 2, 3, None).unwrap();
        let zd = build_zip_datum(&d, &[0]);
        assert_eq!(zd.z.length(), zd.w0.length() - zd.w0_i.length());
        assert_eq!(zd.z.length(), 3);
        assert_eq!((zd.dim_t, zd.dim_b, zd.dim_p, zd.dim_g), (2, 6, 7, 10));
    }

    #[test]
    fn u_inert_21_z_is_block_swap_on_lattice() {
        // The group matrix (0 I_s; I_r 0) conjugates the torus so that the
        // induced lattice map is (a_1..a_n) -> (a_{r+1}..a_n, a_1..a_r).
        let d = RootDatum::build_classical(Family::UInert, 3, 5, Some((2, 1))).unwrap();
        let mu = signature_cocharacter(&d);
        let levi = levi_from_cocharacter(&d, &mu);
        assert_eq!(levi, vec![0]);
        let zd = build_zip_datum(&d, &levi);
        assert_eq!(zd.z.matrix.apply(&[10, 20, 30]), vec![30, 10, 20]);
    }
}
