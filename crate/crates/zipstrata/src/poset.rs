//! Stratification posets: the E-orbit poset on `^I W` with the twisted
//! closure order, and the flag-stratum poset on `W` with the Bruhat order.

use crate::weyl::{CosetSide, EnumLimitExceeded, WeylElt};
use crate::zip::ZipDatum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosetKind {
    Zip,
    Flag,
}

/// Graded poset of strata. `leq[i][j]` means stratum i lies in the closure
/// of stratum j. Elements are sorted by (length, word).
#[derive(Clone)]
pub struct StratumPoset {
    pub kind: PosetKind,
    pub elements: Vec<WeylElt>,
    pub dims: Vec<usize>,
    pub codims: Vec<usize>,
    pub leq: Vec<Vec<bool>>,
}

/// E-orbit closure order on `^I W`: w' <= w iff some w1 in W_I has
/// w1 w' sigma(w1)^{-1} <=_Bruhat w. Quantified by brute force over W_I.
/// (Twisting the lower element is the only variant compatible with the
/// length grading and antisymmetry.)
pub fn zip_orbit_poset(zd: &ZipDatum, limit: Option<usize>) -> Result<StratumPoset, EnumLimitExceeded> {
    let d = &zd.datum;
    let table = d.weyl_table(limit)?;
    let elements: Vec<WeylElt> = table
        .elements
        .iter()
        .filter(|w| d.is_min_coset_rep(w, &zd.levi, CosetSide::Left))
        .cloned()
        .collect();
    let w_i = d.weyl_enumerate(Some(&zd.levi), limit)?;
    // Twisted conjugates w1 w sigma(w1)^{-1} of each element, as table
    // indices.
    let twists: Vec<Vec<usize>> = elements
        .par_iter()
        .map(|w| {
            w_i.iter()
                .map(|w1| {
                    let m = w1
                        .matrix
                        .mul(&w.matrix)
                        .mul(&d.frobenius_elt(w1).matrix.inverse_unimodular());
                    table.index_of_matrix(&m).expect("twist stays in W")
                })
                .collect()
        })
        .collect();
    let hi_idx: Vec<usize> = elements.iter().map(|w| table.index_of(w)).collect();
    let leq: Vec<Vec<bool>> = twists
        .par_iter()
        .map(|lo_twists| {
            hi_idx
                .iter()
                .map(|&hi| lo_twists.iter().any(|&t| table.leq(t, hi)))
                .collect()
        })
        .collect();
    let top = zd.w0.length() - zd.w0_i.length();
    let dims: Vec<usize> = elements.iter().map(|w| w.length() + zd.dim_p).collect();
    let codims: Vec<usize> = elements.iter().map(|w| top - w.length()).collect();
    Ok(StratumPoset { kind: PosetKind::Zip, elements, dims, codims, leq })
}

/// Flag-stratum poset: all of W under the Bruhat order.
pub fn flag_orbit_poset(zd: &ZipDatum, limit: Option<usize>) -> Result<StratumPoset, EnumLimitExceeded> {
    let d = &zd.datum;
    let table = d.weyl_table(limit)?;
    let elements = table.elements.clone();
    let n = elements.len();
    let leq: Vec<Vec<bool>> =
        (0..n).map(|u| (0..n).map(|v| table.leq(u, v)).collect()).collect();
    let top = zd.w0.length();
    let dims: Vec<usize> = elements.iter().map(|w| w.length() + zd.dim_b).collect();
    let codims: Vec<usize> = elements.iter().map(|w| top - w.length()).collect();
    Ok(StratumPoset { kind: PosetKind::Flag, elements, dims, codims, leq })
}

impl StratumPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &WeylElt) -> Option<usize> {
        self.elements.iter().position(|e| e == w)
    }

    /// Indices of maximal elements.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.leq[i][j]))
            .collect()
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            if !self.leq[i][i] {
                return false;
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return false;
                }
                for k in 0..n {
                    if self.leq[i][j] && self.leq[j][k] && !self.leq[i][k] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Covering relation (Hasse edges): pairs [i, j] with i strictly below
    /// j and nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let direct = !(0..n)
                    .any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if direct {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let elements: Vec<_> = (0..self.len())
            .map(|i| {
                serde_json::json!({
                    "word": self.elements[i].word,
                    "length": self.elements[i].length(),
                    "dim": self.dims[i],
                    "codim": self.codims[i],
                })
            })
            .collect();
        let covers: Vec<Vec<usize>> =
            self.covers().into_iter().map(|(i, j)| vec![i, j]).collect();
        serde_json::json!({
            "kind": self.kind,
            "elements": elements,
            "covers": covers,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph strata {{").unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        for (i, w) in self.elements.iter().enumerate() {
            writeln!(
                s,
                "  n{} [label=\"{:?} (l={}, dim={}, codim={})\"];",
                i,
                w,
                w.length(),
                self.dims[i],
                self.codims[i]
            )
            .unwrap();
        }
        for (i, j) in self.covers() {
            writeln!(s, "  n{i} -> n{j};").unwrap();
        }
        writeln!(s, "}}").unwrap();
        s
    }

    /// Rebuild a poset from the JSON export, reconstructing `leq` as the
    /// reflexive-transitive closure of the covering relation. Weyl elements
    /// are rebuilt from their words against the given zip datum.
    pub fn from_json(zd: &ZipDatum, v: &serde_json::Value) -> Option<StratumPoset> {
        let kind = match v.get("kind")?.as_str()? {
            "zip" => PosetKind::Zip,
            "flag" => PosetKind::Flag,
            _ => return None,
        };
        let d = &zd.datum;
        let elems = v.get("elements")?.as_array()?;
        let mut elements = Vec::new();
        let mut dims = Vec::new();
        let mut codims = Vec::new();
        for e in elems {
            let word: Vec<usize> = e
                .get("word")?
                .as_array()?
                .iter()
                .map(|x| x.as_u64().unwrap() as usize)
                .collect();
            let mut m = crate::matrix::IntMat::identity(d.rank);
            for &i in &word {
                m = m.mul(&d.simple_reflection_matrix(i));
            }
            elements.push(d.element_from_matrix(m));
            dims.push(e.get("dim")?.as_u64()? as usize);
            codims.push(e.get("codim")?.as_u64()? as usize);
        }
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for c in v.get("covers")?.as_array()? {
            let pair = c.as_array()?;
            if pair.len() != 2 {
                return None;
            }
            let i = pair[0].as_u64()? as usize;
            let j = pair[1].as_u64()? as usize;
            if i >= n || j >= n {
                return None;
            }
            leq[i][j] = true;
        }
        // Transitive closure.
        for k in 0..n {
            for i in 0..n {
                if !leq[i][k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Some(StratumPoset { kind, elements, dims, codims, leq })
    }

    pub fn equals(&self, other: &StratumPoset) -> bool {
        self.kind == other.kind
            && self.elements == other.elements
            && self.dims == other.dims
            && self.codims == other.codims
            && self.leq == other.leq
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::{Family, RootDatum};
    use crate::zip::build_zip_datum;

    fn siegel_sp2() -> ZipDatum {
        let d = RootDatum::build_classical(Family::SpSplit, 2, 3, None).unwrap();
        build_zip_datum(&d, &[0])
    }

    #[test]
    fn siegel_sp2_zip_poset_is_a_chain() {
        let zd = siegel_sp2();
        let p = zip_orbit_poset(&zd, None).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.is_partial_order());
        // Linearly ordered with dims dim_P .. dim_P + 3.
        assert_eq!(p.dims, vec![7, 8, 9, 10]);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p.leq[i][j], i <= j);
            }
        }
        assert_eq!(p.maximal(), vec![3]);
        assert_eq!(p.elements[3], zd.max_zip_element());
        assert_eq!(p.covers().len(), 3);
    }

    #[test]
    fn trivial_levi_reduces_to_bruhat() {
        // I = empty and sigma = id force w1 = identity in the twisted order.
        let d = RootDatum::build_classical(Family::GlSplit, 3, 5, None).unwrap();
        let zd = build_zip_datum(&d, &[]);
        let p = zip_orbit_poset(&zd, None).unwrap();
        assert_eq!(p.len(), 6);
        let f = flag_orbit_poset(&zd, None).unwrap();
        assert_eq!(p.elements, f.elements);
        assert_eq!(p.leq, f.leq);
    }

    #[test]
    fn flag_poset_shapes() {
        let d2 = RootDatum::build_classical(Family::GlSplit, 2, 5, None).unwrap();
        let zd2 = build_zip_datum(&d2, &[]);
        let f2 = flag_orbit_poset(&zd2, None).unwrap();
        assert_eq!(f2.len(), 2);
        assert_eq!(f2.covers(), vec![(0, 1)]);

        let zd = siegel_sp2();
        let f = flag_orbit_poset(&zd, None).unwrap();
        assert_eq!(f.len(), 8);
        assert_eq!(f.codims.iter().filter(|&&c| c == 1).count(), 2);
        // Top dimension equals dim_G.
        assert_eq!(*f.dims.iter().max().unwrap(), zd.dim_g);
        assert!(f.is_partial_order());
    }

    #[test]
    fn codim_one_zip_elements_land_in_iw() {
        let zd = siegel_sp2();
        let p = zip_orbit_poset(&zd, None).unwrap();
        let top = zd.w0.length() - zd.w0_i.length();
        let cod1 = zd.codim_one_zip_elements();
        assert_eq!(cod1.len(), 1);
        for (w, _) in cod1 {
            assert_eq!(w.length(), top - 1);
            assert!(p.index_of(&w).is_some());
        }
    }

    #[test]
    fn export_round_trip_and_single_node() {
        let zd = siegel_sp2();
        let p = zip_orbit_poset(&zd, None).unwrap();
        let json = p.to_json();
        let back = StratumPoset::from_json(&zd, &json).unwrap();
        assert!(p.equals(&back));
        let dot = p.to_dot();
        assert_eq!(dot.matches("->").count(), 3);
        assert_eq!(dot.matches("label=").count(), 4);

        // One-element poset: full Levi on a split family.
        let d = RootDatum::build_classical(Family::GlSplit, 2, 5, None).unwrap();
        let zfull = build_zip_datum(&d, &d.all_simple());
        let p1 = zip_orbit_poset(&zfull, None).unwrap();
        assert_eq!(p1.len(), 1);
        assert!(p1.covers().is_empty());
    }
}
