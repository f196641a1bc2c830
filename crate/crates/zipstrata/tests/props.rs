//! Property tests for the algebraic invariants: linearity of the Schubert
//! weight, the cone criterion equivalence, Lang-map inversion, Steinberg
//! round trips and field axioms on random data.

use proptest::prelude::*;
use zipstrata::fq::FqCtx;
use zipstrata::fqmat::FqMatrix;
use zipstrata::realize::stream_rng;
use zipstrata::rep::{weight_support, weyl_dimension};
use zipstrata::root::{Character, Family, RootDatum};
use zipstrata::weight;
use zipstrata::zip::{build_zip_datum, levi_from_cocharacter, signature_cocharacter, ZipDatum};

fn unitary21() -> ZipDatum {
    let d = RootDatum::build_classical(Family::UInert, 3, 5, Some((2, 1))).unwrap();
    let mu = signature_cocharacter(&d);
    build_zip_datum(&d, &levi_from_cocharacter(&d, &mu))
}

fn siegel3() -> ZipDatum {
    let d = RootDatum::build_classical(Family::SpSplit, 3, 3, None).unwrap();
    build_zip_datum(&d, &[0, 1])
}

proptest! {
    #[test]
    fn schubert_weight_is_additive(a in proptest::collection::vec(-6i64..=6, 3),
                                   b in proptest::collection::vec(-6i64..=6, 3)) {
        for zd in [unitary21(), siegel3()] {
            let x = Character(a.clone());
            let y = Character(b.clone());
            let lhs = weight::schubert_weight(&zd, &x.add(&y));
            let rhs = weight::schubert_weight(&zd, &x).add(&weight::schubert_weight(&zd, &y));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gs_cone_criteria_agree(v in proptest::collection::vec(-5i64..=5, 3)) {
        for zd in [unitary21(), siegel3()] {
            let lam = Character(v.clone());
            prop_assert_eq!(
                weight::in_gs_cone(&zd, &lam),
                weight::in_gs_cone_via_w0i(&zd, &lam)
            );
        }
    }

    #[test]
    fn chevalley_nonnegative_on_dominant(mut v in proptest::collection::vec(0i64..=7, 3)) {
        v.sort_unstable_by(|a, b| b.cmp(a));
        let d = RootDatum::build_classical(Family::SpSplit, 3, 3, None).unwrap();
        let dv = weight::chevalley_divisor(&d, &Character(v.clone()));
        prop_assert!(dv.dominant);
        prop_assert!(dv.multiplicities.iter().all(|&m| m >= 0));
        // Zero divisor iff every pairing vanishes.
        let all_zero = dv.multiplicities.iter().all(|&m| m == 0);
        let orthogonal = (0..d.simple_roots.len())
            .all(|i| d.pairing(&Character(v.clone()), &d.simple_coroots[i]) == 0);
        prop_assert_eq!(all_zero, orthogonal);
    }

    #[test]
    fn lang_map_inverts_delta_alpha(idx in 0usize..2) {
        let zd = unitary21();
        let da = weight::delta_alpha(&zd, idx);
        let img = weight::lang_map(&zd, &da);
        let expect: Vec<weight::Rat> = zd.datum.simple_coroots[idx]
            .iter()
            .map(|&c| num_rational::Ratio::from_integer(c))
            .collect();
        prop_assert_eq!(img, expect);
    }

    #[test]
    fn steinberg_round_trip(mut v in proptest::collection::vec(0i64..=24, 3)) {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for d in [
            RootDatum::build_classical(Family::UInert, 3, 5, Some((2, 1))).unwrap(),
            RootDatum::build_classical(Family::SpSplit, 3, 5, None).unwrap(),
            RootDatum::build_classical(Family::GlSplit, 3, 2, None).unwrap(),
        ] {
            let lam = Character(v.clone());
            prop_assert!(d.is_dominant(&lam, &d.all_simple()));
            let digits = weight::steinberg_decompose(&d, &lam);
            prop_assert!(digits.is_some());
            prop_assert!(weight::validate_steinberg_digits(
                &d,
                &lam,
                &digits.unwrap(),
                &d.all_simple()
            ));
        }
    }

    #[test]
    fn vgs_holds_on_cone_points(v in proptest::collection::vec(-3i64..=3, 3)) {
        let zd = siegel3();
        let lam = Character(v.clone());
        if weight::in_gs_cone(&zd, &lam) {
            prop_assert_eq!(zipstrata::rep::vgs_full(&zd, &lam), Ok(true));
        }
    }

    #[test]
    fn freudenthal_total_is_weyl_dimension(mut v in proptest::collection::vec(-2i64..=4, 3)) {
        let zd = unitary21();
        let d = &zd.datum;
        // Force I-dominance by sorting the first block.
        v[..2].sort_unstable_by(|a, b| b.cmp(a));
        let lam = Character(v.clone());
        prop_assume!(d.is_dominant(&lam, &zd.levi));
        let support = weight_support(d, &zd.levi, &lam).unwrap();
        prop_assert_eq!(support.total(), weyl_dimension(d, &zd.levi, &lam).unwrap());
    }

    #[test]
    fn field_det_is_multiplicative(seed in 0u64..500) {
        let ctx = FqCtx::new(5, 2);
        let mut rng = stream_rng(seed, 0);
        let a = FqMatrix::random(&ctx, 3, &mut rng);
        let b = FqMatrix::random(&ctx, 3, &mut rng);
        prop_assert_eq!(a.mul(&ctx, &b).det(&ctx), ctx.mul(&a.det(&ctx), &b.det(&ctx)));
    }

    #[test]
    fn restricted_region_weights_stay_put(v in proptest::collection::vec(0i64..=2, 3)) {
        // A dominant weight with all pairings < q decomposes as itself.
        let d = RootDatum::build_classical(Family::SpSplit, 3, 5, None).unwrap();
        let mut w = v.clone();
        w.sort_unstable_by(|a, b| b.cmp(a));
        let lam = Character(w);
        prop_assume!(weight::in_restricted_region(&d, &lam, &d.all_simple()));
        let digits = weight::steinberg_decompose(&d, &lam).unwrap();
        prop_assert_eq!(digits, vec![lam]);
    }
}
