use doublecover::field::Field;
use doublecover::gen::{
    canned, random_poly, smoothness_sample_system, GenConfig, Generator, SmoothnessVerdict, CANNED_NAMES,
};
use doublecover::lift::lift_branch;
use doublecover::poly::RingCtx;

// Fixed vectors: changing the PRNG or the draw order breaks these on purpose.
#[test]
fn seeded_vectors_are_stable() {
    let f = Field::Prime(101);
    let r = RingCtx::projective(2, f).unwrap();
    assert_eq!(
        random_poly(&r, 2, &GenConfig::with_seed(0, f)).unwrap().to_string(),
        "71*x0^2 + 47*x0*x1 + 70*x0*x2 + 6*x1^2 + 55*x1*x2 + 83*x2^2"
    );
    let q = RingCtx::projective(2, Field::Rational).unwrap();
    assert_eq!(
        random_poly(&q, 2, &GenConfig::with_seed(0, Field::Rational)).unwrap().to_string(),
        "4*x0^2 + 4*x0*x1 - 8*x0*x2 + x1^2 + 6*x1*x2 + 5*x2^2"
    );
}

#[test]
fn smooth_ci_survives_independent_resample() {
    for seed in 0..12u64 {
        let mut g = Generator::new(GenConfig::with_seed(seed, Field::Prime(101))).unwrap();
        for (n, a, b) in [(2, 1, 2), (2, 2, 3), (3, 1, 2), (3, 2, 2)] {
            let s = g.random_smooth_ci(n, a, b).unwrap();
            assert!(s.verdict.is_smooth_evidence());
            let again = smoothness_sample_system(
                &[s.lift.f_a().clone(), s.lift.f_b().clone()],
                13,
                64,
                seed.wrapping_mul(7919) + 1,
            )
            .unwrap();
            assert!(!again.is_singular(), "seed {seed} ({n},{a},{b}): {again:?}");
        }
    }
}

#[test]
fn forced_pair_rejected() {
    let r = RingCtx::projective(2, Field::Rational).unwrap();
    let x0 = doublecover::poly::Poly::var(&r, 0);
    let x1 = doublecover::poly::Poly::var(&r, 1);
    assert!(doublecover::ci::CompleteIntersection::new(x0.clone(), &x0 * &x1).is_err());
}

#[test]
fn empty_locus_convention() {
    let mut g = Generator::new(GenConfig::default()).unwrap();
    let s = g.random_smooth_ci(2, 0, 3).unwrap();
    assert!(s.ci.f_a().degree() == Some(0));
    assert!(matches!(s.verdict, SmoothnessVerdict::NoRationalPointFound { .. }));
}

#[test]
fn canned_cover_bundles_lift() {
    for name in CANNED_NAMES.iter().filter(|n| !n.starts_with("totaro")) {
        let b = canned(name).unwrap();
        let ci = doublecover::ci::CompleteIntersection::new(
            b.get("fkd").unwrap().clone(),
            b.get("fk").unwrap().clone(),
        )
        .unwrap();
        let fam = lift_branch(b.get("g").unwrap(), &ci).unwrap();
        let rec = doublecover::lift::recover_branch(&fam, b.get("g2d").unwrap())
            .unwrap()
            .unwrap();
        assert!(rec.matches, "{name}");
        assert_eq!(Some(fam.k), b.k, "{name}");
    }
}
