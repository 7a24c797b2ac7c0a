use std::sync::Arc;

use doublecover::census;
use doublecover::ci::{self, decompose_in_i2};
use doublecover::cover::{divisor_image, involution_conjugate, isotypic_basis, pullback_splits};
use doublecover::field::{Field, FieldElem};
use doublecover::gen::{enumerate_points, projective_point_count, GenConfig, Generator};
use doublecover::lift::{contact_in_ideal, family_member, lift_branch, verify_lift};
use doublecover::linalg::{rank, solve, Matrix};
use doublecover::poly::{exponents_of_degree, num_forms, Poly, RingCtx};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(2)),
        Just(Field::Prime(101)),
        Just(Field::Prime(32003)),
    ]
}

fn random(ring: &Arc<RingCtx>, deg: u32, seed: u64) -> Poly {
    Generator::new(GenConfig::with_seed(seed, ring.field()))
        .unwrap()
        .random_poly(ring, deg)
        .unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn degree_is_additive(f in field_strategy(), n in 1usize..=3, d1 in 0u32..=4, d2 in 0u32..=4, seed: u64) {
        let ring = RingCtx::projective(n, f).unwrap();
        let p = random(&ring, d1, seed);
        let q = random(&ring, d2, seed.wrapping_add(1));
        let pq = &p * &q;
        // over a field there are no zero divisors
        prop_assert_eq!(pq.degree(), Some(d1 + d2));
    }

    #[test]
    fn monomial_count_is_binomial(n in 0usize..=5, m in -2i64..=10) {
        let w = vec![1; n + 1];
        let count = exponents_of_degree(&w, m).len();
        let want = if m < 0 { 0 } else { binomial(n as u64 + m as u64, n as u64) as usize };
        prop_assert_eq!(count, want);
        prop_assert_eq!(num_forms(n, m), want);
    }

    #[test]
    fn canonical_serialization_round_trips(f in field_strategy(), n in 1usize..=3, d in 0u32..=4, seed: u64, div in 1i64..=5) {
        let ring = RingCtx::projective(n, f).unwrap();
        let mut p = random(&ring, d, seed);
        if f == Field::Rational {
            p = p.scale(&f.from_i64(div).inv().unwrap());
        }
        let s = p.canonical_string();
        let back = Poly::parse_json(&s).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.canonical_string(), s);
    }

    #[test]
    fn euler_relation(f in field_strategy(), n in 1usize..=3, d in 0u32..=5, seed: u64) {
        let ring = RingCtx::projective(n, f).unwrap();
        let p = random(&ring, d, seed);
        let mut acc = Poly::zero(&ring);
        for (i, dp) in p.jacobian().iter().enumerate() {
            acc = &acc + &(&Poly::var(&ring, i) * dp);
        }
        prop_assert_eq!(acc, p.scale(&f.from_i64(d as i64)));
    }

    #[test]
    fn solve_returns_solutions(f in field_strategy(), rows in 1usize..=6, cols in 1usize..=6, seed: u64, consistent: bool) {
        let mut g = Generator::new(GenConfig::with_seed(seed, f)).unwrap();
        let entries: Vec<FieldElem> = (0..rows * cols).map(|_| g.random_elem(f)).collect();
        let m = Matrix::from_entries(f, rows, cols, entries);
        let b: Vec<FieldElem> = if consistent {
            let x: Vec<FieldElem> = (0..cols).map(|_| g.random_elem(f)).collect();
            m.mul_vec(&x).unwrap()
        } else {
            (0..rows).map(|_| g.random_elem(f)).collect()
        };
        match solve(&m, &b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            None => {
                prop_assert!(!consistent);
                let aug = m.augment(&b).unwrap();
                prop_assert_eq!(rank(&aug), rank(&m) + 1);
            }
        }
    }

    #[test]
    fn excess_is_independent_of_k(d in 1u32..=8, k1 in 0u32..=12, k2 in 0u32..=12) {
        let (k1, k2) = (d + k1, d + k2);
        let a = census::severi_report(k1, d).unwrap().excess;
        let b = census::severi_report(k2, d).unwrap().excess;
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, census::severi_excess_formula(d));
    }

    #[test]
    fn fiber_is_cover_minus_image(n in 1usize..=4, d in 1u32..=5, dk in 0u32..=8) {
        let r = census::dim_report(n, d + dk, d).unwrap();
        prop_assert_eq!(r.fiber_dim, r.dim_VW - r.dim_W);
        prop_assert!(r.dim_Z >= -1);
    }

    #[test]
    fn isotypic_count(n in 1usize..=3, d in 1u32..=3, k in 0i64..=12) {
        let ring = RingCtx::projective(n, Field::Prime(101)).unwrap();
        let g2d = random(&ring, 2 * d, 0);
        let v = doublecover::cover::DoubleCover::new(n, d, g2d).unwrap();
        let (plus, minus) = isotypic_basis(&v, k);
        prop_assert_eq!(plus.len() + minus.len(), num_forms(n, k) + num_forms(n, k - d as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn i2_formula_matches_oracle(n in 1usize..=3, a in 1u32..=3, db in 0u32..=2, m in 0i64..=9, seed: u64) {
        let b = a + db;
        let mut g = Generator::new(GenConfig::with_seed(seed, Field::Prime(32003))).unwrap();
        let ci = g.random_smooth_ci(n, a, b).unwrap().ci;
        prop_assert_eq!(ci::i2_dim_formula(n, a, b, m), ci::i2_dim_oracle(&ci, m) as i64);
        prop_assert_eq!(
            ci::i2_dim_oracle(&ci, m) + ci::decomposition_kernel_dim(&ci, m),
            ci::decomposition_unknowns(&ci, m)
        );
    }

    #[test]
    fn decomposition_reconstructs(n in 1usize..=3, a in 0u32..=2, db in 0u32..=2, seed: u64) {
        let b = (a + db).max(1);
        let f = Field::Prime(32003);
        let mut g = Generator::new(GenConfig::with_seed(seed, f)).unwrap();
        let ci = g.random_smooth_ci(n, a, b).unwrap().ci;
        let ring = ci.ring().clone();
        let big_a = g.random_poly(&ring, 2 * (b - a)).unwrap();
        let big_b = g.random_poly(&ring, b - a).unwrap();
        let c = f.from_i64(1 + (seed % 7) as i64);
        let two = f.from_i64(2);
        let target = &(&(&big_a * &ci.f_a().pow(2)) + &(&(&big_b * ci.f_a()) * ci.f_b()).scale(&two)) + &ci.f_b().pow(2).scale(&c);
        let dec = decompose_in_i2(&target, &ci).unwrap();
        prop_assert_eq!(dec.reconstruct(&ci), target);
    }

    #[test]
    fn cover_image_properties(n in 1usize..=3, d in 1u32..=3, dk in 0u32..=2, seed: u64) {
        let k = d + dk;
        let mut g = Generator::new(GenConfig::with_seed(seed, Field::Prime(101))).unwrap();
        let s = g.random_cover_divisor(n, d, k).unwrap();
        let (img, zci) = divisor_image(&s.divisor).unwrap();
        prop_assert_eq!(&divisor_image(&involution_conjugate(&s.divisor)).unwrap().0, &img);
        prop_assert_eq!(involution_conjugate(&involution_conjugate(&s.divisor)), s.divisor.clone());
        prop_assert!(pullback_splits(&s.divisor).unwrap());
        let dec = decompose_in_i2(&img, &zci).unwrap();
        prop_assert!(dec.c.is_one());
        prop_assert_eq!(dec.reconstruct(&zci), img);
    }

    #[test]
    fn every_member_lifts(n in 1usize..=3, d in 1u32..=3, dk in 0u32..=2, seed: u64) {
        let k = d + dk;
        let mut g = Generator::new(GenConfig::with_seed(seed, Field::Prime(32003))).unwrap();
        let s = g.random_cover_divisor(n, d, k).unwrap();
        let (img, zci) = divisor_image(&s.divisor).unwrap();
        let fam = lift_branch(&img, &zci).unwrap();
        prop_assert_eq!(fam.dimension(), num_forms(n, 2 * d as i64 - k as i64));
        for _ in 0..50 {
            let a = fam.random_param(&mut g);
            let m = family_member(&fam, &a).unwrap();
            prop_assert!(verify_lift(&img, &zci, &m, &fam.scalar));
            prop_assert!(contact_in_ideal(&zci, &m).unwrap());
        }
    }

    #[test]
    fn zero_system_covers_projective_space(n in 1usize..=3, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let ring = RingCtx::projective(n, Field::Rational).unwrap();
        let pts = enumerate_points(&[], &ring, p).unwrap();
        prop_assert_eq!(pts.len() as u64, projective_point_count(n, p));
        prop_assert_eq!(projective_point_count(n, p), (p.pow(n as u32 + 1) - 1) / (p - 1));
    }

    #[test]
    fn rational_lift_identity(seed: u64) {
        // exact rational arithmetic end to end on a small plane instance
        let mut g = Generator::new(GenConfig::with_seed(seed, Field::Rational)).unwrap();
        let s = g.random_cover_divisor(2, 1, 2).unwrap();
        let (img, zci) = divisor_image(&s.divisor).unwrap();
        let fam = lift_branch(&img, &zci).unwrap();
        let a = fam.random_param(&mut g);
        let m = family_member(&fam, &a).unwrap();
        prop_assert!(verify_lift(&img, &zci, &m, &fam.scalar));
    }
}
