mod common;

use common::{q, random_increments};
use hypclass::areas::{area_formula, bounds_chain, hat_area_sum, second_derivative_term};
use hypclass::oracles::{
    area_quadrature_oracle, deformed_strip_oracle, hat_at_fd_oracle, region_sum_oracle,
};
use hypclass::scalar::with_precision;
use hypclass::{
    area_closed, enumerate_regions, hat_area, hat_at_second_derivative, BigRational, HpFloat,
    PrimeCoding, RegionType, Scalar, Side,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(1000) })]

    #[test]
    fn closed_form_matches_quadrature(k0 in 4u64..300, frac in 0.01f64..0.99, pick in any::<prop::sample::Index>()) {
        let set = enumerate_regions(k0).unwrap();
        let r = &set.entries[pick.index(set.len())];
        let k = k0 as f64 + frac;
        let closed = area_closed(r.kind, r.index.n, r.index.n_prime, &k).unwrap().area;
        let quad = area_quadrature_oracle(r.kind, r.index.n, r.index.n_prime, k).unwrap();
        prop_assert!((closed - quad).abs() <= 1e-8 * quad.abs().max(1e-3), "{} vs {}", closed, quad);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(60) })]

    #[test]
    fn strip_is_the_sum_of_deformed_areas(seed in any::<u64>(), k0 in 4u64..120, frac in 0.05f64..0.95) {
        let c = random_increments(130, seed).convert::<f64>().unwrap();
        let k = k0 as f64 + frac;
        let sum = hat_area_sum(&c, k0, &k).unwrap() - hat_area_sum(&c, k0, &(k0 as f64)).unwrap();
        let strip = deformed_strip_oracle(&c, k0 as f64, k).unwrap();
        prop_assert!((sum - strip).abs() <= 1e-7 * strip, "{} vs {}", sum, strip);
    }

    #[test]
    fn second_derivative_matches_finite_differences(seed in any::<u64>(), alpha in 8u64..30, frac in 0.1f64..0.9, k0s in 0u64..100) {
        let alpha = 2 * alpha;
        let k0 = 4 + k0s % (alpha / 2 - 4);
        let c = random_increments(alpha as usize, seed);
        with_precision(128, || {
            let ch: PrimeCoding<HpFloat> = c.convert().unwrap();
            let k = HpFloat::from_f64(k0 as f64 + frac);
            let formula = hat_at_second_derivative(&ch, alpha, &k, Side::Right).unwrap();
            let fd = hat_at_fd_oracle(&ch, alpha, &k, &HpFloat::from_ratio(1, 10_000)).unwrap();
            prop_assert!(formula.rel_diff(&fd) <= 1e-5, "{} vs {}", formula, fd);
            Ok(())
        })?;
    }
}

#[test]
fn derivatives_match_finite_differences() {
    with_precision(128, || {
        let h = HpFloat::from_ratio(1, 100_000);
        for k0 in [4u64, 9, 17, 30, 63, 150] {
            for r in enumerate_regions(k0).unwrap().iter() {
                let (n, m) = (r.index.n, r.index.n_prime);
                let k = HpFloat::from_ratio(4 * k0 as i64 + 1, 4);
                let f = |t: &HpFloat| area_formula(r.kind, n, m, t).area;
                let a = area_formula(r.kind, n, m, &k);
                let d1 = (f(&(k.clone() + h.clone())) - f(&(k.clone() - h.clone()))) / (HpFloat::from_i64(2) * h.clone());
                let d2 = (f(&(k.clone() + h.clone())) - HpFloat::from_i64(2) * f(&k) + f(&(k.clone() - h.clone())))
                    / (h.clone() * h.clone());
                let floor = 1.0 / k.to_f64();
                assert!((d1 - a.d1.clone()).to_f64().abs() <= 1e-6 * a.d1.to_f64().abs().max(floor));
                assert!((d2 - a.d2.clone()).to_f64().abs() <= 1e-5 * a.d2.to_f64().abs().max(floor));
                let (num, den) = r.kind.d2_coefficient();
                assert!(a.d2.rel_diff(&(HpFloat::from_ratio(num, den) / k.clone())) < 1e-30 || num == 0);
            }
        }
    });
}

#[test]
fn type_three_area_is_linear() {
    for k0 in [20u64, 57, 99] {
        for (n, m) in enumerate_regions(k0).unwrap().of_type(RegionType::T3) {
            let a = |t: f64| area_closed(RegionType::T3, n, m, &(k0 as f64 + t)).unwrap().area;
            let (x, y, z) = (a(0.25), a(0.5), a(0.75));
            assert!((x - 2.0 * y + z).abs() < 1e-12);
        }
    }
}

#[test]
fn degenerate_areas_vanish() {
    assert!(area_closed(RegionType::T2, 2, 9, &18.0).unwrap().area.abs() < 1e-12);
    assert!(area_closed(RegionType::T7, 2, 2, &4.0).unwrap().area.abs() < 1e-12);
    assert!(area_quadrature_oracle(RegionType::T2, 2, 9, 18.0).unwrap().abs() < 1e-12);
    let a = area_closed(RegionType::T2, 2, 9, &18.5).unwrap().area;
    assert!((a - 0.006_881_022_480_117_19).abs() < 1e-14);
    assert!(area_closed(RegionType::T3, 2, 9, &18.5).is_err());
}

#[test]
fn deformed_area_scaling() {
    let id = PrimeCoding::<f64>::identity(30);
    let doubled = PrimeCoding::new(vec![2.0; 31]).unwrap();
    let c = random_increments(30, 1).convert::<f64>().unwrap();
    let twice = c.scaled(&2.0).unwrap();
    for r in enumerate_regions(18).unwrap().iter() {
        let (n, m) = (r.index.n, r.index.n_prime);
        let plain = area_closed(r.kind, n, m, &18.5).unwrap().area;
        assert!((hat_area(&id, r.kind, n, m, &18.5).unwrap() - plain).abs() < 1e-15);
        assert!((hat_area(&doubled, r.kind, n, m, &18.5).unwrap() - 4.0 * plain).abs() < 1e-14);
        let h = hat_area(&c, r.kind, n, m, &18.5).unwrap();
        assert!((hat_area(&twice, r.kind, n, m, &18.5).unwrap() - 4.0 * h).abs() < 1e-12);
    }
}

#[test]
fn second_derivative_assembles_from_region_sums() {
    for seed in 0..5 {
        let c = random_increments(60, seed);
        let alpha = 56u64;
        for k0 in 4..alpha / 2 {
            let k = q(4 * k0 as i64 + 1, 4);
            let m = alpha - k0 - 1;
            let xi = |i: u64| c.slope(i as usize).unwrap().clone();
            let a = q(1, 1) / (xi(k0) * xi(k0) * k.clone());
            let b = q(1, 1) / (xi(m) * xi(m) * (q(alpha as i64, 1) - k.clone()));
            let want = a * region_sum_oracle(&c, k0).unwrap() - b * region_sum_oracle(&c, m).unwrap();
            assert_eq!(hat_at_second_derivative(&c, alpha, &k, Side::Right).unwrap(), want);
        }
    }
}

#[test]
fn identity_coding_reduces_to_plain_points() {
    let c = PrimeCoding::<BigRational>::identity(40);
    let alpha = 36u64;
    for k0 in 4..alpha / 2 {
        let k = q(2 * k0 as i64 + 1, 2);
        let v = hat_at_second_derivative(&c, alpha, &k, Side::Right).unwrap();
        let want = q(1, 2) / k.clone() - q(1, 2) / (q(alpha as i64, 1) - k);
        assert_eq!(v, want);
    }
}

#[test]
fn b_stays_below_a() {
    for (alpha, seed) in [(16u64, 1u64), (40, 2), (100, 3)] {
        let c = random_increments(alpha as usize, seed).convert::<f64>().unwrap();
        for k0 in 4..alpha / 2 {
            for i in 0..1000 {
                let k = k0 as f64 + i as f64 / 1000.0;
                let t = second_derivative_term(&c, alpha, &k, Side::Right).unwrap();
                assert!(t.a > 0.0 && t.b > 0.0 && t.b < t.a, "alpha = {alpha}, k = {k}");
            }
        }
    }
}

#[test]
fn bounds_chain_needs_strictness() {
    let c = PrimeCoding::<BigRational>::default_strict(16);
    let b = bounds_chain(&c, 16).unwrap();
    assert_eq!(b.len(), 4);
    let xi = |i: usize| c.slope(i).unwrap().clone();
    for e in &b {
        let (k0, m) = (e.k0, 16 - e.k0 - 1);
        assert_eq!(e.big_m_b, q(1, m as i64) / (xi(m as usize) * xi(m as usize)));
        assert_eq!(e.m_a, q(1, k0 as i64 + 1) / (xi(k0 as usize) * xi(k0 as usize)));
    }
    assert!(bounds_chain(&PrimeCoding::<BigRational>::identity(16), 16).is_err());
}
