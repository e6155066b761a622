mod common;

use common::{q, random_increments};
use hypclass::hyperbola::{fhat_eval, fhat_one_sided, hhat_eval, hhat_one_sided};
use hypclass::oracles::is_prime_trial;
use hypclass::{classify_number, BigRational, NumberClass, PrimeCoding};
use proptest::prelude::*;

fn natural(v: &BigRational) -> bool {
    v.is_integer()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(2000) })]

    #[test]
    fn derivative_jumps_exactly_at_natural_coordinates(
        seed in any::<u64>(),
        (k, x) in (1i64..=100)
            .prop_flat_map(|d| (Just(d), 2 * d + 1..40 * d))
            .prop_flat_map(|(d, n)| {
                let k = q(n, d);
                let s = (n as f64 / d as f64).sqrt().floor() as i64;
                let top = n / d;
                let root_up = if s * s * d == n { s } else { s + 1 };
                let xs = prop_oneof![
                    (1..=s).prop_map(|x| q(x, 1)),
                    (root_up..=top).prop_map(move |np| q(n, d * np)),
                    (1i64..=97).prop_flat_map(move |b| (b..=s * b).prop_map(move |a| q(a, b))),
                ];
                (Just(k), xs)
            }),
    ) {
        let c = random_increments(41, seed);
        let y = k.clone() / x.clone();
        let (l, r) = hhat_one_sided(&c, &k, &c.psi(&x).unwrap()).unwrap();
        prop_assert_eq!(l == r, !natural(&x) && !natural(&y), "x = {}, y = {}", x, y);
    }

    #[test]
    fn classification_matches_the_sieve(
        seed in any::<u64>(),
        k in (1i64..=20).prop_flat_map(|d| (2 * d + 1..=100 * d).prop_map(move |n| q(n, d))),
    ) {
        let c = random_increments(100, seed);
        let want = if !k.is_integer() {
            NumberClass::NonNatural
        } else if is_prime_trial(k.to_integer().try_into().unwrap()) {
            NumberClass::Prime
        } else {
            NumberClass::CompositeNatural
        };
        prop_assert_eq!(classify_number(&c, &k).unwrap(), want);
    }
}

#[test]
fn fhat_differentiability_criterion_is_exhaustive() {
    // slopes with repeats, so both outcomes occur
    let patterns: [&[i64]; 3] = [&[1, 2, 2, 3, 3, 3, 4], &[2, 1, 2, 1, 3], &[1, 1, 2, 3, 5, 8, 13]];
    let mut codings: Vec<PrimeCoding<BigRational>> = patterns
        .iter()
        .map(|p| PrimeCoding::new((0..=50).map(|m| q(p[m % p.len()], 1)).collect()).unwrap())
        .collect();
    codings.push(random_increments(50, 9));
    codings.push(PrimeCoding::identity(50));
    let (mut smooth, mut kinked) = (0, 0);
    for c in &codings {
        let xi = c.slopes();
        for alpha in 2..=50usize {
            for m in 1..alpha {
                let (a_m, b_m) = (&xi[m - 1], &xi[m]);
                let (a_r, b_r) = (&xi[alpha - m - 1], &xi[alpha - m]);
                let want = a_m.clone() * a_r.clone() == b_m.clone() * b_r.clone();
                let (l, r) = fhat_one_sided(c, alpha, m).unwrap();
                assert_eq!(l == r, want, "alpha = {alpha}, m = {m}");
                if want { smooth += 1 } else { kinked += 1 }
            }
        }
    }
    assert!(smooth > 0 && kinked > 0);
}

#[test]
fn deformed_curves_decrease() {
    let c = random_increments(60, 4);
    for alpha in [10usize, 17, 30] {
        let top = c.psi(&q(alpha as i64, 1)).unwrap();
        let grid: Vec<BigRational> = (1..200).map(|i| top.clone() * q(i, 200)).collect();
        let vals: Vec<_> = grid.iter().map(|u| fhat_eval(&c, alpha, u).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }
    for k in [q(7, 1), q(75, 2), q(50, 1)] {
        let lo = c.psi(&q(1, 1)).unwrap();
        let hi = c.psi(&k).unwrap();
        let grid: Vec<BigRational> = (0..=200).map(|i| lo.clone() + (hi.clone() - lo.clone()) * q(i, 200)).collect();
        let vals: Vec<_> = grid.iter().map(|u| hhat_eval(&c, &k, u).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }
}

#[test]
fn float_backend_classifies_like_rationals() {
    let c = PrimeCoding::<BigRational>::default_strict(80);
    let cf = c.convert::<f64>().unwrap();
    for k in 2..=80 {
        let exact = classify_number(&c, &q(k, 1)).unwrap();
        assert_eq!(classify_number(&cf, &(k as f64)).unwrap(), exact, "k = {k}");
    }
    assert_eq!(classify_number(&cf, &7.5).unwrap(), NumberClass::NonNatural);
}
