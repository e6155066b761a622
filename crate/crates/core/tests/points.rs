mod common;

use common::{q, random_increments, strict_codings};
use hypclass::oracles::{lower_closed_form, region_sum_oracle};
use hypclass::points::monotonicity_report;
use hypclass::{essential_points, goldbach_characterization, BigRational, EssentialPolynomial, PrimeCoding};
use proptest::prelude::*;

#[test]
fn polynomial_paths_agree_exactly() {
    let c = random_increments(400, 77);
    for k0 in 4..=400u64 {
        let v = EssentialPolynomial::lower(k0).unwrap().eval(&c).unwrap();
        assert_eq!(v, region_sum_oracle(&c, k0).unwrap(), "k0 = {k0}");
        assert_eq!(v, lower_closed_form(&c, k0).unwrap(), "k0 = {k0}");
    }
}

#[test]
fn polynomial_shape() {
    for k0 in 4..=300u64 {
        let p = EssentialPolynomial::lower(k0).unwrap();
        assert!(p.min_index().unwrap() >= 2);
        assert!(p.max_index().unwrap() <= k0 / 2, "k0 = {k0}");
        assert!(p.terms().all(|((i, j), _)| i <= j));
    }
    assert_eq!(EssentialPolynomial::lower(4).unwrap().to_string(), "1/2*x2^2");
    assert_eq!(EssentialPolynomial::lower(9).unwrap().to_string(), "-x2*x3 + x2*x4 + 1/2*x3^2");
    assert_eq!(
        EssentialPolynomial::upper(18, 8).unwrap(),
        -EssentialPolynomial::lower(9).unwrap()
    );
}

#[test]
fn evaluation_examples() {
    let id = PrimeCoding::<BigRational>::identity(100);
    for k0 in 4..=100 {
        assert_eq!(EssentialPolynomial::lower(k0).unwrap().eval(&id).unwrap(), q(1, 2));
    }
    let mut v = vec![q(0, 1); 7];
    v[2] = q(1, 1);
    v[3] = q(2, 1);
    v[4] = q(3, 1);
    v[6] = q(5, 1);
    assert_eq!(EssentialPolynomial::lower(12).unwrap().eval_at(&v).unwrap(), q(6, 1));
    assert_eq!(EssentialPolynomial::zero().eval(&id).unwrap(), q(0, 1));
}

#[test]
fn characterization_over_small_alpha() {
    for alpha in (16..=120u64).step_by(2) {
        for (name, c) in strict_codings(alpha as usize, alpha) {
            let r = monotonicity_report(&c, alpha).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(r.points.iter().all(|p| p.x > q(0, 1) && p.y < q(0, 1)));
            for p in &r.points {
                let mirrored = EssentialPolynomial::lower(alpha - p.k0 - 1).unwrap().eval(&c).unwrap();
                assert_eq!(-p.y.clone(), mirrored);
            }
            goldbach_characterization(&c, alpha).unwrap();
        }
    }
    assert_eq!(goldbach_characterization(&PrimeCoding::<BigRational>::default_strict(24), 24).unwrap(), vec![5, 7, 11]);
    assert_eq!(goldbach_characterization(&PrimeCoding::<BigRational>::default_strict(16), 16).unwrap(), vec![5]);
}

#[test]
fn non_strict_codings_are_rejected() {
    assert!(essential_points(&PrimeCoding::<BigRational>::identity(30), 30).is_err());
    assert!(essential_points(&PrimeCoding::<BigRational>::default_strict(30), 15).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(40) })]

    #[test]
    fn points_scale_quadratically(seed in any::<u64>(), alpha in 8u64..40, cn in 1i64..20, cd in 1i64..20) {
        let alpha = 2 * alpha;
        let c = random_increments(alpha as usize, seed);
        let f = q(cn, cd);
        let scaled = c.scaled(&f).unwrap();
        let a = essential_points(&c, alpha).unwrap();
        let b = essential_points(&scaled, alpha).unwrap();
        let f2 = f.clone() * f;
        for (p, s) in a.iter().zip(&b) {
            prop_assert_eq!(p.x.clone() * f2.clone(), s.x.clone());
            prop_assert_eq!(p.y.clone() * f2.clone(), s.y.clone());
        }
        prop_assert_eq!(
            goldbach_characterization(&c, alpha).unwrap(),
            goldbach_characterization(&scaled, alpha).unwrap()
        );
    }
}
