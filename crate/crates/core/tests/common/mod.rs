#![allow(dead_code)]

use hypclass::{BigRational, PrimeCoding};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `ξ_m = 1 + m`.
pub fn linear(n: usize) -> PrimeCoding<BigRational> {
    PrimeCoding::new((0..=n as i64).map(|m| q(1 + m, 1)).collect()).unwrap()
}

/// `ξ₀ = 1`, then increments `r/64` with `r` uniform in `1..=64`.
pub fn random_increments(n: usize, seed: u64) -> PrimeCoding<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = q(1, 1);
    let mut slopes = vec![acc.clone()];
    for _ in 0..n {
        acc += q(rng.random_range(1..=64), 64);
        slopes.push(acc.clone());
    }
    PrimeCoding::new(slopes).unwrap()
}

/// Three strict rational codings through index `n`.
pub fn strict_codings(n: usize, seed: u64) -> Vec<(&'static str, PrimeCoding<BigRational>)> {
    vec![
        ("default", PrimeCoding::default_strict(n)),
        ("linear", linear(n)),
        ("random", random_increments(n, seed)),
    ]
}
