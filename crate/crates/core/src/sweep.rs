//! Goldbach-characterization sweeps over ranges of `α`, one record per `α`.

use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::coding::{Mode, PrimeCoding};
use crate::error::Result;
use crate::oracles::{goldbach_partitions_oracle, Window};
use crate::points::essential_points;
use crate::scalar::{with_precision, HpFloat, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub alpha: u64,
    /// `k₀` with `P_{k₀−1} = P_{k₀}`.
    pub characterized_partitions: Vec<u64>,
    /// In-window `k₀` with `k₀` and `α − k₀` prime.
    pub sieve_partitions: Vec<u64>,
    /// Partitions `k + (α − k)` the window does not see (`k ∈ {2, 3}` or `k = α/2`).
    pub outside_window: Vec<u64>,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Compares repeated essential points of `c` with the sieve; a mismatch is
/// reported in the record rather than raised.
pub fn sweep_record<S: Scalar>(c: &PrimeCoding<S>, alpha: u64, tol: f64) -> Result<SweepRecord> {
    let points = essential_points(c, alpha)?;
    let characterized_partitions: Vec<u64> = points
        .windows(2)
        .filter(|w| w[0].x.close_to(&w[1].x, tol) && w[0].y.close_to(&w[1].y, tol))
        .map(|w| w[1].k0)
        .collect();
    let (inside, outside): (Vec<_>, Vec<_>) = goldbach_partitions_oracle(alpha)?
        .into_iter()
        .partition(|p| p.window == Window::Inside);
    let sieve_partitions: Vec<u64> = inside.into_iter().map(|p| p.k).collect();
    Ok(SweepRecord {
        alpha,
        agreement: characterized_partitions == sieve_partitions,
        characterized_partitions,
        sieve_partitions,
        outside_window: outside.into_iter().map(|p| p.k).collect(),
        timing_ms: None,
    })
}

/// Sweeps every even `α ≥ 16` in `alphas` with the default strict coding
/// `ξ_m = 1 + m/α`, in parallel; records come back in `α` order.
pub fn goldbach_sweep(
    alphas: impl IntoIterator<Item = u64>,
    mode: Mode,
    precision_bits: usize,
    tol: f64,
    timing: bool,
) -> Result<Vec<SweepRecord>> {
    let alphas: Vec<u64> = alphas
        .into_iter()
        .filter(|a| *a >= 16 && a % 2 == 0)
        .collect();
    alphas
        .par_iter()
        .map(|&alpha| {
            let start = Instant::now();
            let coding = PrimeCoding::<BigRational>::default_strict(alpha as usize);
            let mut rec = match mode {
                Mode::Rational => sweep_record(&coding, alpha, tol)?,
                Mode::Float => with_precision(precision_bits, || {
                    sweep_record(&coding.convert::<HpFloat>()?, alpha, tol)
                })?,
            };
            if timing {
                rec.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            Ok(rec)
        })
        .collect()
}
