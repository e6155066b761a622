//! Piecewise-affine codings of the half line.
//!
//! A coding is fixed by its slopes `ξ_0, …, ξ_N`. On `[m, m+1]` it is the affine
//! map `ψ_m(x) = ξ_m (x - m) + B_m` with `B_m = ξ_0 + … + ξ_{m-1}`, so it is a
//! continuous increasing bijection `[0, N+1] → [0, B_{N+1}]`. Arithmetic is
//! carried over to the deformed line through `ψ`.

use std::fs;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{range_err, Error, Result};
use crate::scalar::{HpFloat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct PrimeCoding<S> {
    slopes: Vec<S>,
    breakpoints: Vec<S>,
}

impl<S: Scalar> PrimeCoding<S> {
    /// Builds a coding from its slopes. Every slope must be positive.
    pub fn new(slopes: Vec<S>) -> Result<Self> {
        if slopes.is_empty() {
            return Err(Error::Argument("a coding needs at least one slope".into()));
        }
        if let Some(i) = slopes.iter().position(|s| !s.is_positive()) {
            return Err(Error::Argument(format!(
                "slope {i} = {} is not positive",
                slopes[i]
            )));
        }
        let mut breakpoints = Vec::with_capacity(slopes.len() + 1);
        let mut acc = S::zero();
        breakpoints.push(acc.clone());
        for s in &slopes {
            acc = acc + s.clone();
            breakpoints.push(acc.clone());
        }
        Ok(PrimeCoding {
            slopes,
            breakpoints,
        })
    }

    /// All slopes equal to one: `ψ` is the identity on `[0, n+1]`.
    pub fn identity(n: usize) -> Self {
        Self::new(vec![S::one(); n + 1]).expect("unit slopes are positive")
    }

    /// The default strict coding `ξ_m = 1 + m/n` for `m = 0..=n`.
    pub fn default_strict(n: usize) -> Self {
        let n = n.max(1);
        let slopes = (0..=n)
            .map(|m| S::from_ratio((n + m) as i64, n as i64))
            .collect();
        Self::new(slopes).expect("default slopes are positive")
    }

    /// Largest slope index `N`.
    pub fn max_index(&self) -> usize {
        self.slopes.len() - 1
    }

    pub fn slopes(&self) -> &[S] {
        &self.slopes
    }

    pub fn slope(&self, m: usize) -> Result<&S> {
        self.slopes
            .get(m)
            .ok_or_else(|| range_err(m, 0, self.max_index() as i64))
    }

    /// `B_m`, for `m = 0..=N+1`.
    pub fn breakpoint(&self, m: usize) -> Result<&S> {
        self.breakpoints
            .get(m)
            .ok_or_else(|| range_err(m, 0, self.slopes.len() as i64))
    }

    /// `N + 1`, the right end of the represented real interval.
    pub fn domain_limit(&self) -> S {
        S::from_i64(self.slopes.len() as i64)
    }

    /// `B_{N+1} = ψ(N+1)`.
    pub fn range_limit(&self) -> &S {
        self.breakpoints.last().expect("non-empty")
    }

    /// `ξ_0 < ξ_1 < … < ξ_N`.
    pub fn is_strict(&self) -> bool {
        self.is_strict_through(self.max_index())
    }

    /// `ξ_0 < … < ξ_last`.
    pub fn is_strict_through(&self, last: usize) -> bool {
        let last = last.min(self.max_index());
        self.slopes[..=last].windows(2).all(|w| w[0] < w[1])
    }

    pub fn psi(&self, x: &S) -> Result<S> {
        if *x < S::zero() || *x > self.domain_limit() {
            return Err(Error::Domain(format!(
                "psi: {x} outside [0, {}]",
                self.domain_limit()
            )));
        }
        let m = (x.floor_i64() as usize).min(self.max_index());
        let offset = x.clone() - S::from_i64(m as i64);
        Ok(self.slopes[m].clone() * offset + self.breakpoints[m].clone())
    }

    pub fn psi_inv(&self, xh: &S) -> Result<S> {
        if *xh < S::zero() || xh > self.range_limit() {
            return Err(Error::Domain(format!(
                "psi_inv: {xh} outside [0, {}]",
                self.range_limit()
            )));
        }
        // last breakpoint B_m <= xh, capped at the final piece
        let m = self
            .breakpoints
            .partition_point(|b| b <= xh)
            .saturating_sub(1)
            .min(self.max_index());
        let offset = (xh.clone() - self.breakpoints[m].clone()) / self.slopes[m].clone();
        Ok(S::from_i64(m as i64) + offset)
    }

    /// `ψ(n)` for a natural `n`.
    pub fn hat_natural(&self, n: usize) -> Result<S> {
        self.breakpoint(n).cloned()
    }

    fn transport(&self, value: S, what: &str) -> Result<S> {
        if value < S::zero() || value > self.domain_limit() {
            return Err(Error::Domain(format!(
                "{what}: pre-image {value} is not representable on [0, {}]",
                self.domain_limit()
            )));
        }
        self.psi(&value)
    }

    /// `ŝ ⊕ t̂ = ψ(ψ⁻¹(ŝ) + ψ⁻¹(t̂))`.
    pub fn hat_add(&self, s: &S, t: &S) -> Result<S> {
        self.transport(self.psi_inv(s)? + self.psi_inv(t)?, "hat_add")
    }

    /// `ŝ ⊗ t̂ = ψ(ψ⁻¹(ŝ) · ψ⁻¹(t̂))`.
    pub fn hat_mul(&self, s: &S, t: &S) -> Result<S> {
        self.transport(self.psi_inv(s)? * self.psi_inv(t)?, "hat_mul")
    }

    /// `ŝ ∼ t̂ = ψ(ψ⁻¹(ŝ) − ψ⁻¹(t̂))`, defined when `ŝ ≥ t̂`.
    pub fn hat_sub(&self, s: &S, t: &S) -> Result<S> {
        let (a, b) = (self.psi_inv(s)?, self.psi_inv(t)?);
        if a < b {
            return Err(Error::Domain(format!("hat_sub: {a} < {b}")));
        }
        self.transport(a - b, "hat_sub")
    }

    /// `ŝ ÷ t̂ = ψ(ψ⁻¹(ŝ) / ψ⁻¹(t̂))`, defined when `t̂ ≠ 0`.
    pub fn hat_div(&self, s: &S, t: &S) -> Result<S> {
        let (a, b) = (self.psi_inv(s)?, self.psi_inv(t)?);
        if b.is_zero() {
            return Err(Error::Domain("hat_div: division by 0̂".into()));
        }
        self.transport(a / b, "hat_div")
    }

    /// `(a_k, b_k)`: the left and right slopes of `ψ` at the natural `k`,
    /// i.e. `(ξ_{k-1}, ξ_k)`.
    pub fn one_sided_slopes(&self, k: usize) -> Result<(S, S)> {
        if k == 0 || k > self.max_index() {
            return Err(range_err(k, 1, self.max_index() as i64));
        }
        Ok((self.slopes[k - 1].clone(), self.slopes[k].clone()))
    }

    /// `ξ_i ξ_j ≠ ξ_{i+1} ξ_{j+1}` for every admissible pair `(i, j)`.
    pub fn identifies_primes(&self) -> bool {
        let n = self.max_index();
        (0..n).all(|i| {
            (i..n).all(|j| {
                self.slopes[i].clone() * self.slopes[j].clone()
                    != self.slopes[i + 1].clone() * self.slopes[j + 1].clone()
            })
        })
    }

    /// `a_m a_{α−m} ≠ b_m b_{α−m}` for `m = 1..α−1`: the deformed
    /// anti-diagonal `x + y = α` breaks exactly at its natural points.
    pub fn identifies_naturals(&self, alpha: usize) -> Result<bool> {
        if alpha < 2 || alpha > self.max_index() {
            return Err(range_err(alpha, 2, self.max_index() as i64));
        }
        for m in 1..alpha {
            let (a_m, b_m) = self.one_sided_slopes(m)?;
            let (a_r, b_r) = self.one_sided_slopes(alpha - m)?;
            if a_m * a_r == b_m * b_r {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every slope multiplied by `c`.
    pub fn scaled(&self, c: &S) -> Result<Self> {
        Self::new(self.slopes.iter().map(|s| s.clone() * c.clone()).collect())
    }

    /// Converts between numeric backends through `f64`-free text.
    pub fn convert<T: Scalar>(&self) -> Result<PrimeCoding<T>> {
        PrimeCoding::new(
            self.slopes
                .iter()
                .map(|s| T::parse(&s.to_text()))
                .collect::<Result<_>>()?,
        )
    }

    pub fn to_file(&self) -> CodingFile {
        CodingFile {
            slopes: self.slopes.iter().map(Scalar::to_text).collect(),
            mode: if S::EXACT {
                Mode::Rational
            } else {
                Mode::Float
            },
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Rational,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Mode::Rational),
            "float" => Ok(Mode::Float),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// On-disk form of a coding: `{"slopes": [...], "mode": "rational"|"float"}`.
/// Slopes are `"p/q"` or decimal strings; extra fields are ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodingFile {
    pub slopes: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
}

impl CodingFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn to_coding<S: Scalar>(&self) -> Result<PrimeCoding<S>> {
        PrimeCoding::new(
            self.slopes
                .iter()
                .map(|s| S::parse(s))
                .collect::<Result<_>>()?,
        )
    }

    pub fn rational(&self) -> Result<PrimeCoding<BigRational>> {
        self.to_coding()
    }

    pub fn float(&self) -> Result<PrimeCoding<HpFloat>> {
        self.to_coding()
    }
}
