//! Essential polynomials and essential points.
//!
//! Summing the second derivatives of the deformed areas over `E_s(k₀)` gives
//! `P_{I,k₀}(ξ) / (ξ²_{k₀} k)`, where `P_{I,k₀}` is a quadratic form in the
//! slopes with coefficients `±1, ±½`. The essential point `P_{k₀}` is the pair
//! of lower and upper polynomial values; it repeats exactly at the `k₀` for
//! which `k₀` and `α − k₀` are both prime.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::coding::PrimeCoding;
use crate::error::{range_err, Error, Result};
use crate::oracles::{PrimeTable, Window};
use crate::regions::{enumerate_regions, RegionType};
use crate::scalar::{ser_text, Scalar};

/// Relative tolerance for deciding equality of float essential points.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A quadratic form `Σ c_{ij} x_i x_j` (`i ≤ j`) with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EssentialPolynomial {
    terms: BTreeMap<(u64, u64), BigRational>,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl EssentialPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Adds `coef · x_i x_j`, dropping terms that cancel.
    pub fn add_term(&mut self, i: u64, j: u64, coef: BigRational) {
        let key = (i.min(j), i.max(j));
        let entry = self.terms.entry(key).or_insert_with(<BigRational as Scalar>::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `P_{I,k₀}`: `+x_n x_{n′}` per T2 cell, `−x_n x_{n′}` per T5 cell,
    /// `±½ x_n²` per T7/T8 cell.
    pub fn lower(k0: u64) -> Result<Self> {
        let mut p = Self::zero();
        for r in enumerate_regions(k0)?.iter() {
            let coef = match r.kind {
                RegionType::T2 => ratio(1, 1),
                RegionType::T3 => continue,
                RegionType::T5 => ratio(-1, 1),
                RegionType::T7 => ratio(1, 2),
                RegionType::T8 => ratio(-1, 2),
            };
            p.add_term(r.index.n, r.index.n_prime, coef);
        }
        Ok(p)
    }

    /// `P_{S,k₀} = −P_{I,α−k₀−1}`.
    pub fn upper(alpha: u64, k0: u64) -> Result<Self> {
        if alpha < 10 || k0 < 4 || k0 + 1 > alpha / 2 {
            return Err(range_err(k0, 4, alpha as i64 / 2 - 1));
        }
        Ok(-Self::lower(alpha - k0 - 1)?)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u64, u64), &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u64, j: u64) -> BigRational {
        self.terms
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(<BigRational as Scalar>::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest variable index.
    pub fn max_index(&self) -> Option<u64> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Smallest variable index.
    pub fn min_index(&self) -> Option<u64> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// Substitutes `x_i := ξ_i`.
    pub fn eval<S: Scalar>(&self, c: &PrimeCoding<S>) -> Result<S> {
        let mut acc = S::zero();
        for (&(i, j), coef) in &self.terms {
            let xi = c.slope(i as usize)?.clone();
            let xj = c.slope(j as usize)?.clone();
            acc = acc + S::from_rational(coef) * xi * xj;
        }
        Ok(acc)
    }

    /// Evaluates at arbitrary values `x_i = values[i]`.
    pub fn eval_at<S: Scalar>(&self, values: &[S]) -> Result<S> {
        let get = |i: u64| {
            values
                .get(i as usize)
                .cloned()
                .ok_or_else(|| range_err(i, 0, values.len() as i64 - 1))
        };
        let mut acc = S::zero();
        for (&(i, j), coef) in &self.terms {
            acc = acc + S::from_rational(coef) * get(i)? * get(j)?;
        }
        Ok(acc)
    }
}

impl std::ops::Neg for EssentialPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        EssentialPolynomial {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl fmt::Display for EssentialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(i, j), c)) in self.terms.iter().enumerate() {
            let negative = !c.is_positive();
            let sign = if negative { "-" } else { "+" };
            match (idx, negative) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if a != <BigRational as Scalar>::one() {
                write!(f, "{a}*")?;
            }
            if i == j {
                write!(f, "x{i}^2")?;
            } else {
                write!(f, "x{i}*x{j}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for EssentialPolynomial {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Term {
            i: u64,
            j: u64,
            coef: String,
        }
        ser.collect_seq(self.terms.iter().map(|(&(i, j), c)| Term {
            i,
            j,
            coef: c.to_text(),
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EssentialPoint<S: Scalar> {
    pub k0: u64,
    #[serde(serialize_with = "ser_text")]
    pub x: S,
    #[serde(serialize_with = "ser_text")]
    pub y: S,
}

fn check_adapted<S: Scalar>(c: &PrimeCoding<S>, alpha: u64) -> Result<()> {
    if alpha < 16 || alpha % 2 == 1 {
        return Err(Error::Argument(format!(
            "alpha = {alpha} must be even and at least 16"
        )));
    }
    let last = (alpha / 2 - 1) as usize;
    if c.max_index() < last {
        return Err(range_err(last, 0, c.max_index() as i64));
    }
    if !c.is_strict_through(last) {
        return Err(Error::NotStrict(format!(
            "slopes 0..={last} are not strictly increasing"
        )));
    }
    Ok(())
}

/// `x_j = P_{I,j}(ξ)` for `j = 4..=last`; index `j` of the result holds `x_j`
/// (entries below 4 are zero).
pub fn lower_values<S: Scalar>(c: &PrimeCoding<S>, last: u64) -> Result<Vec<S>> {
    let mut out = vec![S::zero(); 4.min(last as usize + 1)];
    for j in 4..=last {
        out.push(EssentialPolynomial::lower(j)?.eval(c)?);
    }
    Ok(out)
}

/// `P_{k₀} = (x_{k₀}, y_{k₀})` for `k₀ = 4..α/2−1`.
pub fn essential_points<S: Scalar>(c: &PrimeCoding<S>, alpha: u64) -> Result<Vec<EssentialPoint<S>>> {
    check_adapted(c, alpha)?;
    let x = lower_values(c, alpha - 5)?;
    Ok((4..alpha / 2)
        .map(|k0| EssentialPoint {
            k0,
            x: x[k0 as usize].clone(),
            y: -x[(alpha - k0 - 1) as usize].clone(),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityEntry {
    pub k0: u64,
    pub x_repeated: bool,
    pub y_repeated: bool,
    pub k0_prime: bool,
    pub partner_prime: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport<S: Scalar> {
    pub alpha: u64,
    pub points: Vec<EssentialPoint<S>>,
    pub entries: Vec<MonotonicityEntry>,
}

fn leq<S: Scalar>(a: &S, b: &S, tol: f64) -> bool {
    a <= b || a.close_to(b, tol)
}

/// Checks `0 < x₄ ≤ … ≤ x_{α/2−1}`, `y₄ ≤ … ≤ y_{α/2−1} < 0`, and that a
/// repetition happens exactly at primes (`x`) and at prime partners (`y`).
pub fn monotonicity_report<S: Scalar>(c: &PrimeCoding<S>, alpha: u64) -> Result<MonotonicityReport<S>> {
    monotonicity_report_tol(c, alpha, DEFAULT_TOL)
}

pub fn monotonicity_report_tol<S: Scalar>(
    c: &PrimeCoding<S>,
    alpha: u64,
    tol: f64,
) -> Result<MonotonicityReport<S>> {
    let points = essential_points(c, alpha)?;
    let primes = PrimeTable::new(alpha);
    let violation = |msg: String| Err(Error::TheoremViolation(format!("alpha = {alpha}: {msg}")));
    for p in &points {
        if !p.x.is_positive() || !(-p.y.clone()).is_positive() {
            return violation(format!("P_{} = ({}, {}) has wrong signs", p.k0, p.x, p.y));
        }
    }
    let mut entries = Vec::new();
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !leq(&a.x, &b.x, tol) || !leq(&a.y, &b.y, tol) {
            return violation(format!("P_{} and P_{} out of order", a.k0, b.k0));
        }
        let e = MonotonicityEntry {
            k0: b.k0,
            x_repeated: a.x.close_to(&b.x, tol),
            y_repeated: a.y.close_to(&b.y, tol),
            k0_prime: primes.is_prime(b.k0),
            partner_prime: primes.is_prime(alpha - b.k0),
        };
        if e.x_repeated != e.k0_prime {
            return violation(format!(
                "x_{} = x_{} is {} but {} is {}",
                a.k0,
                b.k0,
                e.x_repeated,
                b.k0,
                if e.k0_prime { "prime" } else { "composite" }
            ));
        }
        if e.y_repeated != e.partner_prime {
            return violation(format!(
                "y_{} = y_{} is {} but {} is {}",
                a.k0,
                b.k0,
                e.y_repeated,
                alpha - b.k0,
                if e.partner_prime { "prime" } else { "composite" }
            ));
        }
        entries.push(e);
    }
    Ok(MonotonicityReport {
        alpha,
        points,
        entries,
    })
}

/// The `k₀ ∈ [5, α/2−1]` with `P_{k₀−1} = P_{k₀}`, checked against the sieve.
pub fn goldbach_characterization<S: Scalar>(c: &PrimeCoding<S>, alpha: u64) -> Result<Vec<u64>> {
    goldbach_characterization_tol(c, alpha, DEFAULT_TOL)
}

pub fn goldbach_characterization_tol<S: Scalar>(
    c: &PrimeCoding<S>,
    alpha: u64,
    tol: f64,
) -> Result<Vec<u64>> {
    let points = essential_points(c, alpha)?;
    let found: Vec<u64> = points
        .windows(2)
        .filter(|w| w[0].x.close_to(&w[1].x, tol) && w[0].y.close_to(&w[1].y, tol))
        .map(|w| w[1].k0)
        .collect();
    let expected: Vec<u64> = crate::oracles::goldbach_partitions_oracle(alpha)?
        .into_iter()
        .filter(|p| p.window == Window::Inside)
        .map(|p| p.k)
        .collect();
    if found != expected {
        return Err(Error::TheoremViolation(format!(
            "alpha = {alpha}: repeated points at {found:?}, sieve partitions {expected:?}"
        )));
    }
    Ok(found)
}
