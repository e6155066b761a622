//! Recursive construction of codings whose `(Â_T)″` is continuous on
//! `[4̂, α̂ ÷ 2̂]`, the Goldbach function `𝔊`.
//!
//! Free data: `ξ₂²`, `ξ²_{α/2}`, and `λ_i² > 1` for `i ∈ {3, 4} ∪ 𝔓`, where
//! `𝔓` is the set of primes in `[5, α/2 − 1]`. Everything else is forced: a
//! composite `i < α/2` takes `ξ_i² = (x_i / x_{i−1}) ξ²_{i−1}`, and the upper
//! coefficients are solved junction by junction from `k₀ = α/2 − 1` down to 5.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::areas::{hat_at_second_derivative, Side};
use crate::coding::{CodingFile, Mode, PrimeCoding};
use crate::error::{Error, Result};
use crate::oracles::PrimeTable;
use crate::points::{goldbach_characterization_tol, EssentialPolynomial};
use crate::scalar::{ser_text, ser_text_seq, Real, Scalar};

/// Relative tolerance for junction gaps and closed-form checks.
pub const CONSTRUCTION_TOL: f64 = 1e-9;

/// Tolerance for deciding `P_{k₀−1} = P_{k₀}` on a constructed coding. Forced
/// steps can leave composite gaps far below `CONSTRUCTION_TOL`, while true
/// repeats agree to the last bit, so this scales with the backend precision.
pub fn repeat_tol<R: Scalar>() -> f64 {
    R::unit_roundoff().sqrt().min(CONSTRUCTION_TOL)
}

/// `α` even, `α ≥ 16`, `α/2` and `α − 3` composite.
pub fn is_in_n(alpha: u64) -> bool {
    let primes = PrimeTable::new(alpha.max(2));
    alpha >= 16 && alpha % 2 == 0 && !primes.is_prime(alpha / 2) && !primes.is_prime(alpha - 3)
}

/// `{3, 4} ∪ 𝔓`: the indices carrying a free `λ`.
pub fn free_indices(alpha: u64) -> Vec<u64> {
    let primes = PrimeTable::new(alpha);
    let mut out = vec![3, 4];
    out.extend((5..alpha / 2).filter(|&p| primes.is_prime(p)));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lambdas {
    /// Every `λ_i²` drawn from `U(1, 4]`.
    Random,
    /// `λ_i = u` for all free indices.
    Scalar(BigRational),
    /// Given `λ_i²`; free indices left out are drawn at random.
    Explicit(BTreeMap<u64, BigRational>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldbachSpec {
    pub alpha: u64,
    pub xi2_sq: BigRational,
    /// `None` draws `ξ²_{α/2} = λ² ξ²_{α/2−1}` with a fresh `λ² ~ U(1, 4]`.
    pub xi_half_sq: Option<BigRational>,
    pub lambdas: Lambdas,
    pub seed: u64,
}

impl GoldbachSpec {
    pub fn random(alpha: u64, seed: u64) -> Self {
        GoldbachSpec {
            alpha,
            xi2_sq: BigRational::from_integer(1.into()),
            xi_half_sq: None,
            lambdas: Lambdas::Random,
            seed,
        }
    }

    pub fn scalar(alpha: u64, u: BigRational, xi2_sq: BigRational) -> Self {
        GoldbachSpec {
            alpha,
            xi2_sq,
            xi_half_sq: None,
            lambdas: Lambdas::Scalar(u),
            seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !is_in_n(self.alpha) {
            return Err(Error::Argument(format!(
                "alpha = {} is not even, at least 16, with alpha/2 and alpha-3 composite",
                self.alpha
            )));
        }
        if !self.xi2_sq.is_positive() {
            return Err(Error::Argument("xi2^2 must be positive".into()));
        }
        if matches!(&self.xi_half_sq, Some(v) if !v.is_positive()) {
            return Err(Error::Argument("xi_{alpha/2}^2 must be positive".into()));
        }
        let one = <BigRational as Scalar>::one();
        match &self.lambdas {
            Lambdas::Random => {}
            Lambdas::Scalar(u) if *u <= one => {
                return Err(Error::Argument(format!("u = {u} must exceed 1")))
            }
            Lambdas::Scalar(_) => {}
            Lambdas::Explicit(m) => {
                let free = free_indices(self.alpha);
                for (i, l) in m {
                    if !free.contains(i) {
                        return Err(Error::Argument(format!("lambda_{i} is not a free index")));
                    }
                    if *l <= one {
                        return Err(Error::Argument(format!("lambda_{i}^2 = {l} must exceed 1")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// How a coefficient was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `ξ₂`, `ξ₃`, `ξ₄`, or `ξ_{α/2}`.
    FreeParameter,
    /// Prime `i` in the lower half: `ξ_i² = λ_i² ξ²_{i−1}`.
    RandomPrimeChoice,
    /// Composite `i` in the lower half: `ξ_i² = (x_i/x_{i−1}) ξ²_{i−1}`.
    ForcedCompositeRatio,
    /// Upper index `α − k₀`, `k₀` composite.
    ForcedUpperRatio,
    /// Upper index `α − p₀`, `p₀` prime.
    ForcedPrimeJunction,
    /// Outside `[2, α − 5]`; does not enter `𝔊`.
    Filler,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructedCoding<R: Real> {
    pub alpha: u64,
    pub seed: u64,
    /// `ξ_i²` for `i = 0..=α`.
    #[serde(serialize_with = "ser_text_seq")]
    pub squares: Vec<R>,
    pub provenance: Vec<Provenance>,
    /// `λ_i²` actually used, by free index.
    #[serde(serialize_with = "ser_lambda_map")]
    pub lambda_sq: BTreeMap<u64, R>,
    #[serde(serialize_with = "ser_text")]
    pub xi_half_sq: R,
    /// `x_j` for `j = 0..=α − 5` (zero below 4).
    #[serde(serialize_with = "ser_text_seq")]
    pub x: Vec<R>,
    #[serde(skip)]
    pub coding: PrimeCoding<R>,
}

fn ser_lambda_map<R: Real, Ser: serde::Serializer>(
    m: &BTreeMap<u64, R>,
    ser: Ser,
) -> std::result::Result<Ser::Ok, Ser::Error> {
    ser.collect_map(m.iter().map(|(k, v)| (k.to_string(), v.to_text())))
}

impl<R: Real> ConstructedCoding<R> {
    /// `|y_j| = x_{α−j−1}`.
    pub fn abs_y(&self, j: u64) -> &R {
        &self.x[(self.alpha - j - 1) as usize]
    }

    pub fn lambda_sq(&self, i: u64) -> &R {
        &self.lambda_sq[&i]
    }

    /// `F_r = ((α − r)/r) x_{r−1} (1/ξ²_{r−1} − 1/ξ²_r)`.
    pub fn f_term(&self, r: u64) -> R {
        let s = &self.squares;
        R::from_ratio((self.alpha - r) as i64, r as i64)
            * self.x[(r - 1) as usize].clone()
            * (R::one() / s[(r - 1) as usize].clone() - R::one() / s[r as usize].clone())
    }

    pub fn to_file(&self) -> CodingFile {
        CodingFile {
            slopes: self.coding.slopes().iter().map(Scalar::to_text).collect(),
            mode: Mode::Float,
        }
    }
}

fn draw(rng: &mut ChaCha8Rng) -> BigRational {
    // U(1, 4]
    let r: f64 = rng.random();
    <BigRational as Scalar>::from_f64(4.0 - 3.0 * r)
}

fn resolve_lambdas(spec: &GoldbachSpec, rng: &mut ChaCha8Rng) -> BTreeMap<u64, BigRational> {
    free_indices(spec.alpha)
        .into_iter()
        .map(|i| {
            let v = match &spec.lambdas {
                Lambdas::Random => draw(rng),
                Lambdas::Scalar(u) => u.clone() * u.clone(),
                Lambdas::Explicit(m) => m.get(&i).cloned().unwrap_or_else(|| draw(rng)),
            };
            (i, v)
        })
        .collect()
}

fn sqrt_of<R: Real>(v: &R) -> R {
    v.sqrt_real()
}

/// Runs the construction. `R` should be a high-precision backend: the
/// slopes are square roots of the forced squares.
pub fn build<R: Real>(spec: &GoldbachSpec) -> Result<ConstructedCoding<R>> {
    spec.validate()?;
    let alpha = spec.alpha;
    let half = alpha / 2;
    let top = alpha as usize;
    let primes = PrimeTable::new(alpha);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let lambda_q = resolve_lambdas(spec, &mut rng);
    let lambda_sq: BTreeMap<u64, R> = lambda_q
        .iter()
        .map(|(&i, v)| (i, R::from_rational(v)))
        .collect();

    let mut sq: Vec<R> = vec![R::zero(); top + 1];
    let mut prov = vec![Provenance::Filler; top + 1];
    // ξ values known so far; x_j may only read indices below xi.len()
    let mut xi: Vec<R> = Vec::new();
    let x_of = |j: u64, xi: &[R]| -> Result<R> {
        EssentialPolynomial::lower(j)?
            .eval_at(xi)
            .map_err(|_| Error::Internal(format!("x_{j} needed a slope not yet constructed")))
    };

    sq[2] = R::from_rational(&spec.xi2_sq);
    prov[2] = Provenance::FreeParameter;
    for i in 3..=5usize {
        sq[i] = lambda_sq[&(i as u64)].clone() * sq[i - 1].clone();
        prov[i] = if i == 5 {
            Provenance::RandomPrimeChoice
        } else {
            Provenance::FreeParameter
        };
    }
    // placeholders for ξ₀, ξ₁ so that ξ₂ sits at index 2
    let xi2 = sqrt_of(&sq[2]);
    xi.push(xi2.clone() / R::from_i64(3));
    xi.push(R::from_ratio(2, 3) * xi2);
    for s in &sq[2..=5] {
        xi.push(sqrt_of(s));
    }
    for i in 6..half {
        let iu = i as usize;
        if primes.is_prime(i) {
            sq[iu] = lambda_sq[&i].clone() * sq[iu - 1].clone();
            prov[iu] = Provenance::RandomPrimeChoice;
        } else {
            let ratio = x_of(i, &xi)? / x_of(i - 1, &xi)?;
            sq[iu] = ratio * sq[iu - 1].clone();
            prov[iu] = Provenance::ForcedCompositeRatio;
        }
        xi.push(sqrt_of(&sq[iu]));
    }
    let mut x = vec![R::zero(); 4];
    for j in 4..=alpha - 5 {
        x.push(x_of(j, &xi)?);
    }

    let xi_half_sq = match &spec.xi_half_sq {
        Some(v) => R::from_rational(v),
        None => R::from_rational(&draw(&mut rng)) * sq[(half - 1) as usize].clone(),
    };
    sq[half as usize] = xi_half_sq.clone();
    prov[half as usize] = Provenance::FreeParameter;
    let abs_y = |j: u64| x[(alpha - j - 1) as usize].clone();
    for k0 in (5..half).rev() {
        let (up, prev) = ((alpha - k0) as usize, (alpha - k0 - 1) as usize);
        if primes.is_prime(k0) {
            let (a, b) = (&x[(k0 - 1) as usize], &x[k0 as usize]);
            if !a.close_to(b, repeat_tol::<R>()) {
                return Err(Error::TheoremViolation(format!(
                    "x_{} = {a} differs from x_{k0} = {b} at prime {k0}",
                    k0 - 1
                )));
            }
            let f = R::from_ratio((alpha - k0) as i64, k0 as i64)
                * a.clone()
                * (R::one() / sq[(k0 - 1) as usize].clone() - R::one() / sq[k0 as usize].clone());
            sq[up] = abs_y(k0 - 1) / (abs_y(k0) / sq[prev].clone() + f);
            prov[up] = Provenance::ForcedPrimeJunction;
        } else {
            sq[up] = abs_y(k0 - 1) / abs_y(k0) * sq[prev].clone();
            prov[up] = Provenance::ForcedUpperRatio;
        }
        if !sq[up].is_positive() {
            return Err(Error::Internal(format!("xi_{up}^2 = {} is not positive", sq[up])));
        }
    }

    let mut slopes: Vec<R> = xi[..2].to_vec();
    slopes.extend(sq[2..=top - 5].iter().map(sqrt_of));
    for i in top - 4..=top {
        let next = slopes[i - 1].clone() + R::one();
        sq[i] = next.clone() * next.clone();
        slopes.push(next);
    }
    sq[0] = slopes[0].clone() * slopes[0].clone();
    sq[1] = slopes[1].clone() * slopes[1].clone();
    let coding = PrimeCoding::new(slopes)?;
    Ok(ConstructedCoding {
        alpha,
        seed: spec.seed,
        squares: sq,
        provenance: prov,
        lambda_sq,
        xi_half_sq,
        x,
        coding,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Junction {
    pub k0: u64,
    pub left: f64,
    pub right: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuityReport {
    pub alpha: u64,
    pub max_gap: f64,
    pub junctions: Vec<Junction>,
}

/// One-sided values of `(Â_T)″` at every junction `k₀ ∈ [5, α/2 − 1]`,
/// without any tolerance check.
pub fn junction_gaps<S: Scalar>(c: &PrimeCoding<S>, alpha: u64) -> Result<ContinuityReport> {
    let mut junctions = Vec::new();
    for k0 in 5..alpha / 2 {
        let k = S::from_i64(k0 as i64);
        let left = hat_at_second_derivative(c, alpha, &k, Side::Left)?;
        let right = hat_at_second_derivative(c, alpha, &k, Side::Right)?;
        junctions.push(Junction {
            k0,
            left: left.to_f64(),
            right: right.to_f64(),
            gap: left.rel_diff(&right),
        });
    }
    let max_gap = junctions.iter().map(|j| j.gap).fold(0.0, f64::max);
    Ok(ContinuityReport {
        alpha,
        max_gap,
        junctions,
    })
}

/// Fails with the first junction whose relative gap exceeds `tol`.
pub fn verify_continuity<S: Scalar>(c: &PrimeCoding<S>, alpha: u64, tol: f64) -> Result<ContinuityReport> {
    let report = junction_gaps(c, alpha)?;
    if let Some(j) = report.junctions.iter().find(|j| !(j.gap <= tol)) {
        return Err(Error::Construction {
            k0: j.k0,
            gap: j.gap,
        });
    }
    Ok(report)
}

/// `𝔊(k̂) = (Â_T)″(k̂)`, right limit at integers.
pub fn eval_g<S: Scalar>(c: &PrimeCoding<S>, alpha: u64, k: &S) -> Result<S> {
    hat_at_second_derivative(c, alpha, k, Side::Right)
}

/// Largest relative errors of the closed-form identities on a construction.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormReport {
    /// `ξ²_{α−5} = |y₄| (|y_{α/2−1}| / ξ²_{α/2} + Σ F_r)⁻¹`.
    pub upper_end: f64,
    /// `x_p / ξ²_{p−1} = (2λ₃²λ₄²)⁻¹ Π_{5≤q<p prime} λ_q⁻²`.
    pub ratio_products: f64,
    /// `F₅ = ((α−5)/5) (2λ₃²λ₄²)⁻¹ (1 − λ₅⁻²)`.
    pub f5: f64,
    /// `F_p = ((α−p)/p) (2λ₃²λ₄²)⁻¹ Π_{5≤q<p prime} λ_q⁻² (1 − λ_p⁻²)`.
    pub f_products: f64,
}

impl ClosedFormReport {
    pub fn max(&self) -> f64 {
        [self.upper_end, self.ratio_products, self.f5, self.f_products]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn closed_form_checks<R: Real>(g: &ConstructedCoding<R>) -> ClosedFormReport {
    let alpha = g.alpha;
    let half = alpha / 2;
    let pp: Vec<u64> = free_indices(alpha).into_iter().filter(|&i| i >= 5).collect();
    let l = |i: u64| g.lambda_sq(i).clone();
    let base = R::one() / (R::from_i64(2) * l(3) * l(4));

    let sum_f = pp.iter().fold(R::zero(), |acc, &r| acc + g.f_term(r));
    let predicted = g.abs_y(4).clone()
        / (g.abs_y(half - 1).clone() / g.squares[half as usize].clone() + sum_f);
    let upper_end = predicted.rel_diff(&g.squares[(alpha - 5) as usize]);

    let mut ratio_products: f64 = 0.0;
    let mut f_products: f64 = 0.0;
    let mut prod = base.clone();
    for w in pp.windows(2) {
        // prod covers primes up to w[0]; P(w[1]) = primes 5..=w[0]
        prod = prod / l(w[0]);
        let p = w[1];
        let lhs = g.x[p as usize].clone() / g.squares[(p - 1) as usize].clone();
        ratio_products = ratio_products.max(lhs.rel_diff(&prod));
        let f = R::from_ratio((alpha - p) as i64, p as i64)
            * prod.clone()
            * (R::one() - R::one() / l(p));
        f_products = f_products.max(f.rel_diff(&g.f_term(p)));
    }
    let f5 = R::from_ratio((alpha - 5) as i64, 5) * base * (R::one() - R::one() / l(5));
    ClosedFormReport {
        upper_end,
        ratio_products,
        f5: f5.rel_diff(&g.f_term(5)),
        f_products,
    }
}

/// Rebuilds with `ξ₂²` (and an explicit `ξ²_{α/2}`) scaled by `c` and
/// checks that every lower `ξ_i²` and every `x_j` scales by `c` while the
/// ratios `x_{k₀−1}/x_{k₀}` and `|y_{k₀−1}|/|y_{k₀}|` stay put.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub factor: String,
    pub max_square_error: f64,
    pub max_x_error: f64,
    pub max_ratio_error: f64,
}

pub fn reduced_form_check<R: Real>(spec: &GoldbachSpec, c: &BigRational) -> Result<ScalingReport> {
    let a: ConstructedCoding<R> = build(spec)?;
    let mut scaled_spec = spec.clone();
    scaled_spec.xi2_sq = spec.xi2_sq.clone() * c.clone();
    scaled_spec.xi_half_sq = spec.xi_half_sq.clone().map(|v| v * c.clone());
    let b: ConstructedCoding<R> = build(&scaled_spec)?;
    let cr = R::from_rational(c);
    let half = (spec.alpha / 2) as usize;
    let max_square_error = (2..half)
        .map(|i| (a.squares[i].clone() * cr.clone()).rel_diff(&b.squares[i]))
        .fold(0.0, f64::max);
    let max_x_error = (4..a.x.len())
        .map(|j| (a.x[j].clone() * cr.clone()).rel_diff(&b.x[j]))
        .fold(0.0, f64::max);
    let mut max_ratio_error: f64 = 0.0;
    for k0 in 5..spec.alpha / 2 {
        let ku = k0 as usize;
        let ra = a.x[ku - 1].clone() / a.x[ku].clone();
        let rb = b.x[ku - 1].clone() / b.x[ku].clone();
        let ya = a.abs_y(k0 - 1).clone() / a.abs_y(k0).clone();
        let yb = b.abs_y(k0 - 1).clone() / b.abs_y(k0).clone();
        max_ratio_error = max_ratio_error.max(ra.rel_diff(&rb)).max(ya.rel_diff(&yb));
    }
    let report = ScalingReport {
        factor: c.to_text(),
        max_square_error,
        max_x_error,
        max_ratio_error,
    };
    let worst = report.max_square_error.max(report.max_x_error).max(report.max_ratio_error);
    if worst > CONSTRUCTION_TOL {
        return Err(Error::TheoremViolation(format!(
            "scaling xi2^2 by {c} breaks homogeneity: relative error {worst:e}"
        )));
    }
    Ok(report)
}

/// Checks that repeated essential points of the construction sit exactly at
/// the in-window Goldbach partitions.
pub fn characterization_survives<R: Real>(g: &ConstructedCoding<R>) -> Result<Vec<u64>> {
    goldbach_characterization_tol(&g.coding, g.alpha, repeat_tol::<R>())
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalarLimitRow {
    #[serde(serialize_with = "ser_text")]
    pub u: BigRational,
    pub k0: u64,
    pub x_k0: f64,
    pub y_k0: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalarLimitTable {
    pub alpha: u64,
    pub rows: Vec<ScalarLimitRow>,
    /// `max_{k₀} max(|x_{k₀} − ½ξ₂²|, ||y_{k₀}| − ½ξ₂²|)` per `u`.
    pub max_deviation: Vec<f64>,
    /// Smallest `C` with deviation `≤ C (u − 1)` over all `u`.
    pub slope_bound: f64,
}

/// Tabulates `x_{k₀}(u)` and `y_{k₀}(u)` for the scalar construction at each
/// `u = 1 + h`, and checks that the deviation from `½ξ₂²` shrinks with `h`
/// and is below `10⁻⁴ ξ₂²` at the last `h` when that is at most `10⁻⁶`.
pub fn scalar_limit_sweep<R: Real>(
    alpha: u64,
    offsets: &[BigRational],
    xi2_sq: &BigRational,
) -> Result<ScalarLimitTable> {
    let one = <BigRational as Scalar>::one();
    let half_sq = R::from_rational(xi2_sq) * R::from_ratio(1, 2);
    let mut rows = Vec::new();
    let mut max_deviation = Vec::new();
    let mut slope_bound: f64 = 0.0;
    let mut last: Option<Vec<f64>> = None;
    for h in offsets {
        if !h.is_positive() {
            return Err(Error::Argument(format!("offset {h} must be positive")));
        }
        let u = one.clone() + h.clone();
        let g: ConstructedCoding<R> = build(&GoldbachSpec::scalar(alpha, u.clone(), xi2_sq.clone()))?;
        let mut devs = Vec::new();
        for k0 in 4..alpha / 2 {
            let x = g.x[k0 as usize].clone();
            let y = -g.abs_y(k0).clone();
            let dev = ((x.clone() - half_sq.clone()).abs())
                .to_f64()
                .max((y.abs() - half_sq.clone()).abs().to_f64());
            devs.push(dev);
            rows.push(ScalarLimitRow {
                u: u.clone(),
                k0,
                x_k0: x.to_f64(),
                y_k0: y.to_f64(),
            });
        }
        let m = devs.iter().copied().fold(0.0, f64::max);
        slope_bound = slope_bound.max(m / h.to_f64());
        if let Some(prev) = &last {
            if devs.iter().zip(prev).any(|(d, p)| d > p) && offsets.windows(2).all(|w| w[0] > w[1]) {
                return Err(Error::TheoremViolation(format!(
                    "deviation from xi2^2/2 grew as u decreased to {u}"
                )));
            }
        }
        last = Some(devs);
        max_deviation.push(m);
    }
    let scale = xi2_sq.to_f64();
    if let (Some(h), Some(m)) = (offsets.last(), max_deviation.last()) {
        if h.to_f64() <= 1e-6 && *m > 1e-4 * scale {
            return Err(Error::TheoremViolation(format!(
                "deviation {m:e} at u = 1 + {h} exceeds 1e-4 xi2^2"
            )));
        }
    }
    Ok(ScalarLimitTable {
        alpha,
        rows,
        max_deviation,
        slope_bound,
    })
}
