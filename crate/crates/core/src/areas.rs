//! Areas cut from essential regions by `xy = k`, their `k`-derivatives, the
//! deformed (Jacobian-scaled) areas and the second derivative of the total
//! deformed area `Â_T`.

use serde::Serialize;

use crate::coding::PrimeCoding;
use crate::error::{Error, Result};
use crate::points::EssentialPolynomial;
use crate::regions::{enumerate_regions, RegionType};
use crate::scalar::{ser_text, Real, Scalar};

/// Area `A(k)` of the part of a region under the curve, with `A′` and `A″`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaFormulaResult<R: Scalar> {
    #[serde(serialize_with = "ser_text")]
    pub area: R,
    #[serde(serialize_with = "ser_text")]
    pub d1: R,
    #[serde(serialize_with = "ser_text")]
    pub d2: R,
}

impl<R: Scalar> AreaFormulaResult<R> {
    pub fn to_f64(&self) -> AreaFormulaResult<f64> {
        AreaFormulaResult {
            area: self.area.to_f64(),
            d1: self.d1.to_f64(),
            d2: self.d2.to_f64(),
        }
    }
}

/// The closed forms, without checking that the region is essential at `k`.
pub fn area_formula<R: Real>(kind: RegionType, n: u64, n_prime: u64, k: &R) -> AreaFormulaResult<R> {
    let int = |v: u64| R::from_i64(v as i64);
    let k = k.clone();
    let (nr, np) = (int(n), int(n_prime));
    let one = R::one();
    let half = R::from_ratio(1, 2);
    match kind {
        RegionType::T2 => {
            let nn = nr * np;
            let l = (k.clone() / nn.clone()).ln();
            AreaFormulaResult {
                area: k.clone() * l.clone() + nn - k.clone(),
                d1: l,
                d2: one / k,
            }
        }
        RegionType::T3 => {
            let np1 = np.clone() + one.clone();
            let l = (np1.clone() / np.clone()).ln();
            let w = one.clone() / np.clone() - one / np1.clone();
            AreaFormulaResult {
                area: k.clone() / np1 - nr + k.clone() * l.clone() - np * w * k,
                d1: l,
                d2: R::zero(),
            }
        }
        RegionType::T5 => {
            let np1 = np.clone() + one.clone();
            let n1 = nr.clone() + one.clone();
            let l = (n1.clone() * np1.clone() / k.clone()).ln();
            AreaFormulaResult {
                area: k.clone() / np1.clone() - nr + k.clone() * l.clone()
                    - np * (n1 - k.clone() / np1),
                d1: l,
                d2: -(one / k),
            }
        }
        RegionType::T7 => {
            let lk = k.ln();
            let ln_n = nr.ln();
            AreaFormulaResult {
                area: half.clone() * k.clone() * lk.clone() - half.clone() * k.clone()
                    - k.clone() * ln_n.clone()
                    + half.clone() * nr.clone() * nr,
                d1: half.clone() * lk - ln_n,
                d2: half / k,
            }
        }
        RegionType::T8 => {
            let n1 = nr.clone() + one;
            let l = (n1.clone() / k.sqrt_real()).ln();
            AreaFormulaResult {
                area: half.clone() * k.clone() - nr.clone() * n1 + half.clone() * nr.clone() * nr
                    + k.clone() * l.clone(),
                d1: l,
                d2: -(half / k),
            }
        }
    }
}

/// Checks that `(n, n′)` is an essential region of type `kind` for `k`: of
/// `⌊k⌋`, or of `k − 1` when `k` is an integer (closed-interval extension).
pub fn check_region<S: Scalar>(kind: RegionType, n: u64, n_prime: u64, k: &S) -> Result<()> {
    let mismatch = || Error::RegionMismatch {
        n,
        n_prime,
        kind: kind.to_string(),
        k: k.to_f64(),
    };
    if *k < S::from_i64(4) {
        return Err(Error::Domain(format!("k = {k} must be at least 4")));
    }
    let k0 = k.floor_i64() as u64;
    let mut candidates = vec![k0];
    if S::from_i64(k0 as i64) == *k && k0 > 4 {
        candidates.push(k0 - 1);
    }
    for c in candidates {
        if enumerate_regions(c)?.get(n, n_prime) == Some(kind) {
            return Ok(());
        }
    }
    Err(mismatch())
}

/// Area of an essential region at `k`, checked against the region set.
pub fn area_closed<R: Real>(
    kind: RegionType,
    n: u64,
    n_prime: u64,
    k: &R,
) -> Result<AreaFormulaResult<R>> {
    check_region(kind, n, n_prime, k)?;
    Ok(area_formula(kind, n, n_prime, k))
}

/// Deformed area `ξ_n ξ_{n′} A_{(n,n′)}(k)`.
pub fn hat_area<R: Real>(
    c: &PrimeCoding<R>,
    kind: RegionType,
    n: u64,
    n_prime: u64,
    k: &R,
) -> Result<R> {
    let a = area_closed(kind, n, n_prime, k)?;
    Ok(c.slope(n as usize)?.clone() * c.slope(n_prime as usize)?.clone() * a.area)
}

/// `Σ ξ_n ξ_{n′} A_{(n,n′)}(k)` over `E_s(k₀)`, with no region check on `k`.
pub fn hat_area_sum<R: Real>(c: &PrimeCoding<R>, k0: u64, k: &R) -> Result<R> {
    let mut acc = R::zero();
    for r in enumerate_regions(k0)?.iter() {
        let (n, m) = (r.index.n, r.index.n_prime);
        let w = c.slope(n as usize)?.clone() * c.slope(m as usize)?.clone();
        acc = acc + w * area_formula(r.kind, n, m, k).area;
    }
    Ok(acc)
}

/// Which one-sided limit to take at an integer `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    #[default]
    Right,
}

fn check_alpha<S: Scalar>(c: &PrimeCoding<S>, alpha: u64) -> Result<()> {
    if alpha < 16 || alpha % 2 == 1 {
        return Err(Error::Argument(format!(
            "alpha = {alpha} must be even and at least 16"
        )));
    }
    if (c.max_index() as u64) < alpha - 4 {
        return Err(Error::Argument(format!(
            "coding has slopes through {} but alpha = {alpha} needs {}",
            c.max_index(),
            alpha - 4
        )));
    }
    Ok(())
}

/// The `k₀` whose sub-interval contains `k` from the given side, clamped to
/// `[4, α/2 − 1]`.
pub fn interval_index<S: Scalar>(alpha: u64, k: &S, side: Side) -> Result<u64> {
    if *k < S::from_i64(4) || *k > S::from_i64(alpha as i64 / 2) {
        return Err(Error::Domain(format!(
            "k = {k} outside [4, {}]",
            alpha / 2
        )));
    }
    let mut k0 = k.floor_i64();
    if side == Side::Left && S::from_i64(k0) == *k {
        k0 -= 1;
    }
    Ok(k0.clamp(4, alpha as i64 / 2 - 1) as u64)
}

/// `A_{k₀}(k) = 1/(ξ²_{k₀} k)` and `B_{k₀}(k) = 1/(ξ²_{α−k₀−1} (α−k))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SecondDerivativeTerm<S: Scalar> {
    pub k0: u64,
    #[serde(serialize_with = "ser_text")]
    pub a: S,
    #[serde(serialize_with = "ser_text")]
    pub b: S,
}

pub fn second_derivative_term<S: Scalar>(
    c: &PrimeCoding<S>,
    alpha: u64,
    k: &S,
    side: Side,
) -> Result<SecondDerivativeTerm<S>> {
    check_alpha(c, alpha)?;
    let k0 = interval_index(alpha, k, side)?;
    let xi = c.slope(k0 as usize)?.clone();
    let eta = c.slope((alpha - k0 - 1) as usize)?.clone();
    Ok(SecondDerivativeTerm {
        k0,
        a: S::one() / (xi.clone() * xi * k.clone()),
        b: S::one() / (eta.clone() * eta * (S::from_i64(alpha as i64) - k.clone())),
    })
}

/// `(Â_T)″ = A_{k₀}(k) P_{I,k₀} + B_{k₀}(k) P_{S,k₀}` at the real-line
/// abscissa `k` of `k̂`.
pub fn hat_at_second_derivative<S: Scalar>(
    c: &PrimeCoding<S>,
    alpha: u64,
    k: &S,
    side: Side,
) -> Result<S> {
    let t = second_derivative_term(c, alpha, k, side)?;
    let x = EssentialPolynomial::lower(t.k0)?.eval(c)?;
    let y = EssentialPolynomial::upper(alpha, t.k0)?.eval(c)?;
    Ok(t.a * x + t.b * y)
}

/// Extremes of `A_{k₀}` and `B_{k₀}` over `[k₀, k₀ + 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds<S: Scalar> {
    pub k0: u64,
    #[serde(serialize_with = "ser_text")]
    pub m_b: S,
    #[serde(serialize_with = "ser_text")]
    pub big_m_b: S,
    #[serde(serialize_with = "ser_text")]
    pub m_a: S,
    #[serde(serialize_with = "ser_text")]
    pub big_m_a: S,
}

/// Bounds for every `k₀ ∈ [4, α/2 − 1]`, after checking the interleaving
/// `m_{B₄} < M_{B₄} < … < M_{B_{α/2−1}} < m_{A_{α/2−1}} < … < M_{A₄}`.
pub fn bounds_chain<S: Scalar>(c: &PrimeCoding<S>, alpha: u64) -> Result<Vec<Bounds<S>>> {
    check_alpha(c, alpha)?;
    if !c.is_strict_through((alpha - 5) as usize) {
        return Err(Error::NotStrict(format!(
            "slopes 0..={} are not strictly increasing",
            alpha - 5
        )));
    }
    let sq = |i: u64| -> Result<S> {
        let x = c.slope(i as usize)?.clone();
        Ok(x.clone() * x)
    };
    let int = |v: u64| S::from_i64(v as i64);
    let mut out = Vec::new();
    for k0 in 4..alpha / 2 {
        let (xa, xb) = (sq(k0)?, sq(alpha - k0 - 1)?);
        out.push(Bounds {
            k0,
            m_b: S::one() / (int(alpha - k0) * xb.clone()),
            big_m_b: S::one() / (int(alpha - k0 - 1) * xb),
            m_a: S::one() / (int(k0 + 1) * xa.clone()),
            big_m_a: S::one() / (int(k0) * xa),
        });
    }
    let mut chain: Vec<(String, &S)> = Vec::new();
    for b in &out {
        chain.push((format!("m_B{}", b.k0), &b.m_b));
        chain.push((format!("M_B{}", b.k0), &b.big_m_b));
    }
    for b in out.iter().rev() {
        chain.push((format!("m_A{}", b.k0), &b.m_a));
        chain.push((format!("M_A{}", b.k0), &b.big_m_a));
    }
    for w in chain.windows(2) {
        if w[0].1 >= w[1].1 {
            return Err(Error::TheoremViolation(format!(
                "bounds chain: {} = {} is not below {} = {}",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    Ok(out)
}
