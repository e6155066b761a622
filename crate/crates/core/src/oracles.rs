//! Brute-force checks used to validate the closed forms: a sieve, Goldbach
//! partitions, finite differences, adaptive quadrature of the region areas,
//! and direct region sums for the essential polynomials.

use serde::Serialize;

use crate::areas::{hat_area_sum, interval_index, Side};
use crate::coding::PrimeCoding;
use crate::error::{Error, Result};
use crate::regions::{enumerate_regions, isqrt, RegionType};
use crate::scalar::{Real, Scalar};

pub use crate::regions::{geometric_region_oracle, oracle_regions};

/// Absolute error target handed to the quadrature routine.
pub const QUAD_ABS_ERR: f64 = 1e-10;

/// Primality table for `0..=n` (sieve of Eratosthenes).
#[derive(Clone, Debug)]
pub struct PrimeTable {
    composite: Vec<bool>,
}

impl PrimeTable {
    pub fn new(n: u64) -> Self {
        let n = n.max(2) as usize;
        let mut composite = vec![false; n + 1];
        composite[0] = true;
        composite[1] = true;
        let mut p = 2;
        while p * p <= n {
            if !composite[p] {
                for m in (p * p..=n).step_by(p) {
                    composite[m] = true;
                }
            }
            p += 1;
        }
        PrimeTable { composite }
    }

    pub fn limit(&self) -> u64 {
        self.composite.len() as u64 - 1
    }

    /// Panics above [`PrimeTable::limit`].
    pub fn is_prime(&self, k: u64) -> bool {
        !self.composite[k as usize]
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.limit()).filter(|&k| self.is_prime(k))
    }

    pub fn count(&self) -> usize {
        self.primes().count()
    }
}

/// Primality by trial division.
pub fn is_prime_trial(k: u64) -> bool {
    k >= 2 && (2..=isqrt(k)).all(|d| k % d != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    /// `5 ≤ k ≤ α/2 − 1`, where repeated essential points detect the partition.
    Inside,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub k: u64,
    pub partner: u64,
    pub window: Window,
}

/// Every `k ≤ α/2` with `k` and `α − k` prime.
pub fn goldbach_partitions_oracle(alpha: u64) -> Result<Vec<Partition>> {
    if alpha < 4 || alpha % 2 == 1 {
        return Err(Error::Argument(format!(
            "alpha = {alpha} must be even and at least 4"
        )));
    }
    let primes = PrimeTable::new(alpha);
    Ok((2..=alpha / 2)
        .filter(|&k| primes.is_prime(k) && primes.is_prime(alpha - k))
        .map(|k| Partition {
            k,
            partner: alpha - k,
            window: if (5..alpha / 2).contains(&k) {
                Window::Inside
            } else {
                Window::Outside
            },
        })
        .collect())
}

fn check_step<R: Scalar>(x: &R, h: &R, lo: &R, hi: &R) -> Result<()> {
    if !h.is_positive() || x.clone() - h.clone() < *lo || x.clone() + h.clone() > *hi {
        return Err(Error::Argument(format!(
            "finite-difference stencil {x} +- {h} leaves [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// `(f(x+h) − f(x−h)) / 2h`, with the stencil required to stay in `[lo, hi]`.
pub fn finite_difference_d1<R: Scalar>(
    f: impl Fn(&R) -> Result<R>,
    x: &R,
    h: &R,
    lo: &R,
    hi: &R,
) -> Result<R> {
    check_step(x, h, lo, hi)?;
    let two = R::from_i64(2);
    Ok((f(&(x.clone() + h.clone()))? - f(&(x.clone() - h.clone()))?) / (two * h.clone()))
}

/// `(f(x+h) − 2f(x) + f(x−h)) / h²`, with the stencil required to stay in `[lo, hi]`.
pub fn finite_difference_d2<R: Scalar>(
    f: impl Fn(&R) -> Result<R>,
    x: &R,
    h: &R,
    lo: &R,
    hi: &R,
) -> Result<R> {
    check_step(x, h, lo, hi)?;
    let two = R::from_i64(2);
    let num = f(&(x.clone() + h.clone()))? - two * f(x)? + f(&(x.clone() - h.clone()))?;
    Ok(num / (h.clone() * h.clone()))
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let out = quadrature::integrate(f, a, b, QUAD_ABS_ERR);
    if !(out.error_estimate <= QUAD_ABS_ERR) || !out.integral.is_finite() {
        return Err(Error::Quadrature {
            a,
            b,
            estimate: out.error_estimate,
        });
    }
    Ok(out.integral)
}

/// Integrates `f` over `[a, b]`, split at the given interior points.
fn integrate_split(f: impl Fn(f64) -> f64 + Copy, a: f64, b: f64, cuts: &[f64]) -> Result<f64> {
    let mut pts: Vec<f64> = cuts.iter().copied().filter(|&c| a < c && c < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts.windows(2).map(|w| integrate(f, w[0], w[1])).sum()
}

/// Area of cell `(n, n′)` under `xy = k`, by quadrature of vertical slices.
pub fn area_quadrature_oracle(kind: RegionType, n: u64, n_prime: u64, k: f64) -> Result<f64> {
    if kind.is_diagonal() != (n == n_prime) {
        return Err(Error::RegionMismatch {
            n,
            n_prime,
            kind: kind.to_string(),
            k,
        });
    }
    let (x0, x1) = (n as f64, n as f64 + 1.0);
    if n == n_prime {
        let top = x1;
        let f = move |x: f64| (k / x).min(top) - x;
        let g = move |x: f64| f(x).max(0.0);
        integrate_split(g, x0, x1, &[k / top, k.sqrt()])
    } else {
        let (bottom, top) = (n_prime as f64, n_prime as f64 + 1.0);
        let g = move |x: f64| ((k / x).min(top) - bottom).max(0.0);
        integrate_split(g, x0, x1, &[k / top, k / bottom])
    }
}

/// Deformed area between `xy = k_lo` and `xy = k_hi` over `x ≥ 2`, `y ≥ x`:
/// `∫ ξ_⌊x⌋ (ψ(k_hi/x) − ψ(max(x, k_lo/x)))⁺ dx`.
pub fn deformed_strip_oracle(c: &PrimeCoding<f64>, k_lo: f64, k_hi: f64) -> Result<f64> {
    let top = k_hi.sqrt();
    let g = |x: f64| -> f64 {
        let m = (x.floor() as usize).min(c.max_index());
        let hi = c.psi(&(k_hi / x)).unwrap_or(f64::NAN);
        let lo = c.psi(&x.max(k_lo / x)).unwrap_or(f64::NAN);
        c.slopes()[m] * (hi - lo).max(0.0)
    };
    let mut cuts = vec![k_lo.sqrt()];
    let last = k_hi.ceil() as u64 + 1;
    for m in 2..=last {
        let m = m as f64;
        cuts.extend([m, k_hi / m, k_lo / m]);
    }
    integrate_split(g, 2.0, top, &cuts)
}

/// `Σ_{E_s(k₀)} c(type) ξ_n ξ_{n′}`, with `c` read from the second-derivative
/// menu of each region type.
pub fn region_sum_oracle<S: Scalar>(c: &PrimeCoding<S>, k0: u64) -> Result<S> {
    let mut acc = S::zero();
    for r in enumerate_regions(k0)?.iter() {
        let (num, den) = r.kind.d2_coefficient();
        let w = c.slope(r.index.n as usize)?.clone() * c.slope(r.index.n_prime as usize)?.clone();
        acc = acc + S::from_ratio(num, den) * w;
    }
    Ok(acc)
}

/// `Σ_{n=2}^{s−1} ξ_n (ξ_{⌊k₀/n⌋} − ξ_{⌊k₀/(n+1)⌋})` plus `½ξ_s²` when
/// `⌊k₀/s⌋ = s`, or `ξ_s (ξ_{⌊k₀/s⌋} − ½ξ_s)` otherwise (`s = ⌊√k₀⌋`).
pub fn lower_closed_form<S: Scalar>(c: &PrimeCoding<S>, k0: u64) -> Result<S> {
    let xi = |i: u64| c.slope(i as usize).cloned();
    let s = isqrt(k0);
    let half = S::from_ratio(1, 2);
    let mut acc = S::zero();
    for n in 2..s {
        acc = acc + xi(n)? * (xi(k0 / n)? - xi(k0 / (n + 1))?);
    }
    let h = k0 / s;
    let tail = if h == s {
        half * xi(s)? * xi(s)?
    } else {
        xi(s)? * (xi(h)? - half * xi(s)?)
    };
    Ok(acc + tail)
}

/// `(Â_T)″` at `k` by central second differences of the deformed area sums:
/// the lower sum in `k̂`, the upper sum in its own deformed abscissa
/// `ŝ = ψ(α − k)`, with step `h` on the deformed line.
pub fn hat_at_fd_oracle<R: Real>(c: &PrimeCoding<R>, alpha: u64, k: &R, h: &R) -> Result<R> {
    let k0 = interval_index(alpha, k, Side::Right)?;
    let m = alpha - k0 - 1;
    let at = |i: u64| c.hat_natural(i as usize);
    let lower = |t: &R| hat_area_sum(c, k0, &c.psi_inv(t)?);
    let upper = |t: &R| Ok(-hat_area_sum(c, m, &c.psi_inv(t)?)?);
    let kh = c.psi(k)?;
    let sh = c.psi(&(R::from_i64(alpha as i64) - k.clone()))?;
    let d_lower = finite_difference_d2(lower, &kh, h, &at(k0)?, &at(k0 + 1)?)?;
    let d_upper = finite_difference_d2(upper, &sh, h, &at(m)?, &at(m + 1)?)?;
    Ok(d_lower + d_upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::areas::{area_formula, hat_at_second_derivative};
    use crate::points::EssentialPolynomial;
    use crate::scalar::{with_precision, HpFloat};
    use num_rational::BigRational;

    #[test]
    fn sieve_basics() {
        let t = PrimeTable::new(100);
        assert!(t.is_prime(2));
        assert!(!t.is_prime(9));
        assert!(!t.is_prime(1));
        assert_eq!(t.count(), 25);
        assert_eq!(
            (0..=100).filter(|&k| is_prime_trial(k)).count(),
            25
        );
        let big = PrimeTable::new(10_000);
        assert!((0..=10_000).all(|k| big.is_prime(k) == is_prime_trial(k)));
    }

    #[test]
    fn partitions() {
        let ks = |a| -> Vec<(u64, Window)> {
            goldbach_partitions_oracle(a)
                .unwrap()
                .into_iter()
                .map(|p| (p.k, p.window))
                .collect()
        };
        assert_eq!(ks(18), vec![(5, Window::Inside), (7, Window::Inside)]);
        assert_eq!(ks(16), vec![(3, Window::Outside), (5, Window::Inside)]);
        assert_eq!(ks(20), vec![(3, Window::Outside), (7, Window::Inside)]);
        assert!(goldbach_partitions_oracle(17).is_err());
    }

    #[test]
    fn finite_differences() {
        let f = |x: &f64| Ok(3.0 * x * x + 2.0 * x + 1.0);
        let d2 = finite_difference_d2(f, &1.0, &1e-3, &0.0, &2.0).unwrap();
        assert!((d2 - 6.0).abs() < 1e-5);
        let d1 = finite_difference_d1(f, &1.0, &1e-3, &0.0, &2.0).unwrap();
        assert!((d1 - 8.0).abs() < 1e-8);
        let lin = |x: &f64| Ok(5.0 * x - 2.0);
        assert!(finite_difference_d2(lin, &1.0, &1e-2, &0.0, &2.0).unwrap().abs() < 1e-9);
        assert!(finite_difference_d2(lin, &1.0, &0.5, &0.7, &2.0).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form_on_eighteen_and_a_half() {
        let k = 18.5;
        for r in enumerate_regions(18).unwrap().iter() {
            let (n, m) = (r.index.n, r.index.n_prime);
            let quad = area_quadrature_oracle(r.kind, n, m, k).unwrap();
            let closed = area_formula(r.kind, n, m, &k).area;
            assert!((quad - closed).abs() <= 1e-12, "{r:?}: {quad} vs {closed}");
        }
        let t2 = area_quadrature_oracle(RegionType::T2, 2, 9, 18.5).unwrap();
        assert!((t2 - 0.006_881_022_480_117_19).abs() < 1e-14);
        assert!(area_quadrature_oracle(RegionType::T2, 3, 6, 18.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn t3_area_is_linear() {
        let a = |k| area_quadrature_oracle(RegionType::T3, 2, 8, k).unwrap();
        let (a1, a2, a3) = (a(18.25), a(18.5), a(18.75));
        assert!((a1 - 2.0 * a2 + a3).abs() < 1e-12);
    }

    #[test]
    fn strip_equals_sum_of_hat_areas() {
        let c = PrimeCoding::<f64>::default_strict(60);
        for (k0, frac) in [(18u64, 0.5), (37, 0.3), (50, 0.9)] {
            let k = k0 as f64 + frac;
            let sum = hat_area_sum(&c, k0, &k).unwrap() - hat_area_sum(&c, k0, &(k0 as f64)).unwrap();
            let strip = deformed_strip_oracle(&c, k0 as f64, k).unwrap();
            assert!((sum - strip).abs() <= 1e-9 * strip.abs(), "{k0}: {sum} vs {strip}");
        }
    }

    #[test]
    fn polynomial_paths_agree() {
        let c = PrimeCoding::<BigRational>::default_strict(200);
        for k0 in 4..=400 {
            let p = EssentialPolynomial::lower(k0).unwrap().eval(&c).unwrap();
            assert_eq!(p, region_sum_oracle(&c, k0).unwrap());
            assert_eq!(p, lower_closed_form(&c, k0).unwrap());
        }
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        with_precision(128, || {
            let c = PrimeCoding::<BigRational>::default_strict(40)
                .convert::<HpFloat>()
                .unwrap();
            let alpha = 36;
            for k in ["4.3", "9.5", "12.71", "16.2"] {
                let k = HpFloat::parse(k).unwrap();
                let h = HpFloat::parse("1e-4").unwrap();
                let fd = hat_at_fd_oracle(&c, alpha, &k, &h).unwrap();
                let formula = hat_at_second_derivative(&c, alpha, &k, Side::Right).unwrap();
                assert!(fd.rel_diff(&formula) < 1e-7, "k = {k}: {fd} vs {formula}");
            }
        });
    }
}
